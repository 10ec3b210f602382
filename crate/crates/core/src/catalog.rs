//! Small named automata used in tests, benches and documentation.
//!
//! Two-state automata use `q` (quiescent, id 0) and `p` (id 1). A trivial
//! automaton must fix its quiescent state, so rules that move `q` (swaps,
//! rotations) are placed on `{q, p}` inside the three-state alphabet
//! `z, q, p` with `z` quiescent.

use crate::automaton::{Alphabet, LocalSuperposition, Lqca, Neighborhood, StateId};
use crate::num::ExactComplex;

const Q: StateId = StateId(0);
const P: StateId = StateId(1);

fn qp() -> Alphabet {
    Alphabet::new(["q", "p"], "q").expect("valid alphabet")
}

fn zqp() -> Alphabet {
    Alphabet::new(["z", "q", "p"], "z").expect("valid alphabet")
}

fn c(n: i64, d: i64) -> ExactComplex {
    ExactComplex::ratio(n, d)
}

fn sup(dim: usize, pairs: &[(StateId, ExactComplex)]) -> LocalSuperposition {
    LocalSuperposition::from_pairs(dim, pairs.iter().cloned())
}

fn build(
    alphabet: Alphabet,
    offsets: Vec<i64>,
    rule: impl FnMut(&[StateId]) -> LocalSuperposition,
) -> Lqca {
    Lqca::from_fn(
        alphabet,
        Neighborhood::new(offsets).expect("valid neighborhood"),
        rule,
    )
    .expect("valid automaton")
}

fn b_family(qp_rule: ExactComplex, pq_rule: ExactComplex) -> Lqca {
    build(qp(), vec![0, 1], move |w| match (w[0], w[1]) {
        (Q, Q) => sup(2, &[(Q, c(1, 1))]),
        (Q, P) => sup(2, &[(Q, qp_rule.clone())]),
        (P, Q) => sup(2, &[(P, pq_rule.clone())]),
        _ => sup(2, &[(P, c(1, 1))]),
    })
}

/// `δ(q,q)=|q⟩, δ(q,p)=½|q⟩, δ(p,q)=2|p⟩, δ(p,p)=|p⟩`: identity evolution
/// despite two non-unit local norms.
pub fn automaton_b() -> Lqca {
    b_family(c(1, 2), c(2, 1))
}

/// B with `δ(p,q) = |p⟩`; the column of `p@0` has squared norm 1/4.
pub fn automaton_b_prime() -> Lqca {
    b_family(c(1, 2), c(1, 1))
}

/// B with `δ(q,p) = |q⟩`; the column of `p@0` has squared norm 4.
pub fn automaton_b_double_prime() -> Lqca {
    b_family(c(1, 1), c(2, 1))
}

/// `δ(x,y) = f(x)` with `f(q)=|q⟩`, `f(p)=⅗|q⟩+⅘|p⟩`: unit norms, but the
/// columns of the empty configuration and `p@0` overlap by 3/5.
pub fn f_automaton() -> Lqca {
    build(qp(), vec![0, 1], |w| match w[0] {
        Q => sup(2, &[(Q, c(1, 1))]),
        _ => sup(2, &[(Q, c(3, 5)), (P, c(4, 5))]),
    })
}

/// `δ(x,y) = |y⟩`: the left shift.
pub fn shift_left() -> Lqca {
    build(qp(), vec![0, 1], |w| LocalSuperposition::basis(2, w[1]))
}

/// Left shift over `z, q, p` composed with the swap of `q` and `p`.
pub fn permuted_shift3() -> Lqca {
    build(zqp(), vec![0, 1], |w| {
        let y = match w[1].0 {
            1 => StateId(2),
            2 => StateId(1),
            s => StateId(s),
        };
        LocalSuperposition::basis(3, y)
    })
}

/// `N = (0)`, `δ(x) = |x⟩`.
pub fn trivial_identity() -> Lqca {
    build(qp(), vec![0], |w| LocalSuperposition::basis(2, w[0]))
}

/// `N = (0)`, `δ(p) = 2|p⟩`.
pub fn trivial_double() -> Lqca {
    build(qp(), vec![0], |w| match w[0] {
        Q => sup(2, &[(Q, c(1, 1))]),
        _ => sup(2, &[(P, c(2, 1))]),
    })
}

/// `N = (0)`, `δ(p) = ⅗|q⟩ + ⅘|p⟩`.
pub fn trivial_f() -> Lqca {
    build(qp(), vec![0], |w| match w[0] {
        Q => sup(2, &[(Q, c(1, 1))]),
        _ => sup(2, &[(Q, c(3, 5)), (P, c(4, 5))]),
    })
}

/// `N = (0)` over `z, q, p`: `δ(q)=|p⟩, δ(p)=|q⟩`.
pub fn trivial_swap3() -> Lqca {
    build(zqp(), vec![0], |w| match w[0].0 {
        1 => LocalSuperposition::basis(3, StateId(2)),
        2 => LocalSuperposition::basis(3, StateId(1)),
        _ => LocalSuperposition::basis(3, StateId(0)),
    })
}

/// `N = (0)` over `z, q, p`: `δ(q)=⅗|q⟩−⅘|p⟩`, `δ(p)=⅘|q⟩+⅗|p⟩`.
pub fn trivial_rotation3() -> Lqca {
    let (zq, qq, pp) = (StateId(0), StateId(1), StateId(2));
    build(zqp(), vec![0], move |w| match w[0].0 {
        1 => sup(3, &[(qq, c(3, 5)), (pp, c(-4, 5))]),
        2 => sup(3, &[(qq, c(4, 5)), (pp, c(3, 5))]),
        _ => sup(3, &[(zq, c(1, 1))]),
    })
}

/// `N = (0, 2)`, `δ(x,y) = |y⟩`: shift by two cells; not simple.
pub fn sparse_neighborhood_example() -> Lqca {
    build(qp(), vec![0, 2], |w| LocalSuperposition::basis(2, w[1]))
}
