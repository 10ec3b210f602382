//! Random automata over small exact amplitude pools.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::automaton::{Alphabet, LocalSuperposition, Lqca, Neighborhood, StateId};
use crate::num::{ExactComplex, Rational};
use crate::plqca::{FactorAlphabets, Plqca, QMatrix};

/// `{0, ±1, ±1/2, ±2, 3/5, 4/5}`.
pub fn amplitude_pool() -> Vec<ExactComplex> {
    [
        (0, 1),
        (1, 1),
        (-1, 1),
        (1, 2),
        (-1, 2),
        (2, 1),
        (-2, 1),
        (3, 5),
        (4, 5),
    ]
    .iter()
    .map(|&(n, d)| ExactComplex::ratio(n, d))
    .collect()
}

/// States `q, p, s2, s3, …` with `q` quiescent.
pub fn standard_alphabet(states: usize) -> Alphabet {
    let names: Vec<String> = (0..states)
        .map(|i| match i {
            0 => "q".into(),
            1 => "p".into(),
            i => format!("s{i}"),
        })
        .collect();
    Alphabet::with_quiescent_index(names, StateId(0)).expect("generated names are valid")
}

fn random_rule<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    pool: &[ExactComplex],
) -> LocalSuperposition {
    loop {
        let rule = LocalSuperposition::new(
            (0..k)
                .map(|_| pool.choose(rng).expect("pool").clone())
                .collect(),
        );
        if !rule.squared_norm().is_zero() {
            return rule;
        }
    }
}

/// Every non-quiescent rule drawn entrywise from `pool`, resampled until its
/// norm is positive.
pub fn random_pool_lqca<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    nb: &Neighborhood,
    pool: &[ExactComplex],
) -> Lqca {
    let k = alphabet.len();
    let q = alphabet.quiescent();
    Lqca::from_fn(alphabet.clone(), nb.clone(), |w| {
        if w.iter().all(|&s| s == q) {
            LocalSuperposition::basis(k, q)
        } else {
            random_rule(rng, k, pool)
        }
    })
    .expect("generated automaton is valid")
}

/// A well-formed automaton that relabels and shifts cells:
/// `δ(w) = g(w_first)/g(w_last) · |π(w_j)⟩` with `π` a permutation fixing `q`
/// and `g(q) = 1`. The gauge factors telescope along any configuration.
pub fn random_gauge_lqca<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    nb: &Neighborhood,
) -> Lqca {
    let k = alphabet.len();
    let q = alphabet.quiescent();
    let gauges = [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)];
    let g: Vec<Rational> = (0..k)
        .map(|s| {
            if s == q.0 {
                Rational::one()
            } else {
                let &(n, d) = gauges.choose(rng).expect("gauges");
                Rational::new(n, d).expect("nonzero denominator")
            }
        })
        .collect();
    let movable: Vec<usize> = (0..k).filter(|&s| s != q.0).collect();
    let mut image = movable.clone();
    image.shuffle(rng);
    let mut pi: Vec<usize> = (0..k).collect();
    for (&from, &to) in movable.iter().zip(&image) {
        pi[from] = to;
    }
    let read = rng.random_range(0..nb.size());
    Lqca::from_fn(alphabet.clone(), nb.clone(), |w| {
        let weight = &g[w[0].0] / &g[w[w.len() - 1].0];
        LocalSuperposition::basis(k, StateId(pi[w[read].0])).scale(&weight)
    })
    .expect("generated automaton is valid")
}

/// Replaces one non-quiescent rule of `a` with a random pool rule.
pub fn perturb_rule<R: Rng + ?Sized>(rng: &mut R, a: &Lqca, pool: &[ExactComplex]) -> Lqca {
    let qi = a.quiescent_word_index();
    let mut idx = rng.random_range(0..a.table().len() - 1);
    if idx >= qi {
        idx += 1;
    }
    let mut table = a.table().to_vec();
    table[idx] = random_rule(rng, a.num_states(), pool);
    a.with_table(table).expect("perturbed automaton is valid")
}

/// Mixture used by the equivalence sweeps: gauge templates (well-formed),
/// perturbed templates and fully random pool automata.
pub fn random_sweep_lqca<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    nb: &Neighborhood,
) -> Lqca {
    let pool = amplitude_pool();
    match rng.random_range(0..10) {
        0..=3 => random_gauge_lqca(rng, alphabet, nb),
        4..=5 => {
            let base = random_gauge_lqca(rng, alphabet, nb);
            perturb_rule(rng, &base, &pool)
        }
        _ => random_pool_lqca(rng, alphabet, nb, &pool),
    }
}

const TRIPLES: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];

/// A rational unitary fixing basis state 0: Pythagorean Givens rotations on
/// the other coordinates followed by a permutation with phases in `{±1, ±i}`.
pub fn random_unitary_q<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> QMatrix {
    let mut m = QMatrix::identity(dim);
    if dim >= 3 {
        for _ in 0..rng.random_range(1..=3) {
            let i = rng.random_range(1..dim);
            let mut j = rng.random_range(1..dim - 1);
            if j >= i {
                j += 1;
            }
            let &(a, b, c) = TRIPLES.choose(rng).expect("triples");
            let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
            let s = if rng.random_bool(0.5) { 1 } else { -1 };
            let mut g = QMatrix::identity(dim);
            g.set(i, i, ExactComplex::ratio(a, c));
            g.set(j, i, ExactComplex::ratio(s * b, c));
            g.set(i, j, ExactComplex::ratio(-s * b, c));
            g.set(j, j, ExactComplex::ratio(a, c));
            m = g.mul(&m);
        }
    }
    let mut perm: Vec<usize> = (1..dim).collect();
    perm.shuffle(rng);
    let phases = [
        ExactComplex::one(),
        ExactComplex::from(-1),
        ExactComplex::i(),
        -ExactComplex::i(),
    ];
    let mut p = QMatrix::zero(dim);
    p.set(0, 0, ExactComplex::one());
    for (x, &y) in (1..dim).zip(&perm) {
        p.set(y, x, phases.choose(rng).expect("phases").clone());
    }
    p.mul(&m)
}

/// Adds 1/10 to one entry of a non-quiescent column, retrying until the
/// result is no longer unitary.
pub fn perturb_q<R: Rng + ?Sized>(rng: &mut R, q: &QMatrix) -> QMatrix {
    assert!(q.dim() >= 2, "no non-quiescent column to perturb");
    loop {
        let mut m = q.clone();
        let x = rng.random_range(1..q.dim());
        let y = rng.random_range(0..q.dim());
        m.set(y, x, q.get(y, x) + &ExactComplex::ratio(1, 10));
        if !crate::plqca::is_unitary(&m) {
            return m;
        }
    }
}

/// Factor alphabets of sizes 2 or 3, `r ∈ {1, 2}`, neighborhood `0..r`.
pub fn random_plqca_shape<R: Rng + ?Sized>(rng: &mut R) -> (FactorAlphabets, Neighborhood) {
    let r = rng.random_range(1..=2);
    let factors: Vec<Vec<String>> = (0..r)
        .map(|_| {
            let size = if r == 1 { 3 } else { rng.random_range(2..=3) };
            ["a", "b", "c"][..size]
                .iter()
                .map(|s| s.to_string())
                .collect()
        })
        .collect();
    let nb = Neighborhood::interval(0, r as i64 - 1).expect("interval");
    (FactorAlphabets::new(factors).expect("valid factors"), nb)
}

pub fn random_unitary_plqca<R: Rng + ?Sized>(rng: &mut R) -> Plqca {
    let (factors, nb) = random_plqca_shape(rng);
    let q = random_unitary_q(rng, factors.size());
    Plqca::new(factors, nb, q).expect("unitary Q fixes the quiescent state")
}

/// A unitary instance with one entry perturbed; `Q` is re-drawn if the
/// perturbation would hit the quiescent column or empty a column.
pub fn random_perturbed_plqca<R: Rng + ?Sized>(rng: &mut R) -> Plqca {
    loop {
        let base = random_unitary_plqca(rng);
        let q = perturb_q(rng, base.qmatrix());
        if let Ok(p) = Plqca::new(base.factors().clone(), base.neighborhood().clone(), q) {
            return p;
        }
    }
}
