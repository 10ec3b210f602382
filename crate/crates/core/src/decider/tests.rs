use super::*;
use crate::automaton::Alphabet;
use crate::catalog;
use crate::config::Interval;
use crate::oracle::{step, OracleConfig, WindowSuperposition};

const Q: StateId = StateId(0);
const P: StateId = StateId(1);

fn p_at(i: i64) -> Configuration {
    Configuration::from_cells(Q, [(i, P)])
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn b_is_well_formed() {
    let b = catalog::automaton_b();
    assert_eq!(check_unit_norms(&b).unwrap(), None);
    assert_eq!(check_orthogonality(&b).unwrap(), None);
    let v = decide(&b).unwrap();
    assert!(v.well_formed);
    assert_eq!(v.norm_status(), CheckStatus::Pass);
    assert_eq!(v.orthogonality_status(), CheckStatus::Pass);
}

#[test]
fn b_prime_norm_witness() {
    let f = check_unit_norms(&catalog::automaton_b_prime())
        .unwrap()
        .unwrap();
    assert_eq!(f.config, p_at(0));
    assert_eq!(f.sq_norm, r(1, 4));
    let v = decide(&catalog::automaton_b_prime()).unwrap();
    assert!(!v.well_formed);
    assert_eq!(v.orthogonality_status(), CheckStatus::Skipped);
}

#[test]
fn b_double_prime_large_cycle() {
    let f = check_unit_norms(&catalog::automaton_b_double_prime())
        .unwrap()
        .unwrap();
    assert_eq!(f.config, p_at(0));
    assert_eq!(f.sq_norm, r(4, 1));
}

#[test]
fn f_automaton_orthogonality_witness() {
    let f = catalog::f_automaton();
    assert_eq!(check_unit_norms(&f).unwrap(), None);
    let o = check_orthogonality(&f).unwrap().unwrap();
    assert_eq!(o.first, Configuration::empty(Q));
    assert_eq!(o.second, p_at(0));
    assert_eq!(o.inner_product, ExactComplex::ratio(3, 5));
    assert!(!decide(&f).unwrap().well_formed);
}

#[test]
fn permutations_are_orthogonal() {
    for a in [catalog::shift_left(), catalog::permuted_shift3()] {
        assert_eq!(check_orthogonality(&a).unwrap(), None);
        assert!(decide(&a).unwrap().well_formed);
    }
}

#[test]
fn full_report_runs_both_checks() {
    let opts = DecideOptions {
        full_report: true,
        ..Default::default()
    };
    let v = decide_with(&catalog::automaton_b_prime(), &opts).unwrap();
    assert!(v.orthogonality_checked);
    assert!(v.norm_failure.is_some());
}

#[test]
fn unit_norm_rules_pass_norm_check() {
    for a in [catalog::f_automaton(), catalog::shift_left()] {
        assert!(a.table().iter().all(|u| u.squared_norm().is_one()));
        assert_eq!(check_unit_norms(&a).unwrap(), None);
    }
}

#[test]
fn trivial_examples() {
    assert!(
        check_trivial(&catalog::trivial_identity())
            .unwrap()
            .well_formed
    );

    let v = check_trivial(&catalog::trivial_double()).unwrap();
    let n = v.norm_failure.unwrap();
    assert_eq!((n.config, n.sq_norm), (p_at(0), r(4, 1)));

    let v = check_trivial(&catalog::trivial_f()).unwrap();
    let o = v.orthogonality_failure.unwrap();
    assert_eq!(o.first, Configuration::empty(Q));
    assert_eq!(o.second, p_at(0));
    assert_eq!(o.inner_product, ExactComplex::ratio(3, 5));

    assert!(matches!(
        check_trivial(&catalog::automaton_b()),
        Err(CoreError::Contract(_))
    ));
}

#[test]
fn cycle_to_config_examples() {
    let w = |labels: &[[usize; 2]]| CycleWitness {
        labels: labels
            .iter()
            .map(|l| l.iter().map(|&s| StateId(s)).collect())
            .collect(),
        sq_product: Rational::one(),
        quiescent: Q,
    };
    assert_eq!(cycle_to_config(&w(&[[0, 1], [1, 0]])), p_at(0));
    assert_eq!(
        cycle_to_config(&w(&[[0, 0], [0, 0], [0, 0]])),
        Configuration::empty(Q)
    );
    assert_eq!(
        cycle_to_config(&w(&[[0, 1], [1, 1], [1, 0]])),
        Configuration::from_cells(Q, [(0, P), (1, P)])
    );
}

#[test]
fn trivial_inverse_examples() {
    let id = catalog::trivial_identity();
    assert_eq!(trivial_inverse(&id).unwrap().table(), id.table());

    let swap = catalog::trivial_swap3();
    assert_eq!(trivial_inverse(&swap).unwrap().table(), swap.table());

    let rot = catalog::trivial_rotation3();
    let inv = trivial_inverse(&rot).unwrap();
    let (zq, qq, pp) = (StateId(0), StateId(1), StateId(2));
    let z = |n, d| ExactComplex::ratio(n, d);
    assert_eq!(
        inv.rule(&[qq]).amps(),
        &[ExactComplex::zero(), z(3, 5), z(4, 5)]
    );
    assert_eq!(
        inv.rule(&[pp]).amps(),
        &[ExactComplex::zero(), z(-4, 5), z(3, 5)]
    );
    assert!(inv.rule(&[zq]).is_basis(zq));

    assert!(matches!(
        trivial_inverse(&catalog::trivial_double()),
        Err(CoreError::Contract(_))
    ));
    assert!(matches!(
        trivial_inverse(&catalog::automaton_b()),
        Err(CoreError::Contract(_))
    ));
}

#[test]
fn trivial_inverse_undoes_one_step() {
    let rot = catalog::trivial_rotation3();
    let inv = trivial_inverse(&rot).unwrap();
    let cfg = OracleConfig::default();
    let (zq, pp) = (StateId(0), StateId(2));
    let c = Configuration::from_cells(zq, [(0, pp), (1, pp)]);
    let s = WindowSuperposition::basis(Interval::new(-1, 1), c).unwrap();
    let back = step(&inv, &step(&rot, &s, &cfg).unwrap(), &cfg).unwrap();
    assert_eq!(back.amps(), s.amps());
}

#[test]
fn rotation_on_two_states_violates_quiescent_rule() {
    let ab = Alphabet::new(["q", "p"], "q").unwrap();
    let res = Lqca::from_fn(ab, Neighborhood::new(vec![0]).unwrap(), |w| match w[0].0 {
        0 => LocalSuperposition::from_pairs(
            2,
            [
                (Q, ExactComplex::ratio(3, 5)),
                (P, ExactComplex::ratio(-4, 5)),
            ],
        ),
        _ => LocalSuperposition::from_pairs(
            2,
            [
                (Q, ExactComplex::ratio(4, 5)),
                (P, ExactComplex::ratio(3, 5)),
            ],
        ),
    });
    assert!(matches!(res, Err(CoreError::QuiescentRule { .. })));
}

#[test]
fn non_simple_input_is_simplified() {
    let a = catalog::sparse_neighborhood_example();
    let v = decide(&a).unwrap();
    assert!(v.well_formed);
    let rep = v.simplification.unwrap();
    assert_eq!(rep.expansion_factor, r(4, 3));
}

#[test]
fn batch_keeps_order() {
    let automata = vec![
        catalog::automaton_b(),
        catalog::automaton_b_prime(),
        catalog::f_automaton(),
    ];
    let got: Vec<bool> = decide_batch(&automata, &DecideOptions::default())
        .into_iter()
        .map(|v| v.unwrap().well_formed)
        .collect();
    assert_eq!(got, vec![true, false, false]);
}
