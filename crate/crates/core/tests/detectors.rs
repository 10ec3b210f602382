//! The Bellman-Ford detectors against exhaustive enumeration of short
//! closed walks through the source.

use proptest::prelude::*;
use qca_core::graph::WeightedDeBruijnGraph;
use qca_core::{Rational, StateId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// True iff some closed walk through the source with at most `max_len`
/// edges has squared weight ≠ 1.
fn unbalanced_q_cycle_exists(g: &WeightedDeBruijnGraph, max_len: usize) -> bool {
    fn go(g: &WeightedDeBruijnGraph, v: usize, acc: &Rational, left: usize) -> bool {
        if v == g.source() && !acc.is_one() {
            return true;
        }
        left > 0
            && g.out_edges(v)
                .iter()
                .any(|e| go(g, e.to, &(acc * &e.sq_weight), left - 1))
    }
    g.out_edges(g.source())
        .iter()
        .any(|e| go(g, e.to, &e.sq_weight, max_len - 1))
}

/// Squared weights `h(from)/h(to)` (every cycle balanced), with `flips`
/// labels then overwritten by random weights.
fn random_graph(seed: u64, states: usize, r: usize, flips: usize) -> WeightedDeBruijnGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1)];
    let pick = |rng: &mut ChaCha8Rng| {
        let (n, d) = pool[rng.random_range(0..pool.len())];
        Rational::new(n, d).unwrap()
    };
    let vertices = states.pow(r as u32 - 1);
    let q_vertex = 0;
    let h: Vec<Rational> = (0..vertices)
        .map(|v| {
            if v == q_vertex {
                Rational::one()
            } else {
                pick(&mut rng)
            }
        })
        .collect();
    let labels = states.pow(r as u32);
    let mut weights: Vec<Rational> = (0..labels)
        .map(|l| &h[l / states] / &h[l % vertices])
        .collect();
    for _ in 0..flips {
        let l = rng.random_range(1..labels);
        weights[l] = pick(&mut rng);
    }
    WeightedDeBruijnGraph::from_weights(states, r, StateId(0), weights).unwrap()
}

fn check(g: &WeightedDeBruijnGraph) -> Result<(), TestCaseError> {
    let small = qca_core::graph::detect_small_cycle(g);
    let large = qca_core::graph::detect_large_cycle(g);
    let bound = 2 * g.num_vertices() + 2 * (g.r() - 1);
    prop_assert_eq!(
        small.is_some() || large.is_some(),
        unbalanced_q_cycle_exists(g, bound)
    );
    for w in [small, large].into_iter().flatten() {
        // the labels must chain from the source back to it
        let k = g.num_states();
        let vertices = g.num_vertices();
        let mut v = g.source();
        let mut product = Rational::one();
        for label in &w.labels {
            let l = label.iter().fold(0, |acc, s| acc * k + s.0);
            prop_assert_eq!(l / k, v);
            product = &product * &g.edge(l).sq_weight;
            v = l % vertices;
        }
        prop_assert_eq!(v, g.source());
        prop_assert_eq!(&product, &w.sq_product);
        prop_assert!(!product.is_one());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn binary_alphabet_r3(seed in any::<u64>(), flips in 0usize..3) {
        check(&random_graph(seed, 2, 3, flips))?;
    }

    #[test]
    fn ternary_alphabet_r2(seed in any::<u64>(), flips in 0usize..3) {
        check(&random_graph(seed, 3, 2, flips))?;
    }

    #[test]
    fn binary_alphabet_r2(seed in any::<u64>(), flips in 0usize..2) {
        check(&random_graph(seed, 2, 2, flips))?;
    }
}

#[test]
fn balanced_graphs_never_fire() {
    for seed in 0..50 {
        let g = random_graph(seed, 2, 3, 0);
        assert!(qca_core::graph::detect_small_cycle(&g).is_none());
        assert!(qca_core::graph::detect_large_cycle(&g).is_none());
    }
}
