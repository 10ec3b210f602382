//! Weighted de Bruijn graph and the multiplicative Bellman-Ford detectors.
//!
//! Vertices are the words of `Σ^(r-1)`, encoded base-`|Σ|`. The edge leaving
//! vertex `u` by appending letter `y` carries label `u·|Σ| + y` (the word of
//! `Σ^r`) and ends at `label mod |Σ|^(r-1)`. Edges are stored in label order,
//! so `edges[label]` is the edge with that label.

use std::cmp::Ordering;

use crate::automaton::{decode_word, Lqca, StateId};
use crate::error::{CoreError, Result};
use crate::num::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
    /// `‖δ(label)‖²`, always positive.
    pub sq_weight: Rational,
}

#[derive(Clone, Debug)]
pub struct WeightedDeBruijnGraph {
    states: usize,
    r: usize,
    quiescent: StateId,
    vertex_count: usize,
    source: usize,
    edges: Vec<DbEdge>,
}

/// A closed walk through the source whose squared weight is not 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// Edge labels in walk order; each is a word of `Σ^r`.
    pub labels: Vec<Vec<StateId>>,
    /// Product of the squared edge weights along the walk.
    pub sq_product: Rational,
    pub quiescent: StateId,
}

impl WeightedDeBruijnGraph {
    /// Graph over `states` letters with words of length `r`, one squared
    /// weight per label. Weights must be positive.
    pub fn from_weights(
        states: usize,
        r: usize,
        quiescent: StateId,
        sq_weights: Vec<Rational>,
    ) -> Result<Self> {
        if r == 0 || states == 0 || quiescent.0 >= states {
            return Err(CoreError::Contract(
                "graph needs r ≥ 1 and a valid quiescent state".into(),
            ));
        }
        let label_count = states.pow(r as u32);
        if sq_weights.len() != label_count {
            return Err(CoreError::TableSize {
                expected: label_count,
                found: sq_weights.len(),
            });
        }
        if let Some(idx) = sq_weights.iter().position(|w| !w.is_positive()) {
            return Err(CoreError::Contract(format!(
                "edge {idx} has non-positive weight"
            )));
        }
        let vertex_count = states.pow(r as u32 - 1);
        let source = (0..r - 1).fold(0, |acc, _| acc * states + quiescent.0);
        let edges = sq_weights
            .into_iter()
            .enumerate()
            .map(|(label, sq_weight)| DbEdge {
                from: label / states,
                to: label % vertex_count,
                label,
                sq_weight,
            })
            .collect();
        Ok(WeightedDeBruijnGraph {
            states,
            r,
            quiescent,
            vertex_count,
            source,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_count
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn quiescent(&self) -> StateId {
        self.quiescent
    }

    /// `q^(r-1)`.
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn edges(&self) -> &[DbEdge] {
        &self.edges
    }

    pub fn edge(&self, label: usize) -> &DbEdge {
        &self.edges[label]
    }

    pub fn out_edges(&self, v: usize) -> &[DbEdge] {
        &self.edges[v * self.states..(v + 1) * self.states]
    }

    pub fn vertex_word(&self, v: usize) -> Vec<StateId> {
        decode_word(v, self.states, self.r - 1)
    }

    pub fn label_word(&self, label: usize) -> Vec<StateId> {
        decode_word(label, self.states, self.r)
    }

    /// Label of the edge leaving `v` that appends `letter`.
    pub fn append(&self, v: usize, letter: StateId) -> usize {
        v * self.states + letter.0
    }

    /// Labels of the walk `source → v` appending the letters of `v`.
    fn path_from_source(&self, v: usize) -> Vec<usize> {
        let mut cur = self.source;
        let mut labels = Vec::with_capacity(self.r - 1);
        for letter in self.vertex_word(v) {
            let l = self.append(cur, letter);
            labels.push(l);
            cur = self.edges[l].to;
        }
        debug_assert_eq!(cur, v);
        labels
    }

    /// Labels of the walk `v → source` appending `r-1` quiescent letters.
    fn path_to_source(&self, v: usize) -> Vec<usize> {
        let mut cur = v;
        let mut labels = Vec::with_capacity(self.r - 1);
        for _ in 0..self.r - 1 {
            let l = self.append(cur, self.quiescent);
            labels.push(l);
            cur = self.edges[l].to;
        }
        debug_assert_eq!(cur, self.source);
        labels
    }

    fn product(&self, labels: &[usize]) -> Rational {
        labels.iter().map(|&l| &self.edges[l].sq_weight).product()
    }

    fn witness(&self, labels: Vec<usize>, sq_product: Rational) -> CycleWitness {
        CycleWitness {
            labels: labels.into_iter().map(|l| self.label_word(l)).collect(),
            sq_product,
            quiescent: self.quiescent,
        }
    }
}

/// `G_A` for a simple automaton.
pub fn build_debruijn(a: &Lqca) -> Result<WeightedDeBruijnGraph> {
    if !a.is_simple() {
        return Err(CoreError::Contract(
            "de Bruijn graph needs a simple automaton; simplify first".into(),
        ));
    }
    let weights = a.table().iter().map(|rule| rule.squared_norm()).collect();
    WeightedDeBruijnGraph::from_weights(a.num_states(), a.r(), a.quiescent(), weights)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Extremum {
    /// Path products shrink; finds cycles with product < 1.
    Min,
    /// Path products grow; finds cycles with product > 1.
    Max,
}

impl Extremum {
    fn improves(self, candidate: &Rational, current: &Option<Rational>) -> bool {
        match current {
            None => true,
            Some(cur) => {
                let ord = candidate.cmp(cur);
                match self {
                    Extremum::Min => ord == Ordering::Less,
                    Extremum::Max => ord == Ordering::Greater,
                }
            }
        }
    }
}

/// Bellman-Ford in the multiplicative domain. `None` estimates stand for
/// `+∞` (min) or `0` (max); both mean "unreached". Returns the labels of a
/// cycle whose product lies strictly on the searched side of 1.
fn bellman_ford_cycle(g: &WeightedDeBruijnGraph, mode: Extremum) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let mut est: Vec<Option<Rational>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    est[g.source] = Some(Rational::one());

    // passes 0..n-1 relax; pass n-1 only looks for a further improvement
    for pass in 0..n {
        let mut changed = false;
        for e in &g.edges {
            let Some(du) = &est[e.from] else { continue };
            let candidate = du * &e.sq_weight;
            if mode.improves(&candidate, &est[e.to]) {
                pred[e.to] = Some(e.label);
                if pass == n - 1 {
                    return Some(extract_cycle(g, &pred, e.to));
                }
                est[e.to] = Some(candidate);
                changed = true;
            }
        }
        if !changed {
            return None;
        }
    }
    None
}

/// Walks predecessor pointers `n` times to land on the cycle, then traces it.
fn extract_cycle(g: &WeightedDeBruijnGraph, pred: &[Option<usize>], start: usize) -> Vec<usize> {
    let mut v = start;
    for _ in 0..g.num_vertices() {
        v = g.edges[pred[v].expect("relaxed vertex has a predecessor")].from;
    }
    let anchor = v;
    let mut cycle = Vec::new();
    loop {
        let l = pred[v].expect("cycle vertex has a predecessor");
        cycle.push(l);
        v = g.edges[l].from;
        if v == anchor {
            break;
        }
    }
    cycle.reverse();
    cycle
}

/// Turns a cycle with product `ρ ≠ 1` into a q-cycle `pre · loopᵏ · post`
/// with `k ∈ {1, 2}` chosen so the total product is not 1.
fn q_cycle_through(g: &WeightedDeBruijnGraph, mut cycle: Vec<usize>) -> CycleWitness {
    // a cycle through the source is already a q-cycle once rotated to start there
    if let Some(at) = cycle.iter().position(|&l| g.edges[l].from == g.source) {
        cycle.rotate_left(at);
        let product = g.product(&cycle);
        return g.witness(cycle, product);
    }
    let anchor = g.edges[cycle[0]].from;
    let pre = g.path_from_source(anchor);
    let post = g.path_to_source(anchor);
    for k in 1..=2 {
        let mut labels = pre.clone();
        for _ in 0..k {
            labels.extend_from_slice(&cycle);
        }
        labels.extend_from_slice(&post);
        let product = g.product(&labels);
        if !product.is_one() {
            return g.witness(labels, product);
        }
    }
    unreachable!("P·ρ = 1 and P·ρ² = 1 force ρ = 1")
}

fn detect(g: &WeightedDeBruijnGraph, mode: Extremum) -> Option<CycleWitness> {
    let cycle = bellman_ford_cycle(g, mode)?;
    let rho = g.product(&cycle);
    debug_assert!(match mode {
        Extremum::Min => rho < Rational::one(),
        Extremum::Max => rho > Rational::one(),
    });
    Some(q_cycle_through(g, cycle))
}

/// Finds a q-cycle of squared weight ≠ 1 if some cycle has product < 1.
pub fn detect_small_cycle(g: &WeightedDeBruijnGraph) -> Option<CycleWitness> {
    detect(g, Extremum::Min)
}

/// Finds a q-cycle of squared weight ≠ 1 if some cycle has product > 1.
pub fn detect_large_cycle(g: &WeightedDeBruijnGraph) -> Option<CycleWitness> {
    detect(g, Extremum::Max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const Q: StateId = StateId(0);
    const P: StateId = StateId(1);

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn automaton_b_weights() {
        let g = build_debruijn(&catalog::automaton_b()).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 4);
        let weights: Vec<_> = g.edges().iter().map(|e| e.sq_weight.clone()).collect();
        assert_eq!(weights, vec![r(1, 1), r(1, 4), r(4, 1), r(1, 1)]);
        // qp goes from q to p
        assert_eq!((g.edge(1).from, g.edge(1).to), (0, 1));
        assert_eq!(g.label_word(2), vec![P, Q]);
    }

    #[test]
    fn trivial_automaton_graph_has_one_vertex() {
        let g = build_debruijn(&catalog::trivial_identity()).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 2);
        assert!(g.edges().iter().all(|e| e.from == 0 && e.to == 0));
    }

    #[test]
    fn non_simple_is_rejected() {
        let a = catalog::sparse_neighborhood_example();
        assert!(matches!(build_debruijn(&a), Err(CoreError::Contract(_))));
    }

    #[test]
    fn edge_count_is_states_to_r() {
        for (k, rr) in [(2, 1), (2, 3), (3, 2), (4, 2)] {
            let g = WeightedDeBruijnGraph::from_weights(
                k,
                rr,
                Q,
                vec![Rational::one(); k.pow(rr as u32)],
            )
            .unwrap();
            assert_eq!(g.num_edges(), k.pow(rr as u32));
            for v in 0..g.num_vertices() {
                assert_eq!(g.out_edges(v).len(), k);
                assert_eq!(g.edges().iter().filter(|e| e.to == v).count(), k);
            }
        }
    }

    #[test]
    fn b_has_no_unbalanced_cycle() {
        let g = build_debruijn(&catalog::automaton_b()).unwrap();
        assert_eq!(detect_small_cycle(&g), None);
        assert_eq!(detect_large_cycle(&g), None);
    }

    #[test]
    fn b_prime_small_cycle() {
        let g = build_debruijn(&catalog::automaton_b_prime()).unwrap();
        let w = detect_small_cycle(&g).unwrap();
        assert_eq!(w.labels, vec![vec![Q, P], vec![P, Q]]);
        assert_eq!(w.sq_product, r(1, 4));
    }

    #[test]
    fn b_double_prime_large_cycle() {
        let g = build_debruijn(&catalog::automaton_b_double_prime()).unwrap();
        let w = detect_large_cycle(&g).unwrap();
        assert_eq!(w.labels, vec![vec![Q, P], vec![P, Q]]);
        assert_eq!(w.sq_product, r(4, 1));
    }

    #[test]
    fn unit_weights_never_fire() {
        let g = WeightedDeBruijnGraph::from_weights(3, 3, Q, vec![Rational::one(); 27]).unwrap();
        assert_eq!(detect_small_cycle(&g), None);
        assert_eq!(detect_large_cycle(&g), None);
    }

    #[test]
    fn source_has_unit_quiescent_loop() {
        for a in [
            catalog::automaton_b(),
            catalog::automaton_b_prime(),
            catalog::f_automaton(),
        ] {
            let g = build_debruijn(&a).unwrap();
            let l = g.append(g.source(), a.quiescent());
            assert_eq!(g.edge(l).to, g.source());
            assert!(g.edge(l).sq_weight.is_one());
        }
    }

    #[test]
    fn loop_exponent_two_when_one_cancels() {
        // vertex p has a self-loop of weight 1/2; the detour q→p→q has weight 2,
        // so a single loop pass gives exactly 1 and the witness must loop twice
        let g =
            WeightedDeBruijnGraph::from_weights(2, 2, Q, vec![r(1, 1), r(2, 1), r(1, 1), r(1, 2)])
                .unwrap();
        let w = detect_small_cycle(&g).unwrap();
        assert_ne!(w.sq_product, Rational::one());
        let recomputed: Rational = w
            .labels
            .iter()
            .map(|word| {
                g.edge(crate::automaton::encode_word(word, 2))
                    .sq_weight
                    .clone()
            })
            .product();
        assert_eq!(recomputed, w.sq_product);
    }
}
