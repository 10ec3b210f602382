//! Pair graph `H_A`: de Bruijn transitions taken in lockstep by two copies,
//! keeping a joint step only when the two rules are not orthogonal.

use std::collections::{BTreeSet, VecDeque};

use super::scc::{scc_containing, Adjacency};
use crate::automaton::{decode_word, Lqca, StateId};
use crate::error::{CoreError, Result};
use crate::num::ExactComplex;
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairEdge {
    pub from: usize,
    pub to: usize,
    /// Label (word index) of the first component's de Bruijn edge.
    pub label1: usize,
    pub label2: usize,
}

/// CSR adjacency over pair vertices `u1·|V| + u2`.
#[derive(Clone, Debug)]
pub struct PairGraph {
    states: usize,
    r: usize,
    quiescent: StateId,
    single_count: usize,
    source: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<(usize, usize)>,
}

impl PairGraph {
    pub fn num_vertices(&self) -> usize {
        self.single_count * self.single_count
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    /// `(q^(r-1), q^(r-1))`.
    pub fn source(&self) -> usize {
        self.source
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

    pub fn vertex(&self, p: usize) -> (usize, usize) {
        (p / self.single_count, p % self.single_count)
    }

    pub fn vertex_index(&self, u1: usize, u2: usize) -> usize {
        u1 * self.single_count + u2
    }

    pub fn is_diagonal(&self, p: usize) -> bool {
        let (u1, u2) = self.vertex(p);
        u1 == u2
    }

    pub fn vertex_words(&self, p: usize) -> (Vec<StateId>, Vec<StateId>) {
        let (u1, u2) = self.vertex(p);
        (
            decode_word(u1, self.states, self.r - 1),
            decode_word(u2, self.states, self.r - 1),
        )
    }

    pub fn label_word(&self, label: usize) -> Vec<StateId> {
        decode_word(label, self.states, self.r)
    }

    pub fn out_edges(&self, p: usize) -> impl Iterator<Item = PairEdge> + '_ {
        (self.offsets[p]..self.offsets[p + 1]).map(move |i| PairEdge {
            from: p,
            to: self.targets[i],
            label1: self.labels[i].0,
            label2: self.labels[i].1,
        })
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors(from).contains(&to)
    }
}

impl Adjacency for PairGraph {
    fn num_vertices(&self) -> usize {
        PairGraph::num_vertices(self)
    }

    fn successors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// `H_A` for a simple automaton with `r ≥ 2`.
pub fn build_pair_graph(a: &Lqca) -> Result<PairGraph> {
    build_pair_graph_with(a, Execution::default())
}

pub fn build_pair_graph_with(a: &Lqca, exec: Execution) -> Result<PairGraph> {
    if !a.is_simple() {
        return Err(CoreError::Contract(
            "pair graph needs a simple automaton; simplify first".into(),
        ));
    }
    if a.r() < 2 {
        return Err(CoreError::Contract(
            "pair graph is only built for r ≥ 2".into(),
        ));
    }
    let k = a.num_states();
    let r = a.r();
    let labels = a.table().len();
    let single_count = labels / k;

    // non-orthogonality of every rule pair, row by row
    let rows: Vec<Vec<bool>> = par::map_range(exec, 0..labels, |l1| {
        let u = a.rule_at(l1);
        (0..labels)
            .map(|l2| {
                !u.inner_product(a.rule_at(l2))
                    .expect("rules share the alphabet")
                    .is_zero()
            })
            .collect()
    });

    let adjacency: Vec<Vec<(usize, usize, usize)>> =
        par::map_range(exec, 0..single_count * single_count, |p| {
            let (u1, u2) = (p / single_count, p % single_count);
            let mut out = Vec::new();
            for y1 in 0..k {
                let l1 = u1 * k + y1;
                for y2 in 0..k {
                    let l2 = u2 * k + y2;
                    if rows[l1][l2] {
                        let to = (l1 % single_count) * single_count + l2 % single_count;
                        out.push((to, l1, l2));
                    }
                }
            }
            out
        });

    let mut offsets = Vec::with_capacity(adjacency.len() + 1);
    let mut targets = Vec::new();
    let mut edge_labels = Vec::new();
    offsets.push(0);
    for row in adjacency {
        for (to, l1, l2) in row {
            targets.push(to);
            edge_labels.push((l1, l2));
        }
        offsets.push(targets.len());
    }
    let q_vertex = (0..r - 1).fold(0, |acc, _| acc * k + a.quiescent().0);
    Ok(PairGraph {
        states: k,
        r,
        quiescent: a.quiescent(),
        single_count,
        source: q_vertex * single_count + q_vertex,
        offsets,
        targets,
        labels: edge_labels,
    })
}

/// Strongly connected component of the source pair vertex.
pub fn scc_of_source(h: &PairGraph) -> BTreeSet<usize> {
    scc_containing(h, h.source())
}

/// Shortest walk from `from` to `to` inside `allowed`; at least one edge
/// when `from == to`.
fn bfs_walk(
    h: &PairGraph,
    from: usize,
    to: usize,
    allowed: &BTreeSet<usize>,
) -> Option<Vec<PairEdge>> {
    let n = h.num_vertices();
    let mut parent: Vec<Option<PairEdge>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    // `from` is left unmarked so a closed walk can re-enter it
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        for e in h.out_edges(x) {
            if !allowed.contains(&e.to) || seen[e.to] {
                continue;
            }
            seen[e.to] = true;
            parent[e.to] = Some(e);
            if e.to == to {
                let mut walk = vec![e];
                let mut cur = e.from;
                while cur != from {
                    let pe = parent[cur].expect("bfs parent");
                    walk.push(pe);
                    cur = pe.from;
                }
                walk.reverse();
                return Some(walk);
            }
            queue.push_back(e.to);
        }
    }
    None
}

/// A closed walk from the source through `v` and back, inside the source's
/// strongly connected component.
pub fn closed_walk_through(h: &PairGraph, v: usize) -> Result<Vec<PairEdge>> {
    let scc = scc_of_source(h);
    if !scc.contains(&v) {
        return Err(CoreError::Contract(format!(
            "pair vertex {v} is outside the source component"
        )));
    }
    let src = h.source();
    let missing =
        || CoreError::Inconsistent("no walk inside a strongly connected component".into());
    if v == src {
        return bfs_walk(h, src, src, &scc).ok_or_else(missing);
    }
    let mut walk = bfs_walk(h, src, v, &scc).ok_or_else(missing)?;
    walk.extend(bfs_walk(h, v, src, &scc).ok_or_else(missing)?);
    Ok(walk)
}

/// `⟨δ(label1), δ(label2)⟩` multiplied along a pair walk.
pub fn walk_inner_product(a: &Lqca, walk: &[PairEdge]) -> ExactComplex {
    walk.iter()
        .map(|e| {
            a.rule_at(e.label1)
                .inner_product(a.rule_at(e.label2))
                .expect("same alphabet")
        })
        .product()
}
