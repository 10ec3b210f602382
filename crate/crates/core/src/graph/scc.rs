//! Iterative Tarjan strongly connected components.

use std::collections::BTreeSet;

pub trait Adjacency {
    fn num_vertices(&self) -> usize;
    fn successors(&self, v: usize) -> &[usize];
}

impl Adjacency for Vec<Vec<usize>> {
    fn num_vertices(&self) -> usize {
        self.len()
    }

    fn successors(&self, v: usize) -> &[usize] {
        &self[v]
    }
}

const UNVISITED: usize = usize::MAX;

/// Components reachable from `root`, in the order Tarjan completes them
/// (reverse topological). Uses an explicit call stack, so depth is bounded
/// only by memory.
pub fn tarjan_from<G: Adjacency + ?Sized>(g: &G, root: usize) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut components = Vec::new();
    let mut next = 0usize;

    index[root] = next;
    low[root] = next;
    next += 1;
    stack.push(root);
    on_stack[root] = true;
    calls.push((root, 0));

    while let Some(top) = calls.last_mut() {
        let v = top.0;
        let succ = g.successors(v);
        if top.1 < succ.len() {
            let w = succ[top.1];
            top.1 += 1;
            if index[w] == UNVISITED {
                index[w] = next;
                low[w] = next;
                next += 1;
                stack.push(w);
                on_stack[w] = true;
                calls.push((w, 0));
            } else if on_stack[w] {
                low[v] = low[v].min(index[w]);
            }
            continue;
        }
        calls.pop();
        if low[v] == index[v] {
            let mut component = Vec::new();
            loop {
                let w = stack.pop().expect("tarjan stack underflow");
                on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            components.push(component);
        }
        if let Some(&(parent, _)) = calls.last() {
            low[parent] = low[parent].min(low[v]);
        }
    }
    components
}

/// The strongly connected component containing `v`.
pub fn scc_containing<G: Adjacency + ?Sized>(g: &G, v: usize) -> BTreeSet<usize> {
    // the root's component is the last one Tarjan completes
    tarjan_from(g, v)
        .pop()
        .map(|c| c.into_iter().collect())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Quadratic oracle: `u ~ v` iff each reaches the other.
    fn reachability_scc(g: &[Vec<usize>], v: usize) -> BTreeSet<usize> {
        let n = g.len();
        let reach = |s: usize| {
            let mut seen = vec![false; n];
            let mut todo = vec![s];
            seen[s] = true;
            while let Some(x) = todo.pop() {
                for &y in &g[x] {
                    if !seen[y] {
                        seen[y] = true;
                        todo.push(y);
                    }
                }
            }
            seen
        };
        let from_v = reach(v);
        (0..n).filter(|&u| from_v[u] && reach(u)[v]).collect()
    }

    #[test]
    fn singleton_without_loop() {
        let g = vec![vec![1], vec![]];
        assert_eq!(scc_containing(&g, 0), BTreeSet::from([0]));
    }

    #[test]
    fn two_cycles_joined_by_bridge() {
        let g = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        assert_eq!(scc_containing(&g, 0), BTreeSet::from([0, 1]));
        assert_eq!(scc_containing(&g, 3), BTreeSet::from([2, 3]));
    }

    #[test]
    fn long_path_does_not_overflow_stack() {
        let n = 200_000;
        let mut g: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        g[n - 1] = vec![0];
        assert_eq!(scc_containing(&g, 0).len(), n);
    }

    fn arb_graph() -> impl Strategy<Value = Vec<Vec<usize>>> {
        (1usize..=64)
            .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0..n, 0..4), n))
    }

    proptest! {
        #[test]
        fn matches_reachability_oracle(g in arb_graph(), pick in 0usize..64) {
            let v = pick % g.len();
            prop_assert_eq!(scc_containing(&g, v), reachability_scc(&g, v));
        }
    }
}
