//! Graph engine: weighted de Bruijn graph `G_A`, pair graph `H_A`,
//! multiplicative Bellman-Ford detectors and strongly connected components.

mod debruijn;
mod pair;
pub mod scc;

pub use debruijn::{
    build_debruijn, detect_large_cycle, detect_small_cycle, CycleWitness, DbEdge,
    WeightedDeBruijnGraph,
};
pub use pair::{
    build_pair_graph, build_pair_graph_with, closed_walk_through, scc_of_source,
    walk_inner_product, PairEdge, PairGraph,
};
