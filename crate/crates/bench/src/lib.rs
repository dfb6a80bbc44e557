//! Fixed workloads shared by the benchmarks.

use graphbound::{generators, RandomGraphSpec, VertexSet, WeightedGraph};

/// Connected weighted random graph with `n` vertices.
pub fn weighted_graph(n: usize) -> WeightedGraph {
    generators::random(&RandomGraphSpec::weighted(n, 17)).expect("valid generator")
}

/// Combinatorial random graph with `n` vertices.
pub fn combinatorial_graph(n: usize) -> WeightedGraph {
    generators::random(&RandomGraphSpec::combinatorial(n, 17)).expect("valid generator")
}

/// Every `k`-th vertex.
pub fn every(g: &WeightedGraph, k: usize) -> VertexSet {
    VertexSet::new(g.len(), (0..g.len()).step_by(k))
}
