#![allow(dead_code)]

use graphbound::generators::{self, RandomGraphSpec};
use graphbound::linalg::Matrix;
use graphbound::{VertexSet, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn weighted(n: usize, seed: u64) -> WeightedGraph {
    generators::random(&RandomGraphSpec::weighted(n, seed)).unwrap()
}

pub fn combinatorial(n: usize, seed: u64) -> WeightedGraph {
    generators::random(&RandomGraphSpec::combinatorial(n, seed)).unwrap()
}

/// Nonempty proper subset, each vertex included with probability `p`.
pub fn proper_subset(n: usize, p: f64, seed: u64) -> VertexSet {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if members.is_empty() {
        members.push(rng.gen_range(0..n));
    }
    if members.len() == n {
        members.remove(rng.gen_range(0..n));
    }
    VertexSet::new(n, members)
}

/// Independent eigenvalue oracle.
pub fn oracle_eigenvalues(a: &Matrix) -> Vec<f64> {
    let n = a.rows();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| a[(i, j)]);
    let mut values: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn every_family() -> Vec<WeightedGraph> {
    [
        "k2", "path:9", "cycle:8", "complete:6", "lattice:1:12", "lattice:2:5", "lattice:3:2",
        "tree:4", "hubray:8", "comb:6", "random:25:3", "randcomb:20:4", "normalized:lattice:2:3",
        "normalized:random:15:2",
    ]
    .iter()
    .map(|s| graphbound::GeneratorSpec::parse(s, 0).unwrap().generate().unwrap())
    .collect()
}
