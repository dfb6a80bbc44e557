//! Voronoi decompositions with geodesic witnesses.
//!
//! Construction is a multi-source shortest-path expansion from all centres at
//! once. A vertex inherits the centre label of the predecessor that settles
//! it, so every witness path runs inside its own cell and every prefix of a
//! witness is itself a witness. Labels are ordered by
//! `(distance, centre index, vertex index)`; ties are exact float equality.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::metric::{path_length, MetricData, QueueEntry};
use crate::report::{BoundReport, Relation, BOUND_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiDecomposition {
    pub centers: VertexSet,
    /// Centre vertex of the cell containing each vertex.
    pub cell_of: Vec<usize>,
    /// Path from `cell_of[x]` to `x`.
    pub witness: Vec<Vec<usize>>,
}

impl VoronoiDecomposition {
    /// Members of the cell of centre `p`.
    pub fn cell(&self, p: usize) -> Vec<usize> {
        (0..self.cell_of.len()).filter(|&x| self.cell_of[x] == p).collect()
    }
}

pub fn build_voronoi(
    g: &WeightedGraph,
    md: &MetricData,
    centers: &VertexSet,
) -> Result<VoronoiDecomposition> {
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    let n = g.len();
    debug_assert_eq!(md.len(), n);
    let mut dist = vec![f64::INFINITY; n];
    let mut label = vec![usize::MAX; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for (rank, p) in centers.iter().enumerate() {
        dist[p] = 0.0;
        label[p] = rank;
        heap.push(QueueEntry { dist: 0.0, label: rank, vertex: p });
    }
    while let Some(QueueEntry { dist: d, label: l, vertex: x }) = heap.pop() {
        if done[x] || l != label[x] || d != dist[x] {
            continue;
        }
        done[x] = true;
        for &(y, b) in g.neighbors(x) {
            if done[y] {
                continue;
            }
            let cand = d + 1.0 / b;
            if cand < dist[y] || (cand == dist[y] && l < label[y]) {
                dist[y] = cand;
                label[y] = l;
                parent[y] = Some(x);
                heap.push(QueueEntry { dist: cand, label: l, vertex: y });
            }
        }
    }
    let cell_of: Vec<usize> = label.iter().map(|&l| centers.members()[l]).collect();
    let witness = (0..n)
        .map(|x| {
            let mut path = vec![x];
            let mut cur = x;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            path
        })
        .collect();
    let vd = VoronoiDecomposition { centers: centers.clone(), cell_of, witness };
    debug_assert!(verify_voronoi(g, md, &vd).iter().all(|r| r.pass));
    Ok(vd)
}

pub const V1_STRUCTURE: &str = "voronoi.v1_witness_structure";
pub const V1_LENGTH: &str = "voronoi.v1_witness_length";
pub const V2_NEAREST: &str = "voronoi.v2_nearest_center";
pub const V3_COVER: &str = "voronoi.v3_partition";
pub const CONTAINMENT: &str = "voronoi.cell_within_covering_ball";

/// Re-derives every axiom from the distances alone.
///
/// Rows: witness structure (violations counted: path must start at its
/// centre, use edges only and stay in the cell), witness length
/// (`max |L(witness) − d(p,x)|`), nearest-centre slack
/// (`min d(q,x) − d(p,x)`), partition (vertices assigned to a non-centre),
/// and the containment `V_p ⊆ B_R(p)` with `R = Covr(D)`.
pub fn verify_voronoi(
    g: &WeightedGraph,
    md: &MetricData,
    vd: &VoronoiDecomposition,
) -> Vec<BoundReport> {
    let n = g.len();
    let mut structural = 0usize;
    let mut length_dev: f64 = 0.0;
    let mut nearest_slack = f64::INFINITY;
    let mut unassigned = 0usize;
    let mut farthest: f64 = 0.0;

    for x in 0..n {
        let p = vd.cell_of[x];
        if !vd.centers.contains(p) {
            unassigned += 1;
            continue;
        }
        if vd.centers.contains(x) && p != x {
            structural += 1;
        }
        let path = &vd.witness[x];
        let shape_ok = path.first() == Some(&p)
            && path.last() == Some(&x)
            && path.iter().all(|&y| vd.cell_of[y] == p);
        match path_length(g, path) {
            Some(len) if shape_ok => length_dev = length_dev.max((len - md.dist(p, x)).abs()),
            _ => structural += 1,
        }
        let own = md.dist(p, x);
        for q in vd.centers.iter() {
            nearest_slack = nearest_slack.min(md.dist(q, x) - own);
        }
        farthest = farthest.max(own);
    }

    let covr = md.covering_radius(&vd.centers).unwrap_or(0.0);
    vec![
        BoundReport::exact(V1_STRUCTURE, structural as f64, Relation::AtMost, 0.0),
        BoundReport::check(V1_LENGTH, length_dev, Relation::AtMost, 0.0),
        BoundReport::check(V2_NEAREST, nearest_slack, Relation::AtLeast, 0.0),
        BoundReport::exact(V3_COVER, unassigned as f64, Relation::AtMost, 0.0),
        BoundReport::check(CONTAINMENT, farthest, Relation::AtMost, covr)
            .with_note(format!("tolerance {BOUND_TOLERANCE:e}")),
    ]
}
