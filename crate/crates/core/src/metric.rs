//! Path metric with edge length `1/b(x,y)`: all-pairs distances, geodesic
//! trees, balls, volumes, inradius and covering radius.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::report::{BoundReport, Relation};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricData {
    n: usize,
    dist: Vec<f64>,
    /// `pred[s * n + x]`: predecessor of `x` on the geodesic tree rooted at `s`.
    pred: Vec<Option<usize>>,
}

/// Heap entry ordered so that `BinaryHeap` pops the smallest distance first,
/// then the smallest vertex index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct QueueEntry {
    pub dist: f64,
    pub label: usize,
    pub vertex: usize,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.label.cmp(&self.label))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn single_source(g: &WeightedGraph, source: usize) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = g.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(QueueEntry { dist: 0.0, label: 0, vertex: source });
    while let Some(QueueEntry { dist: d, vertex: x, .. }) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for &(y, b) in g.neighbors(x) {
            let cand = d + 1.0 / b;
            if cand < dist[y] {
                dist[y] = cand;
                pred[y] = Some(x);
                heap.push(QueueEntry { dist: cand, label: 0, vertex: y });
            }
        }
    }
    (dist, pred)
}

/// Length `Σ 1/b(x_j, x_{j+1})` of a vertex path; `None` if a step is not an edge.
pub fn path_length(g: &WeightedGraph, path: &[usize]) -> Option<f64> {
    let mut total = 0.0;
    for pair in path.windows(2) {
        let b = g.weight(pair[0], pair[1]);
        if b <= 0.0 {
            return None;
        }
        total += 1.0 / b;
    }
    Some(total)
}

/// All-pairs distances by one priority-queue run per source.
///
/// The stored matrix is made exactly symmetric by keeping the smaller of the
/// two single-source values for each pair.
pub fn compute_metric(g: &WeightedGraph) -> Result<MetricData> {
    g.validate()?;
    let n = g.len();
    let runs: Vec<(Vec<f64>, Vec<Option<usize>>)> =
        (0..n).into_par_iter().map(|s| single_source(g, s)).collect();
    let mut dist = vec![0.0; n * n];
    let mut pred = vec![None; n * n];
    for (s, (d, p)) in runs.into_iter().enumerate() {
        dist[s * n..(s + 1) * n].copy_from_slice(&d);
        pred[s * n..(s + 1) * n].copy_from_slice(&p);
    }
    for x in 0..n {
        for y in x + 1..n {
            let v = dist[x * n + y].min(dist[y * n + x]);
            dist[x * n + y] = v;
            dist[y * n + x] = v;
        }
    }
    Ok(MetricData { n, dist, pred })
}

impl MetricData {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, x: usize, y: usize) -> f64 {
        self.dist[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.dist[x * self.n..(x + 1) * self.n]
    }

    /// Geodesic from `source` to `target` read off the predecessor tree,
    /// starting at `source`.
    pub fn geodesic(&self, source: usize, target: usize) -> Vec<usize> {
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.pred[source * self.n + cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        debug_assert_eq!(path[0], source);
        path
    }

    /// `closed`: `{y : d(x,y) ≤ r}`; otherwise `{y : d(x,y) < r}`.
    pub fn ball(&self, x: usize, r: f64, closed: bool) -> VertexSet {
        let row = self.row(x);
        VertexSet::from_mask(row.iter().map(|&d| if closed { d <= r } else { d < r }).collect())
    }

    /// `m(B_r(x))`, closed ball.
    pub fn ball_volume(&self, g: &WeightedGraph, x: usize, r: f64) -> f64 {
        self.row(x).iter().zip(g.measure()).filter(|(&d, _)| d <= r).map(|(_, &m)| m).sum()
    }

    /// `vol[s] = sup_x m(B_s(x))`.
    pub fn vol_bracket(&self, g: &WeightedGraph, s: f64) -> f64 {
        (0..self.n).map(|x| self.ball_volume(g, x, s)).fold(0.0, f64::max)
    }

    /// `sup_x m(B_s(x) ∩ Ω)`.
    pub fn vol_bracket_within(&self, g: &WeightedGraph, s: f64, omega: &VertexSet) -> f64 {
        (0..self.n)
            .map(|x| {
                self.row(x)
                    .iter()
                    .enumerate()
                    .filter(|&(y, &d)| d <= s && omega.contains(y))
                    .map(|(y, _)| g.m(y))
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// `sup_{p ∈ D} m(B_s(p))`.
    pub fn vol_bracket_centers(&self, g: &WeightedGraph, s: f64, centers: &VertexSet) -> f64 {
        centers.iter().map(|p| self.ball_volume(g, p, s)).fold(0.0, f64::max)
    }

    pub fn eccentricity(&self, x: usize) -> f64 {
        self.row(x).iter().copied().fold(0.0, f64::max)
    }

    /// `max_{x∈Ω} min_{q∉Ω} d(x,q)`: the largest `r` with `U_r(x) ⊆ Ω` for some `x ∈ Ω`.
    pub fn inradius(&self, omega: &VertexSet) -> Result<f64> {
        if omega.is_empty() {
            return Err(Error::EmptySet);
        }
        if omega.is_full() {
            return Err(Error::FullSet);
        }
        let outside = omega.complement();
        Ok(omega
            .iter()
            .map(|x| outside.iter().map(|q| self.dist(x, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max))
    }

    /// `max_{x∈X} min_{p∈D} d(p,x)`, the smallest `R` with `⋃_p B_R(p) = X`.
    pub fn covering_radius(&self, centers: &VertexSet) -> Result<f64> {
        if centers.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok((0..self.n)
            .map(|x| centers.iter().map(|p| self.dist(p, x)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max))
    }
}

/// Checks the minimal-distance bound `d(x,y) ≥ 1/b_max` and the cardinality
/// bound `#B_r(x) ≤ (r·δ·m_max)^{r·b_max} + 1`, the latter at every radius
/// where a ball changes, for every centre.
pub fn check_homogeneity(g: &WeightedGraph, md: &MetricData) -> Result<Vec<BoundReport>> {
    let c = g.validate()?;
    let n = g.len();
    let mut rows = Vec::new();

    if n > 1 {
        let min_dist = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .map(|(x, y)| md.dist(x, y))
            .fold(f64::INFINITY, f64::min);
        rows.push(BoundReport::check(
            "homogeneity.min_distance",
            min_dist,
            Relation::AtLeast,
            1.0 / c.b_max,
        ));
    } else {
        rows.push(BoundReport::vacuous(
            "homogeneity.min_distance",
            None,
            Relation::AtLeast,
            None,
            "single vertex",
        ));
    }

    let mut worst: Option<(f64, f64, f64)> = None;
    for x in 0..n {
        let mut radii: Vec<f64> = md.row(x).to_vec();
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        for &r in &radii {
            let count = md.row(x).iter().filter(|&&d| d <= r).count() as f64;
            let bound = (r * c.delta * c.m_max).powf(r * c.b_max) + 1.0;
            let slack = bound - count;
            if worst.is_none_or(|(s, _, _)| slack < s) {
                worst = Some((slack, count, bound));
            }
        }
    }
    let (_, count, bound) = worst.expect("at least one vertex");
    rows.push(BoundReport::check("homogeneity.ball_cardinality", count, Relation::AtMost, bound));
    Ok(rows)
}
