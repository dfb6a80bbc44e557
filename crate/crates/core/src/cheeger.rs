//! Isoperimetric constants of combinatorial graphs and the Cheeger route to
//! Dirichlet eigenvalue bounds.
//!
//! The boundary `∂S` is the set of ordered pairs `(x, y)` with `x ∈ S`,
//! `y ∉ S`, `b(x, y) = 1`; edges from `S` into the centre set count.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::metric::MetricData;
use crate::report::{BoundReport, Relation};
use crate::spectral::{bottom_of_spectrum, OperatorSpec};
use crate::voronoi::VoronoiDecomposition;

/// Default cap on `#Ω` for exhaustive subset enumeration.
pub const EXHAUSTIVE_CAP: usize = 22;

/// Hard limit on `#Ω` regardless of the requested cap.
pub const ENUMERATION_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetricData {
    pub beta_omega: f64,
    pub witness_set: Vec<usize>,
    pub boundary_size: usize,
    pub volume: usize,
}

/// `#∂S` by scanning the edge list.
pub fn boundary_by_edges(g: &WeightedGraph, s: &VertexSet) -> usize {
    g.edges().iter().filter(|e| s.contains(e.u) != s.contains(e.w)).count()
}

/// `#∂S` by scanning the neighbours of each member.
pub fn boundary_by_neighbors(g: &WeightedGraph, s: &VertexSet) -> usize {
    s.iter()
        .map(|x| g.neighbors(x).iter().filter(|&&(y, _)| !s.contains(y)).count())
        .sum()
}

fn require_combinatorial(g: &WeightedGraph) -> Result<()> {
    if g.is_combinatorial() {
        Ok(())
    } else {
        Err(Error::NotCombinatorial)
    }
}

/// Per-position degree and in-`Ω` neighbour mask.
fn local_masks(g: &WeightedGraph, omega: &VertexSet) -> (Vec<u32>, Vec<u64>) {
    let members = omega.members();
    let degrees = members.iter().map(|&x| g.neighbors(x).len() as u32).collect();
    let masks = members
        .iter()
        .map(|&x| {
            g.neighbors(x)
                .iter()
                .filter_map(|&(y, _)| omega.position(y))
                .fold(0u64, |m, j| m | (1 << j))
        })
        .collect();
    (degrees, masks)
}

/// Best `(boundary, volume, mask)` so far; smaller ratio wins, then smaller mask.
#[derive(Debug, Clone, Copy)]
struct Best {
    boundary: u64,
    volume: u64,
    mask: u64,
}

impl Best {
    fn better(self, other: Self) -> Self {
        let lhs = self.boundary * other.volume;
        let rhs = other.boundary * self.volume;
        if lhs < rhs || (lhs == rhs && self.mask <= other.mask) {
            self
        } else {
            other
        }
    }
}

fn direct_boundary(degrees: &[u32], masks: &[u64], set: u64) -> u64 {
    (0..degrees.len())
        .filter(|&j| set >> j & 1 == 1)
        .map(|j| u64::from(degrees[j]) - u64::from((masks[j] & set).count_ones()))
        .sum()
}

/// Gray-code walk over codes `gray(i)` for `i ∈ [start, end)`, `start ≥ 1`.
fn scan_chunk(degrees: &[u32], masks: &[u64], start: u64, end: u64) -> Option<Best> {
    let mut set = start ^ (start >> 1);
    let mut boundary = direct_boundary(degrees, masks, set);
    let mut best = Best { boundary, volume: u64::from(set.count_ones()), mask: set };
    for i in start + 1..end {
        let j = i.trailing_zeros() as usize;
        let bit = 1u64 << j;
        let inside = u64::from((masks[j] & set).count_ones());
        let deg = u64::from(degrees[j]);
        if set & bit == 0 {
            boundary = boundary + deg - 2 * inside;
            set |= bit;
        } else {
            set &= !bit;
            boundary = boundary + 2 * inside - deg;
        }
        let here = Best { boundary, volume: u64::from(set.count_ones()), mask: set };
        best = best.better(here);
    }
    (end > start).then_some(best)
}

fn to_data(omega: &VertexSet, best: Best) -> IsoperimetricData {
    let members = omega.members();
    let witness_set =
        (0..members.len()).filter(|&j| best.mask >> j & 1 == 1).map(|j| members[j]).collect();
    IsoperimetricData {
        beta_omega: best.boundary as f64 / best.volume as f64,
        witness_set,
        boundary_size: best.boundary as usize,
        volume: best.volume as usize,
    }
}

/// Exact `β_Ω = min_{∅≠S⊆Ω} #∂S / #S` by enumerating all subsets.
pub fn beta_exhaustive(g: &WeightedGraph, omega: &VertexSet, cap: usize) -> Result<IsoperimetricData> {
    require_combinatorial(g)?;
    let k = omega.len();
    if k == 0 {
        return Err(Error::EmptyOmega);
    }
    let cap = cap.min(ENUMERATION_LIMIT);
    if k > cap {
        return Err(Error::TooLarge(k, cap));
    }
    let (degrees, masks) = local_masks(g, omega);
    let total = 1u64 << k;
    let chunks: u64 = if k >= 14 { 256 } else { 1 };
    let step = total.div_ceil(chunks);
    let best = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = (c * step).max(1);
            let end = ((c + 1) * step).min(total);
            scan_chunk(&degrees, &masks, start, end)
        })
        .reduce_with(Best::better)
        .expect("nonempty enumeration");
    Ok(to_data(omega, best))
}

/// `β_Ω` over connected subsets only, by direct evaluation of every mask.
pub fn beta_connected(g: &WeightedGraph, omega: &VertexSet, cap: usize) -> Result<IsoperimetricData> {
    require_combinatorial(g)?;
    let k = omega.len();
    if k == 0 {
        return Err(Error::EmptyOmega);
    }
    if k > cap {
        return Err(Error::TooLarge(k, cap));
    }
    let (degrees, masks) = local_masks(g, omega);
    let connected = |set: u64| {
        let first = set.trailing_zeros() as usize;
        let mut seen = 1u64 << first;
        let mut frontier = seen;
        while frontier != 0 {
            let j = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = masks[j] & set & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == set
    };
    let best = (1u64..1 << k)
        .filter(|&s| connected(s))
        .map(|s| Best {
            boundary: direct_boundary(&degrees, &masks, s),
            volume: u64::from(s.count_ones()),
            mask: s,
        })
        .reduce(Best::better)
        .expect("singletons are connected");
    Ok(to_data(omega, best))
}

pub const VORONOI_ISOPERIMETRIC: &str = "cheeger.isoperimetric_lower";

/// `β_Ω ≥ 1/vol[R]` with `R = Covr(D)` for the centres of `vd`.
pub fn beta_voronoi_bound(
    g: &WeightedGraph,
    md: &MetricData,
    vd: &VoronoiDecomposition,
    cap: usize,
) -> Result<BoundReport> {
    require_combinatorial(g)?;
    let r = md.covering_radius(&vd.centers)?;
    let bound = 1.0 / md.vol_bracket(g, r);
    let omega = vd.centers.complement();
    if omega.is_empty() {
        return Ok(BoundReport::vacuous(
            VORONOI_ISOPERIMETRIC,
            None,
            Relation::AtLeast,
            Some(bound),
            "every vertex is a centre; Omega is empty",
        ));
    }
    if omega.len() > cap {
        return Ok(BoundReport::vacuous(
            VORONOI_ISOPERIMETRIC,
            None,
            Relation::AtLeast,
            Some(bound),
            format!("bound only: #Omega = {} exceeds the cap {cap}", omega.len()),
        ));
    }
    let beta = beta_exhaustive(g, &omega, cap)?.beta_omega;
    Ok(BoundReport::check(VORONOI_ISOPERIMETRIC, beta, Relation::AtLeast, bound))
}

pub const CHEEGER_INEQUALITY: &str = "cheeger.inequality";
pub const CHEEGER_CHAIN: &str = "cheeger.chain";
pub const CHEEGER_ROUTE: &str = "cheeger.route_lower";
pub const INRADIUS_VOLUME: &str = "cheeger.inradius_volume_lower";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerChain {
    pub rows: Vec<BoundReport>,
    pub lambda_omega: f64,
    pub covering_radius: f64,
    pub vol_r: f64,
    pub max_degree: usize,
    pub beta: Option<IsoperimetricData>,
    /// `1/(R·vol[R])`.
    pub inradius_bound: f64,
    /// `1/(2δ·vol[R]²)`.
    pub cheeger_route_bound: f64,
    /// `R < 2δ·vol[R]`, equivalently `inradius_bound > cheeger_route_bound`.
    pub inradius_beats_cheeger: bool,
}

/// `λ_Ω ≥ β_Ω²/(2δ) ≥ 1/(2δ·vol[R]²)`, alongside `λ_Ω ≥ 1/(R·vol[R])`.
pub fn cheeger_chain(
    g: &WeightedGraph,
    md: &MetricData,
    d_set: &VertexSet,
    cap: usize,
) -> Result<CheegerChain> {
    require_combinatorial(g)?;
    if d_set.is_full() {
        return Err(Error::EmptyOmega);
    }
    let omega = d_set.complement();
    let delta = g.validate()?.max_degree;
    let two_delta = 2.0 * delta as f64;
    let r = md.covering_radius(d_set)?;
    let vol_r = md.vol_bracket(g, r);
    let lambda = bottom_of_spectrum(g, OperatorSpec::dirichlet(&omega))?;
    let route = 1.0 / (two_delta * vol_r * vol_r);
    let inradius_bound = 1.0 / (r * vol_r);

    let mut rows = Vec::new();
    let beta = if omega.len() <= cap { Some(beta_exhaustive(g, &omega, cap)?) } else { None };
    match &beta {
        Some(b) => {
            let cheeger = b.beta_omega * b.beta_omega / two_delta;
            rows.push(BoundReport::check(CHEEGER_INEQUALITY, lambda, Relation::AtLeast, cheeger));
            rows.push(BoundReport::check(VORONOI_ISOPERIMETRIC, b.beta_omega, Relation::AtLeast, 1.0 / vol_r));
            rows.push(BoundReport::check(CHEEGER_CHAIN, cheeger, Relation::AtLeast, route));
        }
        None => {
            let why = format!("bound only: #Omega = {} exceeds the cap {cap}", omega.len());
            rows.push(BoundReport::vacuous(CHEEGER_INEQUALITY, Some(lambda), Relation::AtLeast, None, &why));
            rows.push(BoundReport::vacuous(VORONOI_ISOPERIMETRIC, None, Relation::AtLeast, Some(1.0 / vol_r), &why));
            rows.push(BoundReport::vacuous(CHEEGER_CHAIN, None, Relation::AtLeast, Some(route), why));
        }
    }
    rows.push(BoundReport::check(CHEEGER_ROUTE, lambda, Relation::AtLeast, route));
    rows.push(BoundReport::check(INRADIUS_VOLUME, lambda, Relation::AtLeast, inradius_bound));

    Ok(CheegerChain {
        rows,
        lambda_omega: lambda,
        covering_radius: r,
        vol_r,
        max_degree: delta,
        beta,
        inradius_bound,
        cheeger_route_bound: route,
        inradius_beats_cheeger: r < two_delta * vol_r,
    })
}

/// `(n, ln m(B_n(x)) / n)` for integer radii `1 ≤ n ≤` the eccentricity of `x`.
pub fn growth_diagnostic(g: &WeightedGraph, md: &MetricData, x: usize) -> Vec<(usize, f64)> {
    let ecc = md.eccentricity(x).floor() as usize;
    (1..=ecc)
        .map(|n| (n, md.ball_volume(g, x, n as f64).ln() / n as f64))
        .collect()
}
