//! Schrödinger operators `L_V = H + V/m`, their positive ground states, and
//! the ground-state transform to `(X, b_φ, m_φ)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::metric::{compute_metric, MetricData};
use crate::report::{BoundReport, Relation};
use crate::spectral::{assemble, bottom_of_spectrum, eigdecompose, energy, norm_sq, OperatorSpec};

/// Relative tolerance for the ground-state identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundState {
    pub phi: Vec<f64>,
    pub lambda_v: f64,
    /// `sqrt(max φ / min φ)`; with `max φ · min φ = 1` this is the least `c`
    /// with `1/c ≤ φ ≤ c`.
    pub c: f64,
}

/// Lowest eigenpair of `L_V`, scaled so that `max φ · min φ = 1`.
///
/// When `V/m` is constant the ground state is the constant function and is
/// returned exactly.
pub fn ground_state(g: &WeightedGraph) -> Result<GroundState> {
    g.validate()?;
    let v = g.potential();
    let ratio = v[0] / g.m(0);
    if (0..g.len()).all(|x| v[x] / g.m(x) == ratio) {
        return Ok(GroundState { phi: vec![1.0; g.len()], lambda_v: ratio, c: 1.0 });
    }
    let sd = eigdecompose(&assemble(g, OperatorSpec::laplacian().with_potential())?)?;
    let mut phi = sd.vector(0);
    if phi.iter().sum::<f64>() < 0.0 {
        phi.iter_mut().for_each(|p| *p = -*p);
    }
    let max = phi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = phi.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::NonPositiveGroundState);
    }
    let scale = 1.0 / (max * min).sqrt();
    phi.iter_mut().for_each(|p| *p *= scale);
    Ok(GroundState { phi, lambda_v: sd.min(), c: (max / min).sqrt() })
}

/// `max_x |(L_V φ)(x) − λ_V φ(x)| / max φ`.
pub fn ground_state_residual(g: &WeightedGraph, gs: &GroundState) -> Result<f64> {
    let op = assemble(g, OperatorSpec::laplacian().with_potential())?;
    let l_phi = op.weighted.matvec(&gs.phi);
    let top = gs.phi.iter().copied().fold(0.0, f64::max);
    Ok(l_phi
        .iter()
        .zip(&gs.phi)
        .map(|(l, p)| (l - gs.lambda_v * p).abs())
        .fold(0.0, f64::max)
        / top)
}

/// `(X, φ(x)φ(y)b(x,y), φ(x)²m(x))`, without potential.
pub fn transform(g: &WeightedGraph, gs: &GroundState) -> Result<WeightedGraph> {
    let phi = &gs.phi;
    let measure = (0..g.len()).map(|x| phi[x] * phi[x] * g.m(x)).collect();
    let edges = g.edges().iter().map(|e| (e.u, e.w, phi[e.u] * phi[e.w] * e.b));
    let out = WeightedGraph::new(g.ids().to_vec(), measure, edges, None)?;
    out.validate()?;
    Ok(out)
}

/// `𝓔(f,f) + Σ V f²`.
pub fn potential_energy(g: &WeightedGraph, f: &[f64]) -> f64 {
    energy(g, f) + g.potential().iter().zip(f).map(|(v, x)| v * x * x).sum::<f64>()
}

/// Relative mismatch `|𝓔_V(f) − λ_V‖f‖² − 𝓔_φ(f/φ)| / (𝓔_V(f) + |λ_V|‖f‖²)`.
pub fn identity_mismatch(g: &WeightedGraph, g_phi: &WeightedGraph, gs: &GroundState, f: &[f64]) -> f64 {
    let e_v = potential_energy(g, f);
    let mass = norm_sq(g, f);
    let lhs = e_v - gs.lambda_v * mass;
    let quotient: Vec<f64> = f.iter().zip(&gs.phi).map(|(a, p)| a / p).collect();
    let rhs = energy(g_phi, &quotient);
    let scale = e_v + gs.lambda_v.abs() * mass;
    if scale == 0.0 {
        (lhs - rhs).abs()
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Random test function: each vertex is in the support with probability ½
/// and carries a value uniform in `[−1, 1]`.
pub fn random_function(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(-1.0..=1.0) } else { 0.0 }).collect()
}

pub const TRANSFORM_IDENTITY: &str = "ground_state.transform_identity";

/// `𝓔_V(f,f) − λ_V‖f‖² = 𝓔_φ(f/φ, f/φ)` on `samples` random functions; sample
/// `i` draws from a generator seeded with `seed + i`.
pub fn ground_state_transform_check(
    g: &WeightedGraph,
    gs: &GroundState,
    samples: usize,
    seed: u64,
) -> Result<BoundReport> {
    let g_phi = transform(g, gs)?;
    let worst = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let f = random_function(g.len(), &mut rng);
            identity_mismatch(g, &g_phi, gs, &f)
        })
        .reduce(|| 0.0, f64::max);
    Ok(BoundReport::check(TRANSFORM_IDENTITY, worst, Relation::AtMost, IDENTITY_TOLERANCE)
        .with_note(format!("{samples} samples")))
}

/// Metric, volume and pinching comparisons between `(X, b, m)` and its transform.
pub fn equivalence_checks(
    g: &WeightedGraph,
    md: &MetricData,
    gs: &GroundState,
    samples: usize,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    let g_phi = transform(g, gs)?;
    let md_phi = compute_metric(&g_phi)?;
    let c2 = gs.c * gs.c;
    let n = g.len();
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    for x in 0..n {
        for y in 0..n {
            let (d, d_phi) = (md.dist(x, y), md_phi.dist(x, y));
            lower = lower.min(d_phi - d / c2);
            upper = upper.min(c2 * d - d_phi);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vol_lower = f64::INFINITY;
    let mut vol_upper = f64::INFINITY;
    for _ in 0..samples {
        let s = VertexSet::new(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let (v, v_phi) = (g.volume(&s), g_phi.volume(&s));
        vol_lower = vol_lower.min(v_phi - v / c2);
        vol_upper = vol_upper.min(c2 * v - v_phi);
    }
    let max = gs.phi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = gs.phi.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(vec![
        BoundReport::check("ground_state.metric_lower", lower, Relation::AtLeast, 0.0),
        BoundReport::check("ground_state.metric_upper", upper, Relation::AtLeast, 0.0),
        BoundReport::check("ground_state.volume_lower", vol_lower, Relation::AtLeast, 0.0),
        BoundReport::check("ground_state.volume_upper", vol_upper, Relation::AtLeast, 0.0),
        BoundReport::check("ground_state.pinch_upper", max, Relation::AtMost, gs.c),
        BoundReport::check("ground_state.pinch_lower", min, Relation::AtLeast, 1.0 / gs.c),
        BoundReport::check("ground_state.residual", ground_state_residual(g, gs)?, Relation::AtMost, 1e-9),
    ])
}

/// Verifies `vol[α s] ≤ α^N vol[s]` for `α ∈ alphas` and every `s` among the
/// distinct pairwise distances.
pub fn doubling_holds(g: &WeightedGraph, md: &MetricData, exponent: f64, alphas: &[f64]) -> bool {
    let n = g.len();
    let mut radii: Vec<f64> = (0..n).flat_map(|x| md.row(x).to_vec()).filter(|&d| d > 0.0).collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    radii.iter().all(|&s| {
        let base = md.vol_bracket(g, s);
        alphas.iter().all(|&a| md.vol_bracket(g, a * s) <= a.powf(exponent) * base * (1.0 + 1e-12))
    })
}

pub const POTENTIAL_LOWER: &str = "potential.dirichlet_lower";
pub const POTENTIAL_LOWER_WIDE: &str = "potential.dirichlet_lower_wide_ball";
pub const POTENTIAL_DOUBLING: &str = "potential.doubling_lower";
pub const POTENTIAL_DOUBLING_WIDE: &str = "potential.doubling_lower_wide_ball";

/// `λ_{V,Ω} ≥ λ_V + 1/(c⁴·R·vol[c²R])` with `R = Covr(D)` in the original
/// metric and `vol` in the original measure, together with the variant using
/// `vol[c⁴R]`. With a doubling exponent `N`, also `λ_V + 1/(c^{4+2N}·R·vol[R])`
/// and `λ_V + 1/(c^{4+4N}·R·vol[R])`.
pub fn potential_dirichlet_bound(
    g: &WeightedGraph,
    md: &MetricData,
    gs: &GroundState,
    d_set: &VertexSet,
    doubling_exponent: Option<f64>,
) -> Result<Vec<BoundReport>> {
    if d_set.is_full() {
        return Err(Error::EmptyOmega);
    }
    let omega = d_set.complement();
    let r = md.covering_radius(d_set)?;
    let truth = bottom_of_spectrum(g, OperatorSpec::dirichlet(&omega).with_potential())?;
    let c = gs.c;
    let c2 = c * c;
    let c4 = c2 * c2;
    let mut rows = vec![
        BoundReport::check(
            POTENTIAL_LOWER,
            truth,
            Relation::AtLeast,
            gs.lambda_v + 1.0 / (c4 * r * md.vol_bracket(g, c2 * r)),
        ),
        BoundReport::check(
            POTENTIAL_LOWER_WIDE,
            truth,
            Relation::AtLeast,
            gs.lambda_v + 1.0 / (c4 * r * md.vol_bracket(g, c4 * r)),
        ),
    ];
    if let Some(exp) = doubling_exponent {
        let alphas: Vec<f64> = [2.0, c2, c4].into_iter().filter(|&a| a > 1.0).collect();
        if !doubling_holds(g, md, exp, &alphas) {
            return Err(Error::DoublingUnverified(exp));
        }
        let vol_r = md.vol_bracket(g, r);
        rows.push(BoundReport::check(
            POTENTIAL_DOUBLING,
            truth,
            Relation::AtLeast,
            gs.lambda_v + 1.0 / (c.powf(4.0 + 2.0 * exp) * r * vol_r),
        ));
        rows.push(BoundReport::check(
            POTENTIAL_DOUBLING_WIDE,
            truth,
            Relation::AtLeast,
            gs.lambda_v + 1.0 / (c.powf(4.0 + 4.0 * exp) * r * vol_r),
        ));
    }
    Ok(rows)
}
