//! Operator matrices for `H`, `H_Ω` and `H + t·1_D`, their spectra, and the
//! Dirichlet, large-coupling and uncertainty bounds evaluated against them.
//!
//! Operators act on `ℓ²(X, m)`. For eigencomputation they are conjugated by
//! `M^{1/2}` (`M = diag m`), which yields an ordinary symmetric matrix with the
//! same spectrum; eigenvectors are mapped back by `M^{-1/2}` so they are
//! `m`-orthonormal.

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::linalg::{spd_inverse, symmetric_eigen, symmetric_norm, Matrix};
use crate::metric::MetricData;
use crate::report::{BoundReport, Relation};
use crate::voronoi::VoronoiDecomposition;

/// Absolute tolerance for deciding that an eigenvalue lies in a closed interval.
pub const INTERVAL_TOLERANCE: f64 = 1e-12;

/// Which value stands in for `‖H‖` in bound formulas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NormChoice {
    /// Spectral norm of the assembled Laplacian.
    #[default]
    Computed,
    /// The a-priori bound `2δ`.
    Surrogate,
}

/// What to assemble: the full Laplacian, its Dirichlet restriction to `Ω`,
/// or the coupled operator `H + t·1_D`; optionally with the potential.
#[derive(Debug, Clone, Copy, Default)]
pub struct OperatorSpec<'a> {
    pub omega: Option<&'a VertexSet>,
    pub coupling: Option<(&'a VertexSet, f64)>,
    pub potential: bool,
}

impl<'a> OperatorSpec<'a> {
    pub fn laplacian() -> Self {
        Self::default()
    }

    pub fn dirichlet(omega: &'a VertexSet) -> Self {
        Self { omega: Some(omega), ..Self::default() }
    }

    pub fn coupled(d_set: &'a VertexSet, t: f64) -> Self {
        Self { coupling: Some((d_set, t)), ..Self::default() }
    }

    pub fn with_potential(self) -> Self {
        Self { potential: true, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    /// Vertex indices of the coordinates.
    pub basis: Vec<usize>,
    pub measure: Vec<f64>,
    /// Matrix of the operator acting on functions: `A[x][y] = −b(x,y)/m(x)`.
    pub weighted: Matrix,
    /// `M^{1/2} A M^{-1/2}`.
    pub symmetric: Matrix,
    pub restricted: bool,
}

pub fn assemble(g: &WeightedGraph, spec: OperatorSpec<'_>) -> Result<OperatorMatrix> {
    let potential = spec.potential.then(|| g.potential());
    let (basis, restricted): (Vec<usize>, bool) = match spec.omega {
        Some(omega) if omega.is_empty() => return Err(Error::EmptyOmega),
        Some(omega) => (omega.members().to_vec(), true),
        None => ((0..g.len()).collect(), false),
    };
    let k = basis.len();
    let pos: Vec<Option<usize>> = {
        let mut p = vec![None; g.len()];
        for (i, &x) in basis.iter().enumerate() {
            p[x] = Some(i);
        }
        p
    };
    let measure: Vec<f64> = basis.iter().map(|&x| g.m(x)).collect();
    let mut weighted = Matrix::zeros(k, k);
    let mut symmetric = Matrix::zeros(k, k);
    for (i, &x) in basis.iter().enumerate() {
        let mx = g.m(x);
        let mut diag = g.degree(x);
        if let Some(v) = &potential {
            diag += v[x];
        }
        let mut d = diag / mx;
        if let Some((d_set, t)) = spec.coupling {
            assert!(t >= 0.0, "coupling constant must be nonnegative");
            if d_set.contains(x) {
                d += t;
            }
        }
        weighted[(i, i)] = d;
        symmetric[(i, i)] = d;
        for &(y, b) in g.neighbors(x) {
            if let Some(j) = pos[y] {
                weighted[(i, j)] = -b / mx;
                symmetric[(i, j)] = -b / (mx * g.m(y)).sqrt();
            }
        }
    }
    Ok(OperatorMatrix { basis, measure, weighted, symmetric, restricted })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    /// Columns are `m`-orthonormal eigenvectors in vertex coordinates.
    pub eigenvectors: Matrix,
    pub basis: Vec<usize>,
    pub measure: Vec<f64>,
}

pub fn eigdecompose(op: &OperatorMatrix) -> Result<SpectralData> {
    let eig = symmetric_eigen(&op.symmetric)?;
    let k = op.basis.len();
    let eigenvectors =
        Matrix::from_fn(k, k, |i, j| eig.vectors[(i, j)] / op.measure[i].sqrt());
    Ok(SpectralData {
        eigenvalues: eig.values,
        eigenvectors,
        basis: op.basis.clone(),
        measure: op.measure.clone(),
    })
}

impl SpectralData {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// `max_i ‖Aφ_i − λ_i φ_i‖_m`.
    pub fn max_residual(&self, op: &OperatorMatrix) -> f64 {
        (0..self.eigenvalues.len())
            .map(|i| {
                let phi = self.vector(i);
                let a_phi = op.weighted.matvec(&phi);
                a_phi
                    .iter()
                    .zip(&phi)
                    .zip(&self.measure)
                    .map(|((a, p), m)| (a - self.eigenvalues[i] * p).powi(2) * m)
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{i,j} |⟨φ_i, φ_j⟩_m − δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let k = self.eigenvalues.len();
        let mut worst: f64 = 0.0;
        for i in 0..k {
            for j in 0..=i {
                let dot: f64 = (0..k)
                    .map(|x| self.eigenvectors[(x, i)] * self.eigenvectors[(x, j)] * self.measure[x])
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }

    /// Indices of eigenvalues in `[a, b]`, up to [`INTERVAL_TOLERANCE`].
    pub fn indices_in(&self, a: f64, b: f64) -> Vec<usize> {
        (0..self.eigenvalues.len())
            .filter(|&i| {
                let l = self.eigenvalues[i];
                l >= a - INTERVAL_TOLERANCE && l <= b + INTERVAL_TOLERANCE
            })
            .collect()
    }
}

/// Bottom of the spectrum of the operator described by `spec`.
pub fn bottom_of_spectrum(g: &WeightedGraph, spec: OperatorSpec<'_>) -> Result<f64> {
    Ok(eigdecompose(&assemble(g, spec)?)?.min())
}

/// `‖H‖` per `choice`.
pub fn laplacian_norm(g: &WeightedGraph, choice: NormChoice) -> Result<f64> {
    match choice {
        NormChoice::Computed => symmetric_norm(&assemble(g, OperatorSpec::laplacian())?.symmetric),
        NormChoice::Surrogate => Ok(g.validate()?.operator_norm_bound),
    }
}

/// Energy form `½ Σ_{x,y} b(x,y) (f(x) − f(y))²` as a literal double sum.
pub fn energy(g: &WeightedGraph, f: &[f64]) -> f64 {
    let mut total = 0.0;
    for x in 0..g.len() {
        for &(y, b) in g.neighbors(x) {
            total += b * (f[x] - f[y]).powi(2);
        }
    }
    0.5 * total
}

/// `‖f‖²` in `ℓ²(X, m)`.
pub fn norm_sq(g: &WeightedGraph, f: &[f64]) -> f64 {
    f.iter().zip(g.measure()).map(|(v, m)| v * v * m).sum()
}

fn proper_split(g: &WeightedGraph, d_set: &VertexSet) -> Result<VertexSet> {
    if d_set.is_empty() {
        return Err(Error::EmptySet);
    }
    if d_set.is_full() {
        return Err(Error::EmptyOmega);
    }
    debug_assert_eq!(d_set.universe(), g.len());
    Ok(d_set.complement())
}

pub const FINITE_LOWER: &str = "dirichlet.finite_volume_lower";
pub const FINITE_UPPER: &str = "dirichlet.finite_volume_upper";

/// `λ_Ω ≥ 1/(Inr(Ω)·vol(Ω))` and `λ_Ω ≤ ‖H‖·(vol X − vol Ω)/vol X`.
pub fn dirichlet_bounds_finite(
    g: &WeightedGraph,
    md: &MetricData,
    omega: &VertexSet,
    norm: NormChoice,
) -> Result<[BoundReport; 2]> {
    let inr = md.inradius(omega)?;
    let lambda = bottom_of_spectrum(g, OperatorSpec::dirichlet(omega))?;
    let vol_omega = g.volume(omega);
    let vol_x = g.total_volume();
    let h_norm = laplacian_norm(g, norm)?;
    Ok([
        BoundReport::check(FINITE_LOWER, lambda, Relation::AtLeast, 1.0 / (inr * vol_omega)),
        BoundReport::check(
            FINITE_UPPER,
            lambda,
            Relation::AtMost,
            h_norm * (vol_x - vol_omega) / vol_x,
        ),
    ])
}

pub const VORONOI_LOWER: &str = "dirichlet.inradius_volume_lower";
pub const VORONOI_LOWER_OMEGA: &str = "dirichlet.inradius_volume_lower_within_omega";
pub const VORONOI_LOWER_CENTERS: &str = "dirichlet.inradius_volume_lower_center_balls";

/// `λ_Ω ≥ 1/(R·vol[R])` with `R = Inr(Ω)`, plus the variants with
/// `vol_Ω[R] = sup_x m(B_R(x) ∩ Ω)` and with `sup_{p∈D} m(B_R(p))`.
pub fn dirichlet_lower_bound(
    g: &WeightedGraph,
    md: &MetricData,
    omega: &VertexSet,
) -> Result<Vec<BoundReport>> {
    let r = md.inradius(omega)?;
    let lambda = bottom_of_spectrum(g, OperatorSpec::dirichlet(omega))?;
    Ok(inradius_volume_rows(g, md, omega, r, lambda))
}

pub(crate) fn inradius_volume_rows(
    g: &WeightedGraph,
    md: &MetricData,
    omega: &VertexSet,
    r: f64,
    lambda: f64,
) -> Vec<BoundReport> {
    let centers = omega.complement();
    vec![
        BoundReport::check(VORONOI_LOWER, lambda, Relation::AtLeast, 1.0 / (r * md.vol_bracket(g, r))),
        BoundReport::check(
            VORONOI_LOWER_OMEGA,
            lambda,
            Relation::AtLeast,
            1.0 / (r * md.vol_bracket_within(g, r, omega)),
        ),
        BoundReport::check(
            VORONOI_LOWER_CENTERS,
            lambda,
            Relation::AtLeast,
            1.0 / (r * md.vol_bracket_centers(g, r, &centers)),
        ),
    ]
}

/// `Σ_p λ_{V_p∖{p}} ‖f·1_{V_p}‖² ≤ 𝓔(f, f)` for `f` vanishing on the centres.
pub fn voronoi_energy_split(
    g: &WeightedGraph,
    vd: &VoronoiDecomposition,
    f: &[f64],
) -> Result<BoundReport> {
    let mut lower = 0.0;
    for p in vd.centers.iter() {
        let cell: Vec<usize> = vd.cell(p).into_iter().filter(|&x| x != p).collect();
        if cell.is_empty() {
            continue;
        }
        let mass: f64 = cell.iter().map(|&x| f[x] * f[x] * g.m(x)).sum();
        let inner = VertexSet::new(g.len(), cell);
        // Energy of the cell alone: the form of the induced subgraph on V_p.
        let lambda = cell_dirichlet_bottom(g, vd, p, &inner)?;
        lower += lambda * mass;
    }
    Ok(BoundReport::check("dirichlet.voronoi_energy_split", energy(g, f), Relation::AtLeast, lower))
}

/// Bottom of the Dirichlet form `½ Σ_{x,y ∈ V_p} b(x,y)(f(x) − f(y))²` on
/// functions supported in `V_p ∖ {p}`.
fn cell_dirichlet_bottom(
    g: &WeightedGraph,
    vd: &VoronoiDecomposition,
    p: usize,
    inner: &VertexSet,
) -> Result<f64> {
    let members = inner.members();
    let k = members.len();
    let mut s = Matrix::zeros(k, k);
    for (i, &x) in members.iter().enumerate() {
        let mut diag = 0.0;
        for &(y, b) in g.neighbors(x) {
            if vd.cell_of[y] != p {
                continue;
            }
            diag += b;
            if let Some(j) = inner.position(y) {
                s[(i, j)] = -b / (g.m(x) * g.m(y)).sqrt();
            }
        }
        s[(i, i)] = diag / g.m(x);
    }
    Ok(symmetric_eigen(&s)?.values[0])
}

/// Operator norm of `(H_t + 1)⁻¹ − (H_Ω + 1)⁻¹ ⊕ 0`.
pub fn resolvent_difference_norm(g: &WeightedGraph, d_set: &VertexSet, t: f64) -> Result<f64> {
    let omega = proper_split(g, d_set)?;
    let mut coupled = assemble(g, OperatorSpec::coupled(d_set, t))?.symmetric;
    coupled.add_diagonal(&vec![1.0; g.len()]);
    let full_inv = spd_inverse(&coupled)?;
    let mut block = assemble(g, OperatorSpec::dirichlet(&omega))?.symmetric;
    block.add_diagonal(&vec![1.0; omega.len()]);
    let block_inv = spd_inverse(&block)?;
    let mut padded = Matrix::zeros(g.len(), g.len());
    for (i, &x) in omega.members().iter().enumerate() {
        for (j, &y) in omega.members().iter().enumerate() {
            padded[(x, y)] = block_inv[(i, j)];
        }
    }
    symmetric_norm(&full_inv.sub(&padded))
}

/// `2‖H + 1‖²`, the smallest coupling for which the resolvent estimate applies.
pub fn coupling_threshold(g: &WeightedGraph, norm: NormChoice) -> Result<f64> {
    let h1 = laplacian_norm(g, norm)? + 1.0;
    Ok(2.0 * h1 * h1)
}

pub const RESOLVENT_GAP: &str = "coupling.resolvent_gap";

/// `‖(H_t+1)⁻¹ − P*(PHP*+1)⁻¹P‖ ≤ 4‖H+1‖²/(1+t)`; rows below the threshold
/// `t ≥ 2‖H+1‖²` are computed but flagged as out of regime.
pub fn resolvent_gap(
    g: &WeightedGraph,
    d_set: &VertexSet,
    t: f64,
    norm: NormChoice,
) -> Result<BoundReport> {
    let h1 = laplacian_norm(g, norm)? + 1.0;
    let gap = resolvent_difference_norm(g, d_set, t)?;
    let bound = 4.0 * h1 * h1 / (1.0 + t);
    let threshold = 2.0 * h1 * h1;
    let name = format!("{RESOLVENT_GAP}[t={t}]");
    if t < threshold {
        return Ok(BoundReport::vacuous(
            name,
            Some(gap),
            Relation::AtMost,
            Some(bound),
            format!("out of regime: t < {threshold}"),
        ));
    }
    Ok(BoundReport::check(name, gap, Relation::AtMost, bound))
}

/// For every `t`: `λ_∞ ≥ λ_t`; for `t ≥ 2‖H+1‖²` also
/// `λ_t ≥ λ_∞ − 4‖H+1‖²(λ_∞+1)²/(t+1) ≥ λ_∞ − 4‖H+1‖⁴/(t+1)`; and `λ_t`
/// nondecreasing along the sorted list.
pub fn coupling_rate(
    g: &WeightedGraph,
    d_set: &VertexSet,
    t_list: &[f64],
    norm: NormChoice,
) -> Result<Vec<BoundReport>> {
    let omega = proper_split(g, d_set)?;
    let lambda_inf = bottom_of_spectrum(g, OperatorSpec::dirichlet(&omega))?;
    let h1 = laplacian_norm(g, norm)? + 1.0;
    let threshold = 2.0 * h1 * h1;
    let mut ts: Vec<f64> = t_list.to_vec();
    ts.sort_by(f64::total_cmp);
    let mut rows = Vec::new();
    let mut previous: Option<f64> = None;
    let mut min_increment = f64::INFINITY;
    for &t in &ts {
        let lambda_t = bottom_of_spectrum(g, OperatorSpec::coupled(d_set, t))?;
        if let Some(p) = previous {
            min_increment = min_increment.min(lambda_t - p);
        }
        previous = Some(lambda_t);
        rows.push(BoundReport::check(
            format!("coupling.limit_dominates[t={t}]"),
            lambda_inf,
            Relation::AtLeast,
            lambda_t,
        ));
        let sharp = lambda_inf - 4.0 * h1 * h1 * (lambda_inf + 1.0).powi(2) / (t + 1.0);
        let coarse = lambda_inf - 4.0 * h1.powi(4) / (t + 1.0);
        let sharp_name = format!("coupling.rate_sharp[t={t}]");
        let coarse_name = format!("coupling.rate[t={t}]");
        if t >= threshold {
            rows.push(BoundReport::check(sharp_name, lambda_t, Relation::AtLeast, sharp));
            rows.push(BoundReport::check(coarse_name, lambda_t, Relation::AtLeast, coarse));
        } else {
            let why = format!("out of regime: t < {threshold}");
            rows.push(BoundReport::vacuous(sharp_name, Some(lambda_t), Relation::AtLeast, Some(sharp), &why));
            rows.push(BoundReport::vacuous(coarse_name, Some(lambda_t), Relation::AtLeast, Some(coarse), why));
        }
    }
    if ts.len() > 1 {
        rows.push(BoundReport::check("coupling.monotone_in_t", min_increment, Relation::AtLeast, 0.0));
    }
    Ok(rows)
}

/// For `λ₁ ≥ λ₂` (bottoms of `H₁`, `H₂`) and `δ = ‖(H₁+1)⁻¹ − (H₂+1)⁻¹‖`:
/// returns `((λ₁+1)²·δ, ‖H₁+1‖²·δ)`, both upper bounds for `λ₁ − λ₂`.
pub fn eigenvalue_perturbation_bounds(lambda1: f64, h1_norm: f64, resolvent_diff: f64) -> (f64, f64) {
    ((lambda1 + 1.0).powi(2) * resolvent_diff, (h1_norm + 1.0).powi(2) * resolvent_diff)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    /// `P[x][y] = Σ_i φ_i(x) φ_i(y) m(y)`, acting on functions.
    pub matrix: Matrix,
    pub rank: usize,
    /// No eigenvalue in the interval; `P = 0`.
    pub empty: bool,
}

/// Spectral projection onto eigenvalues in the closed interval `[a, b]`.
pub fn spectral_projection(sd: &SpectralData, a: f64, b: f64) -> Projection {
    assert!(a <= b, "interval endpoints out of order");
    let k = sd.eigenvalues.len();
    let chosen = sd.indices_in(a, b);
    let matrix = Matrix::from_fn(k, k, |x, y| {
        chosen
            .iter()
            .map(|&i| sd.eigenvectors[(x, i)] * sd.eigenvectors[(y, i)] * sd.measure[y])
            .sum()
    });
    Projection { matrix, rank: chosen.len(), empty: chosen.is_empty() }
}

/// `(λ_Ω − max I)² / (16‖H+1‖²(λ_Ω+1)²)`.
pub fn kappa_theorem(lambda_omega: f64, max_i: f64, h_norm: f64) -> Result<f64> {
    if max_i >= lambda_omega {
        return Err(Error::PreconditionInterval { max_i, lambda_omega });
    }
    let h1 = h_norm + 1.0;
    Ok((lambda_omega - max_i).powi(2) / (16.0 * h1 * h1 * (lambda_omega + 1.0).powi(2)))
}

/// `(1/(R·vol[R]) − max I)² / (16‖H+1‖⁴)`, given the geometric bound `1/(R·vol[R])`.
pub fn kappa_corollary(geometric_bound: f64, max_i: f64, h_norm: f64) -> Result<f64> {
    if max_i >= geometric_bound {
        return Err(Error::PreconditionInterval { max_i, lambda_omega: geometric_bound });
    }
    Ok((geometric_bound - max_i).powi(2) / (16.0 * (h_norm + 1.0).powi(4)))
}

/// Coupling grid for the shift estimate: 16 geometric points from
/// `2‖H+1‖²` to `10⁴·‖H+1‖²`, plus `t_max` when given.
pub fn shift_grid(h_norm: f64, t_max: Option<f64>) -> Vec<f64> {
    let h1sq = (h_norm + 1.0).powi(2);
    let (lo, hi) = (2.0 * h1sq, 1e4 * h1sq);
    let mut ts: Vec<f64> = (0..16).map(|i| lo * (hi / lo).powf(i as f64 / 15.0)).collect();
    ts.extend(t_max);
    ts
}

/// Smallest eigenvalue of `G = Φ* M 1_D Φ` over the eigenvectors of `H` in `I`.
pub fn compressed_mass_bottom(sd: &SpectralData, d_set: &VertexSet, a: f64, b: f64) -> Result<Option<f64>> {
    let chosen = sd.indices_in(a, b);
    if chosen.is_empty() {
        return Ok(None);
    }
    let k = chosen.len();
    let gram = Matrix::from_fn(k, k, |i, j| {
        d_set
            .iter()
            .map(|x| {
                let pos = sd.basis.iter().position(|&v| v == x).expect("full basis");
                sd.eigenvectors[(pos, chosen[i])] * sd.eigenvectors[(pos, chosen[j])] * sd.measure[pos]
            })
            .sum()
    });
    Ok(Some(symmetric_eigen(&gram)?.values[0]))
}

pub const UC_THEOREM: &str = "uncertainty.theorem";
pub const UC_COROLLARY: &str = "uncertainty.corollary";
pub const UC_ORDER: &str = "uncertainty.theorem_vs_corollary";
pub const UC_SHIFT: &str = "uncertainty.sampled_shift";
pub const UC_SHIFT_VS_THEOREM: &str = "uncertainty.sampled_shift_vs_theorem";

/// Uncertainty constants for `P_I(H) 1_D P_I(H) ≥ κ P_I(H)` against the true
/// optimal `κ = λ_min(Φ* M 1_D Φ)`.
pub fn uncertainty_constant(
    g: &WeightedGraph,
    md: &MetricData,
    d_set: &VertexSet,
    interval: (f64, f64),
    norm: NormChoice,
) -> Result<Vec<BoundReport>> {
    let (a, b) = interval;
    assert!(a <= b, "interval endpoints out of order");
    let omega = proper_split(g, d_set)?;
    let full = eigdecompose(&assemble(g, OperatorSpec::laplacian())?)?;
    let h_norm = match norm {
        NormChoice::Computed => full.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        NormChoice::Surrogate => g.validate()?.operator_norm_bound,
    };
    let lambda_omega = bottom_of_spectrum(g, OperatorSpec::dirichlet(&omega))?;
    let r = md.inradius(&omega)?;
    let geometric = 1.0 / (r * md.vol_bracket(g, r));
    let truth = compressed_mass_bottom(&full, d_set, a, b)?;

    let Some(truth) = truth else {
        let why = "no spectrum in the interval; the inequality is vacuous";
        return Ok([UC_THEOREM, UC_COROLLARY, UC_ORDER, UC_SHIFT, UC_SHIFT_VS_THEOREM]
            .into_iter()
            .map(|name| BoundReport::vacuous(name, None, Relation::AtLeast, None, why))
            .collect());
    };

    let mut rows = Vec::new();
    let thm = kappa_theorem(lambda_omega, b, h_norm).ok();
    let cor = kappa_corollary(geometric, b, h_norm).ok();
    match thm {
        Some(k) => rows.push(BoundReport::check(UC_THEOREM, truth, Relation::AtLeast, k)),
        None => rows.push(BoundReport::vacuous(
            UC_THEOREM,
            Some(truth),
            Relation::AtLeast,
            None,
            format!("max I = {b} is not below lambda_Omega = {lambda_omega}"),
        )),
    }
    match cor {
        Some(k) => rows.push(BoundReport::check(UC_COROLLARY, truth, Relation::AtLeast, k)),
        None => rows.push(BoundReport::vacuous(
            UC_COROLLARY,
            Some(truth),
            Relation::AtLeast,
            None,
            format!("max I = {b} is not below 1/(R vol[R]) = {geometric}"),
        )),
    }
    match (thm, cor) {
        (Some(kt), Some(kc)) => rows.push(BoundReport::check(UC_ORDER, kt, Relation::AtLeast, kc)),
        _ => rows.push(BoundReport::vacuous(
            UC_ORDER,
            thm,
            Relation::AtLeast,
            cor,
            "needs both forms",
        )),
    }

    let t_max = thm.map(|_| {
        8.0 * (h_norm + 1.0).powi(2) * (lambda_omega + 1.0).powi(2) / (lambda_omega - b)
    });
    let mut best = f64::NEG_INFINITY;
    let mut best_t = f64::NAN;
    for t in shift_grid(h_norm, t_max) {
        let lambda_t = bottom_of_spectrum(g, OperatorSpec::coupled(d_set, t))?;
        let k = (lambda_t - b) / t;
        if k > best {
            best = k;
            best_t = t;
        }
    }
    rows.push(
        BoundReport::check(UC_SHIFT, truth, Relation::AtLeast, best)
            .with_note(format!("best t = {best_t}")),
    );
    match thm {
        Some(k) => rows.push(BoundReport::check(UC_SHIFT_VS_THEOREM, best, Relation::AtLeast, k)),
        None => rows.push(BoundReport::vacuous(
            UC_SHIFT_VS_THEOREM,
            Some(best),
            Relation::AtLeast,
            None,
            "theorem form not applicable",
        )),
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::metric::compute_metric;

    fn k2() -> WeightedGraph {
        generators::complete(2).unwrap()
    }

    #[test]
    fn k2_full_and_dirichlet() {
        let g = k2();
        let h = assemble(&g, OperatorSpec::laplacian()).unwrap();
        assert_eq!(h.weighted, Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]));
        let sd = eigdecompose(&h).unwrap();
        assert!(sd.eigenvalues[0].abs() < 1e-15 && (sd.eigenvalues[1] - 2.0).abs() < 1e-15);
        let omega = VertexSet::new(2, [0]);
        let h_omega = assemble(&g, OperatorSpec::dirichlet(&omega)).unwrap();
        assert_eq!(h_omega.weighted, Matrix::from_rows(&[vec![1.0]]));
    }

    #[test]
    fn coupling_adds_to_centers_only() {
        let g = k2();
        let d = VertexSet::new(2, [1]);
        let op = assemble(&g, OperatorSpec::coupled(&d, 18.0)).unwrap();
        assert_eq!(op.weighted, Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 19.0]]));
    }

    #[test]
    fn empty_omega_rejected() {
        let g = k2();
        assert!(matches!(
            assemble(&g, OperatorSpec::dirichlet(&VertexSet::new(2, []))),
            Err(Error::EmptyOmega)
        ));
        let md = compute_metric(&g).unwrap();
        assert!(resolvent_gap(&g, &VertexSet::full(2), 20.0, NormChoice::Computed).is_err());
        assert!(dirichlet_lower_bound(&g, &md, &VertexSet::full(2)).is_err());
    }

    #[test]
    fn path_spectrum_closed_form() {
        for n in [2usize, 5, 17, 40] {
            let g = generators::path(n).unwrap();
            let sd = eigdecompose(&assemble(&g, OperatorSpec::laplacian()).unwrap()).unwrap();
            let mut want: Vec<f64> = (0..n)
                .map(|k| 2.0 * (1.0 - (k as f64 * std::f64::consts::PI / n as f64).cos()))
                .collect();
            want.sort_by(f64::total_cmp);
            for (got, want) in sd.eigenvalues.iter().zip(&want) {
                assert!((got - want).abs() < 1e-9, "n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn weighted_eigenvectors_are_m_orthonormal() {
        let g = generators::random(&generators::RandomGraphSpec::weighted(30, 5)).unwrap();
        let op = assemble(&g, OperatorSpec::laplacian()).unwrap();
        let sd = eigdecompose(&op).unwrap();
        assert!(sd.orthonormality_defect() < 1e-10);
        let scale = sd.max() + 1.0;
        assert!(sd.max_residual(&op) < 1e-9 * scale);
    }

    #[test]
    fn k2_finite_volume_bounds() {
        let g = k2();
        let md = compute_metric(&g).unwrap();
        let [lo, hi] =
            dirichlet_bounds_finite(&g, &md, &VertexSet::new(2, [0]), NormChoice::Computed).unwrap();
        // Inr = 1 and vol(Ω) = m(v1) = 1: the lower bound is attained.
        assert_eq!(lo.bound_value, Some(1.0));
        assert_eq!(lo.true_value, Some(1.0));
        assert!(lo.pass);
        assert!(hi.pass);
        assert!((hi.bound_value.unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn path_finite_volume_lower() {
        let g = generators::path(3).unwrap();
        let md = compute_metric(&g).unwrap();
        let omega = VertexSet::new(3, [0, 1]);
        let [lo, _] = dirichlet_bounds_finite(&g, &md, &omega, NormChoice::Computed).unwrap();
        assert_eq!(lo.bound_value, Some(0.25));
        // H_Ω = [[1,-1],[-1,2]]: bottom eigenvalue (3 - √5)/2.
        let want = (3.0 - 5f64.sqrt()) / 2.0;
        assert!((lo.true_value.unwrap() - want).abs() < 1e-14);
        assert!(lo.pass);
    }

    #[test]
    fn k2_inradius_volume_bound() {
        let g = k2();
        let md = compute_metric(&g).unwrap();
        let rows = dirichlet_lower_bound(&g, &md, &VertexSet::new(2, [0])).unwrap();
        assert_eq!(rows[0].bound_value, Some(0.5));
        assert!(rows.iter().all(|r| r.pass));
        assert!(rows[1].bound_value >= rows[0].bound_value);
    }

    #[test]
    fn k2_resolvent_gap() {
        let g = k2();
        let d = VertexSet::new(2, [1]);
        assert!((coupling_threshold(&g, NormChoice::Computed).unwrap() - 18.0).abs() < 1e-12);
        // Direct 2×2 inversion: (H_18 + 1) = [[2,-1],[-1,20]], inverse /39;
        // Ω-block (1 + 1)⁻¹ = 1/2.
        let diff = Matrix::from_rows(&[
            vec![20.0 / 39.0 - 0.5, 1.0 / 39.0],
            vec![1.0 / 39.0, 2.0 / 39.0],
        ]);
        let want = symmetric_norm(&diff).unwrap();
        let got = resolvent_difference_norm(&g, &d, 18.0).unwrap();
        assert!((got - want).abs() < 1e-14);
        let row = resolvent_gap(&g, &d, 18.0, NormChoice::Computed).unwrap();
        assert!(row.holds());
        assert!((row.bound_value.unwrap() - 36.0 / 19.0).abs() < 1e-12);
        let low = resolvent_gap(&g, &d, 1.0, NormChoice::Computed).unwrap();
        assert!(low.vacuous);
    }

    #[test]
    fn k2_coupling_closed_form() {
        let g = k2();
        let d = VertexSet::new(2, [1]);
        for t in [0.0, 1.0, 18.0, 100.0] {
            let got = bottom_of_spectrum(&g, OperatorSpec::coupled(&d, t)).unwrap();
            let want = (2.0 + t) / 2.0 - (t * t + 4.0).sqrt() / 2.0;
            assert!((got - want).abs() < 1e-12, "t={t}");
        }
        let rows = coupling_rate(&g, &d, &[0.0, 1.0, 18.0, 50.0, 500.0], NormChoice::Computed)
            .unwrap();
        assert!(rows.iter().all(|r| r.pass));
        assert!(rows.iter().filter(|r| r.holds()).count() > 5 + 3 * 2);
    }

    #[test]
    fn projections() {
        let g = k2();
        let sd = eigdecompose(&assemble(&g, OperatorSpec::laplacian()).unwrap()).unwrap();
        let all = spectral_projection(&sd, -1.0, 3.0);
        assert!(all.matrix.sub(&Matrix::identity(2)).max_abs() < 1e-14);
        let none = spectral_projection(&sd, -2.0, -1.0);
        assert!(none.empty && none.matrix.max_abs() == 0.0);
        let low = spectral_projection(&sd, -0.1, 0.1);
        assert_eq!(low.rank, 1);
        let half = Matrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert!(low.matrix.sub(&half).max_abs() < 1e-14);
    }

    #[test]
    fn k2_uncertainty_hand_case() {
        let g = k2();
        let md = compute_metric(&g).unwrap();
        let d = VertexSet::new(2, [1]);
        let rows = uncertainty_constant(&g, &md, &d, (0.0, 0.25), NormChoice::Computed).unwrap();
        let thm = &rows[0];
        assert_eq!(thm.name, UC_THEOREM);
        assert!((thm.bound_value.unwrap() - 0.5625 / 576.0).abs() < 1e-15);
        assert!((thm.true_value.unwrap() - 0.5).abs() < 1e-14);
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn uncertainty_empty_interval_is_vacuous() {
        let g = k2();
        let md = compute_metric(&g).unwrap();
        let d = VertexSet::new(2, [1]);
        let rows = uncertainty_constant(&g, &md, &d, (0.5, 0.6), NormChoice::Computed).unwrap();
        assert!(rows.iter().all(|r| r.vacuous));
    }

    #[test]
    fn kappa_preconditions() {
        assert!(matches!(kappa_theorem(1.0, 1.0, 2.0), Err(Error::PreconditionInterval { .. })));
        assert!(kappa_corollary(0.5, 0.6, 2.0).is_err());
        assert_eq!(kappa_theorem(1.0, 0.25, 2.0).unwrap(), 0.5625 / 576.0);
    }

    #[test]
    fn surrogate_norm_only_loosens() {
        let g = generators::path(6).unwrap();
        let md = compute_metric(&g).unwrap();
        let omega = VertexSet::new(6, [0, 1, 2, 4]);
        let [_, exact] = dirichlet_bounds_finite(&g, &md, &omega, NormChoice::Computed).unwrap();
        let [_, loose] = dirichlet_bounds_finite(&g, &md, &omega, NormChoice::Surrogate).unwrap();
        assert!(loose.bound_value.unwrap() >= exact.bound_value.unwrap());
        assert!(loose.pass && exact.pass);
    }
}
