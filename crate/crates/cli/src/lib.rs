//! Command-line front end: loads or generates a graph, runs the requested
//! verification pipeline and renders a [`Report`].

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphbound::cheeger::{self, beta_voronoi_bound, cheeger_chain, growth_diagnostic};
use graphbound::metric::check_homogeneity;
use graphbound::potential::{
    equivalence_checks, ground_state, ground_state_transform_check, potential_dirichlet_bound,
};
use graphbound::spectral::{
    self, assemble, bottom_of_spectrum, coupling_rate, dirichlet_bounds_finite, dirichlet_lower_bound,
    eigdecompose, laplacian_norm, resolvent_gap, spectral_projection, uncertainty_constant,
};
use graphbound::{
    build_voronoi, compute_metric, parse_centers, verify_voronoi, BoundReport, GeneratorSpec, MetricData,
    NormChoice, OperatorSpec, Relation, VertexSet, WeightedGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const TOOLKIT: &str = concat!("graphbound ", env!("CARGO_PKG_VERSION"));

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] graphbound::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "graphbound", version, about = "Verify spectral and geometric bounds on weighted graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Connectivity, geometry constants and homogeneity bounds.
    Validate,
    /// Path metric, balls, covering radius and inradius.
    Metric,
    /// Voronoi decomposition around the centres and its axioms.
    Voronoi,
    /// Spectrum of the Laplacian and of its Dirichlet restriction.
    Spectrum,
    /// Dirichlet eigenvalue bounds and the large-coupling estimates.
    Bounds,
    /// Uncertainty constants for a spectral interval.
    Uncertainty,
    /// Isoperimetric constant and the Cheeger chain (combinatorial graphs).
    Cheeger,
    /// Ground state and ground-state transform for the graph's potential.
    Transform,
    /// Every applicable pipeline.
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Validate => "validate",
            Self::Metric => "metric",
            Self::Voronoi => "voronoi",
            Self::Spectrum => "spectrum",
            Self::Bounds => "bounds",
            Self::Uncertainty => "uncertainty",
            Self::Cheeger => "cheeger",
            Self::Transform => "transform",
            Self::Report => "report",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormArg {
    /// Spectral norm of the assembled Laplacian.
    #[default]
    Computed,
    /// The a-priori bound 2δ.
    Surrogate,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Graph file in JSON form.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "generate")]
    pub graph: Option<PathBuf>,
    /// Generator spec, e.g. `k2`, `path:30`, `lattice:2:8`, `random:40:7`.
    #[arg(long, global = true, value_name = "SPEC")]
    pub generate: Option<String>,
    /// Centre set: `a,b,c`, `a;b` for ids containing commas, `every:k`, `sublattice:k`.
    #[arg(long, global = true, value_name = "SPEC")]
    pub centers: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Closed spectral interval `a:b`.
    #[arg(long, global = true, value_name = "A:B")]
    pub interval: Option<String>,
    /// Coupling constants `start:stop:points`, geometric when `start > 0`.
    #[arg(long = "t-grid", global = true, value_name = "START:STOP:POINTS")]
    pub t_grid: Option<String>,
    #[arg(long, global = true, default_value_t = cheeger::EXHAUSTIVE_CAP)]
    pub exhaustive_cap: usize,
    /// Volume-doubling exponent for the potential bound variant.
    #[arg(long = "doubling-n", alias = "doubling-N", global = true, value_name = "N")]
    pub doubling_n: Option<f64>,
    /// Potential override: `const:C` or `random:MAX` (uniform in `[0, MAX)`, seeded).
    #[arg(long, global = true, value_name = "SPEC")]
    pub potential: Option<String>,
    /// Random test functions for the ground-state identity.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = NormArg::Computed)]
    pub norm: NormArg,
    #[arg(long, global = true, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    File(PathBuf),
    Generate(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: Command,
    pub source: GraphSource,
    pub centers: Option<String>,
    pub interval: Option<(f64, f64)>,
    pub t_grid: Option<(f64, f64, usize)>,
    pub exhaustive_cap: usize,
    pub doubling_n: Option<f64>,
    pub potential: Option<String>,
    pub samples: usize,
    pub norm: NormArg,
    pub format: Format,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub inject_fault: bool,
}

fn parse_interval(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--interval expects `a:b` with a <= b, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a.is_finite() && b.is_finite() && a <= b {
        Ok((a, b))
    } else {
        Err(bad())
    }
}

fn parse_t_grid(text: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Usage(format!("--t-grid expects `start:stop:points`, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let [s, e, p] = parts.as_slice() else { return Err(bad()) };
    let start: f64 = s.trim().parse().map_err(|_| bad())?;
    let stop: f64 = e.trim().parse().map_err(|_| bad())?;
    let points: usize = p.trim().parse().map_err(|_| bad())?;
    if !(start >= 0.0 && stop >= start && points >= 1 && stop.is_finite()) {
        return Err(bad());
    }
    Ok((start, stop, points))
}

/// Grid points: geometric for `start > 0`, linear otherwise.
pub fn grid_points((start, stop, points): (f64, f64, usize)) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    (0..points)
        .map(|i| {
            let s = i as f64 / (points - 1) as f64;
            if start > 0.0 {
                start * (stop / start).powf(s)
            } else {
                start + (stop - start) * s
            }
        })
        .collect()
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let g = cli.global;
        let source = match (g.graph, g.generate) {
            (Some(p), None) => GraphSource::File(p),
            (None, Some(s)) => GraphSource::Generate(s),
            _ => return Err(CliError::Usage("exactly one of --graph or --generate is required".into())),
        };
        Ok(Self {
            subcommand: cli.command,
            source,
            centers: g.centers,
            interval: g.interval.as_deref().map(parse_interval).transpose()?,
            t_grid: g.t_grid.as_deref().map(parse_t_grid).transpose()?,
            exhaustive_cap: g.exhaustive_cap,
            doubling_n: g.doubling_n,
            potential: g.potential,
            samples: g.samples,
            norm: g.norm,
            format: g.format,
            seed: g.seed,
            out: g.out,
            inject_fault: g.inject_fault,
        })
    }

    fn norm_choice(&self) -> NormChoice {
        match self.norm {
            NormArg::Computed => NormChoice::Computed,
            NormArg::Surrogate => NormChoice::Surrogate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub toolkit: String,
    pub config: RunConfig,
    pub rows: Vec<BoundReport>,
    pub data: Value,
    pub timings: Timings,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(BoundReport::violated) {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }
}

fn load_graph(cfg: &RunConfig) -> Result<WeightedGraph, CliError> {
    let g = match &cfg.source {
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            WeightedGraph::from_json(&text)?
        }
        GraphSource::Generate(spec) => GeneratorSpec::parse(spec, cfg.seed)?.generate()?,
    };
    g.validate()?;
    let Some(spec) = &cfg.potential else { return Ok(g) };
    let bad = || CliError::Usage(format!("--potential expects `const:C` or `random:MAX`, got `{spec}`"));
    let value = |t: &str| t.parse::<f64>().ok().filter(|v| v.is_finite() && *v >= 0.0).ok_or_else(bad);
    let v = if let Some(c) = spec.strip_prefix("const:") {
        vec![value(c)?; g.len()]
    } else if let Some(top) = spec.strip_prefix("random:") {
        let top = value(top)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..g.len()).map(|_| if top > 0.0 { rng.gen_range(0.0..top) } else { 0.0 }).collect()
    } else {
        return Err(bad());
    };
    Ok(g.with_potential(Some(v)))
}

struct Context {
    g: WeightedGraph,
    md: MetricData,
    centers: Option<VertexSet>,
}

impl Context {
    fn centers(&self, what: &str) -> Result<&VertexSet, CliError> {
        self.centers.as_ref().ok_or_else(|| CliError::Usage(format!("`{what}` needs --centers")))
    }

    fn proper_centers(&self, what: &str) -> Result<&VertexSet, CliError> {
        let d = self.centers(what)?;
        if d.is_full() {
            return Err(CliError::Usage(format!("`{what}` needs centres that leave a nonempty Omega")));
        }
        Ok(d)
    }

    fn ids(&self, set: impl IntoIterator<Item = usize>) -> Vec<&str> {
        set.into_iter().map(|x| self.g.id(x)).collect()
    }
}

fn validate_section(ctx: &Context, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let constants = ctx.g.validate()?;
    rows.extend(check_homogeneity(&ctx.g, &ctx.md)?);
    Ok(json!({
        "vertices": ctx.g.len(),
        "edges": ctx.g.edges().len(),
        "combinatorial": ctx.g.is_combinatorial(),
        "has_potential": ctx.g.has_potential(),
        "constants": constants,
        "total_volume": ctx.g.total_volume(),
    }))
}

fn metric_section(ctx: &Context, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let n = ctx.g.len();
    let diameter = (0..n).map(|x| ctx.md.eccentricity(x)).fold(0.0, f64::max);
    let distances: Vec<&[f64]> = (0..n).map(|x| ctx.md.row(x)).collect();
    let mut data = json!({ "ids": ctx.g.ids(), "diameter": diameter, "distances": distances });
    if let Some(d) = &ctx.centers {
        let covr = ctx.md.covering_radius(d)?;
        data["covering_radius"] = json!(covr);
        if !d.is_full() {
            let inr = ctx.md.inradius(&d.complement())?;
            data["inradius"] = json!(inr);
            rows.push(BoundReport::exact("metric.covering_radius_equals_inradius", covr, Relation::Equal, inr));
            data["vol_r"] = json!(ctx.md.vol_bracket(&ctx.g, covr));
        }
    }
    Ok(data)
}

fn voronoi_section(ctx: &Context, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let d = ctx.centers("voronoi")?;
    let vd = build_voronoi(&ctx.g, &ctx.md, d)?;
    rows.extend(verify_voronoi(&ctx.g, &ctx.md, &vd));
    let cells: Vec<Value> = d
        .iter()
        .map(|p| json!({ "center": ctx.g.id(p), "members": ctx.ids(vd.cell(p)) }))
        .collect();
    Ok(json!({ "covering_radius": ctx.md.covering_radius(d)?, "cells": cells }))
}

fn spectrum_section(ctx: &Context, cfg: &RunConfig, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let sd = eigdecompose(&assemble(&ctx.g, OperatorSpec::laplacian())?)?;
    let norm = sd.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let two_delta = ctx.g.validate()?.operator_norm_bound;
    rows.push(BoundReport::check("spectrum.norm_at_most_two_delta", norm, Relation::AtMost, two_delta));
    rows.push(BoundReport::check("spectrum.constants_are_harmonic", sd.min(), Relation::Equal, 0.0));
    let mut data = json!({ "eigenvalues": sd.eigenvalues, "norm": norm, "two_delta": two_delta });
    if let Some(d) = ctx.centers.as_ref().filter(|d| !d.is_full()) {
        let dir = eigdecompose(&assemble(&ctx.g, OperatorSpec::dirichlet(&d.complement()))?)?;
        data["dirichlet_eigenvalues"] = json!(dir.eigenvalues);
        rows.push(BoundReport::check(
            "spectrum.dirichlet_above_bottom",
            dir.min(),
            Relation::AtLeast,
            sd.min(),
        ));
    }
    if let Some((a, b)) = cfg.interval {
        let p = spectral_projection(&sd, a, b);
        data["projection_rank"] = json!(p.rank);
    }
    Ok(data)
}

fn default_grid(ctx: &Context, cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    Ok(match cfg.t_grid {
        Some(grid) => grid_points(grid),
        None => {
            let start = spectral::coupling_threshold(&ctx.g, cfg.norm_choice())?;
            grid_points((start, 100.0 * start, 8))
        }
    })
}

fn bounds_section(ctx: &Context, cfg: &RunConfig, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let d = ctx.proper_centers("bounds")?;
    let omega = d.complement();
    let norm = cfg.norm_choice();
    rows.extend(dirichlet_bounds_finite(&ctx.g, &ctx.md, &omega, norm)?);
    rows.extend(dirichlet_lower_bound(&ctx.g, &ctx.md, &omega)?);
    let grid = default_grid(ctx, cfg)?;
    for &t in &grid {
        rows.push(resolvent_gap(&ctx.g, d, t, norm)?);
    }
    rows.extend(coupling_rate(&ctx.g, d, &grid, norm)?);
    Ok(json!({
        "lambda_omega": bottom_of_spectrum(&ctx.g, OperatorSpec::dirichlet(&omega))?,
        "inradius": ctx.md.inradius(&omega)?,
        "norm": laplacian_norm(&ctx.g, norm)?,
        "coupling_threshold": spectral::coupling_threshold(&ctx.g, norm)?,
        "t_grid": grid,
    }))
}

fn uncertainty_section(ctx: &Context, cfg: &RunConfig, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let d = ctx.proper_centers("uncertainty")?;
    let lambda = bottom_of_spectrum(&ctx.g, OperatorSpec::dirichlet(&d.complement()))?;
    let interval = cfg.interval.unwrap_or((0.0, 0.5 * lambda));
    rows.extend(uncertainty_constant(&ctx.g, &ctx.md, d, interval, cfg.norm_choice())?);
    Ok(json!({ "interval": [interval.0, interval.1], "lambda_omega": lambda }))
}

fn cheeger_section(ctx: &Context, cfg: &RunConfig, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let d = ctx.proper_centers("cheeger")?;
    let chain = cheeger_chain(&ctx.g, &ctx.md, d, cfg.exhaustive_cap)?;
    rows.extend(chain.rows.iter().cloned());
    let vd = build_voronoi(&ctx.g, &ctx.md, d)?;
    let voronoi_row = beta_voronoi_bound(&ctx.g, &ctx.md, &vd, cfg.exhaustive_cap)?;
    let growth = growth_diagnostic(&ctx.g, &ctx.md, d.members()[0]);
    Ok(json!({
        "beta_omega": chain.beta.as_ref().map(|b| b.beta_omega),
        "witness": chain.beta.as_ref().map(|b| ctx.ids(b.witness_set.iter().copied())),
        "boundary_size": chain.beta.as_ref().map(|b| b.boundary_size),
        "covering_radius": chain.covering_radius,
        "vol_r": chain.vol_r,
        "max_degree": chain.max_degree,
        "inradius_bound": chain.inradius_bound,
        "cheeger_route_bound": chain.cheeger_route_bound,
        "inradius_beats_cheeger": chain.inradius_beats_cheeger,
        "voronoi_isoperimetric_bound": voronoi_row.bound_value,
        "growth": growth,
    }))
}

fn transform_section(ctx: &Context, cfg: &RunConfig, rows: &mut Vec<BoundReport>) -> Result<Value, CliError> {
    let gs = ground_state(&ctx.g)?;
    rows.push(ground_state_transform_check(&ctx.g, &gs, cfg.samples, cfg.seed)?);
    rows.extend(equivalence_checks(&ctx.g, &ctx.md, &gs, cfg.samples, cfg.seed)?);
    if let Some(d) = ctx.centers.as_ref().filter(|d| !d.is_full()) {
        rows.extend(potential_dirichlet_bound(&ctx.g, &ctx.md, &gs, d, cfg.doubling_n)?);
    }
    Ok(json!({ "lambda_v": gs.lambda_v, "c": gs.c, "phi": gs.phi }))
}

/// Runs the configured pipeline. Timing is the only nondeterministic field.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let started = Instant::now();
    let g = load_graph(cfg)?;
    let md = compute_metric(&g)?;
    let centers = cfg.centers.as_deref().map(|s| parse_centers(&g, s)).transpose()?;
    let ctx = Context { g, md, centers };
    let mut rows = Vec::new();
    let data = match cfg.subcommand {
        Command::Validate => validate_section(&ctx, &mut rows)?,
        Command::Metric => metric_section(&ctx, &mut rows)?,
        Command::Voronoi => voronoi_section(&ctx, &mut rows)?,
        Command::Spectrum => spectrum_section(&ctx, cfg, &mut rows)?,
        Command::Bounds => bounds_section(&ctx, cfg, &mut rows)?,
        Command::Uncertainty => uncertainty_section(&ctx, cfg, &mut rows)?,
        Command::Cheeger => cheeger_section(&ctx, cfg, &mut rows)?,
        Command::Transform => transform_section(&ctx, cfg, &mut rows)?,
        Command::Report => {
            let mut all = serde_json::Map::new();
            all.insert("validate".into(), validate_section(&ctx, &mut rows)?);
            all.insert("spectrum".into(), spectrum_section(&ctx, cfg, &mut rows)?);
            if ctx.centers.is_some() {
                all.insert("voronoi".into(), voronoi_section(&ctx, &mut rows)?);
            }
            if ctx.centers.as_ref().is_some_and(|d| !d.is_full()) {
                all.insert("bounds".into(), bounds_section(&ctx, cfg, &mut rows)?);
                all.insert("uncertainty".into(), uncertainty_section(&ctx, cfg, &mut rows)?);
                if ctx.g.is_combinatorial() {
                    all.insert("cheeger".into(), cheeger_section(&ctx, cfg, &mut rows)?);
                }
            }
            if ctx.g.has_potential() {
                all.insert("transform".into(), transform_section(&ctx, cfg, &mut rows)?);
            }
            Value::Object(all)
        }
    };
    if cfg.inject_fault {
        rows.push(BoundReport::check("fault_injection", 0.0, Relation::AtLeast, 1.0));
    }
    Ok(Report {
        toolkit: TOOLKIT.into(),
        config: cfg.clone(),
        rows,
        data,
        timings: Timings { total_seconds: started.elapsed().as_secs_f64() },
    })
}

/// Writes every float with 17 significant digits.
struct RoundTripFormatter(serde_json::ser::PrettyFormatter<'static>);

impl serde_json::ser::Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{}", format_real(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// `d.dddddddddddddddde±x`: 17 significant digits, exact on re-parse.
pub fn format_real(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn render(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = Vec::new();
            let fmt = RoundTripFormatter(serde_json::ser::PrettyFormatter::new());
            let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
            report.serialize(&mut ser).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Csv => render_csv(&report.rows),
    }
}

pub const CSV_HEADER: [&str; 8] = ["name", "relation", "true", "bound", "slack", "pass", "vacuous", "note"];

pub fn render_csv(rows: &[BoundReport]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    let real = |v: Option<f64>| v.map(format_real).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.name.clone(),
            r.relation.symbol().to_string(),
            real(r.true_value),
            real(r.bound_value),
            real(r.slack),
            r.pass.to_string(),
            r.vacuous.to_string(),
            r.note.clone().unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Rendered JSON with the `timings` member removed, for determinism checks.
pub fn without_timings(rendered: &[u8]) -> Result<Value, serde_json::Error> {
    let mut v: Value = serde_json::from_slice(rendered)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timings");
    }
    Ok(v)
}

/// Parses arguments, runs, writes output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| {
        let report = run(&cfg)?;
        let bytes = render(&report, cfg.format);
        match &cfg.out {
            Some(path) => std::fs::write(path, &bytes)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
        }
        Ok(report.exit_code())
    });
    match outcome {
        Ok(code) => {
            if code == EXIT_VIOLATION {
                eprintln!("graphbound: at least one bound is violated");
            }
            code
        }
        Err(e) => {
            eprintln!("graphbound: {e}");
            EXIT_USAGE
        }
    }
}
