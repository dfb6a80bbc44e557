//! Acceptance suite: ten criteria, one PASS/FAIL line each. Exits nonzero if
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use graphbound::cheeger::{cheeger_chain, EXHAUSTIVE_CAP};
use graphbound::generators::{self, RandomGraphSpec};
use graphbound::metric::check_homogeneity;
use graphbound::potential::{ground_state, identity_mismatch, potential_dirichlet_bound, random_function, transform};
use graphbound::spectral::{
    self, assemble, bottom_of_spectrum, coupling_rate, dirichlet_bounds_finite, dirichlet_lower_bound,
    eigdecompose, resolvent_difference_norm, resolvent_gap, uncertainty_constant, NormChoice, OperatorSpec,
};
use graphbound::{build_voronoi, compute_metric, parse_centers, verify_voronoi, GeneratorSpec, VertexSet, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Instance {
    g: WeightedGraph,
    d: VertexSet,
}

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, combinatorial: bool) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let seed = rng.gen();
    let spec = if combinatorial {
        RandomGraphSpec::combinatorial(n, seed)
    } else {
        RandomGraphSpec::weighted(n, seed)
    };
    let g = generators::random(&spec).unwrap();
    let d = random_subset(rng, n);
    Instance { g, d }
}

/// Nonempty proper subset with a random inclusion rate.
fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let p = rng.gen_range(0.05..0.6);
    let mut members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if members.is_empty() {
        members.push(rng.gen_range(0..n));
    }
    if members.len() == n {
        members.remove(rng.gen_range(0..n));
    }
    VertexSet::new(n, members)
}

fn families() -> Vec<(String, WeightedGraph)> {
    [
        "k2", "path:12", "cycle:9", "complete:7", "lattice:1:15", "lattice:2:6", "lattice:3:3", "tree:5",
        "hubray:10", "comb:6", "random:40:1", "randcomb:30:2", "normalized:lattice:2:4", "normalized:random:20:3",
    ]
    .iter()
    .map(|s| (s.to_string(), GeneratorSpec::parse(s, 0).unwrap().generate().unwrap()))
    .collect()
}

fn metric_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..500 {
        let Instance { g, d } = random_instance(&mut rng, 60, false);
        let md = compute_metric(&g).map_err(|e| e.to_string())?;
        let covr = md.covering_radius(&d).unwrap();
        let inr = md.inradius(&d.complement()).unwrap();
        ensure(covr == inr, || format!("instance {i}: Covr {covr} != Inr {inr}"))?;
    }
    Ok("500 instances, exact equality".into())
}

fn geometric_comb_distance() -> Outcome {
    let g = generators::geometric_comb(6).unwrap();
    let md = compute_metric(&g).unwrap();
    let target = g.index_of("1,1").unwrap();
    let mut worst: f64 = 0.0;
    for k in 1..=6 {
        let x = g.index_of(&format!("{k},0")).unwrap();
        let want = 2.0 / 3.0 + (1.0 / 3.0) * 4f64.powi(1 - k);
        worst = worst.max(((md.dist(x, target) - want) / want).abs());
    }
    ensure(worst <= 1e-12, || format!("relative error {worst:e}"))?;
    Ok(format!("max relative error {worst:e}"))
}

fn voronoi_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut instances: Vec<(String, WeightedGraph, VertexSet)> = (0..500)
        .map(|i| {
            let Instance { g, d } = random_instance(&mut rng, 60, i % 2 == 1);
            (format!("random #{i}"), g, d)
        })
        .collect();
    for (name, g) in families() {
        for k in [1, 2, 5] {
            let d = parse_centers(&g, &format!("every:{k}")).unwrap();
            instances.push((format!("{name} every:{k}"), g.clone(), d));
        }
    }
    let count = instances.len();
    for (name, g, d) in instances {
        let md = compute_metric(&g).unwrap();
        let vd = build_voronoi(&g, &md, &d).map_err(|e| e.to_string())?;
        if let Some(bad) = verify_voronoi(&g, &md, &vd).into_iter().find(|r| !r.pass) {
            return Err(format!("{name}: {bad:?}"));
        }
    }
    Ok(format!("{count} decompositions verified"))
}

fn dirichlet_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..500 {
        let Instance { g, d } = random_instance(&mut rng, 120, i % 3 == 2);
        let md = compute_metric(&g).unwrap();
        let omega = d.complement();
        let mut rows: Vec<_> = dirichlet_bounds_finite(&g, &md, &omega, NormChoice::Computed)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        rows.push(dirichlet_lower_bound(&g, &md, &omega).map_err(|e| e.to_string())?.swap_remove(0));
        if let Some(bad) = rows.iter().find(|r| !r.holds()) {
            return Err(format!("instance {i} (n = {}): {bad:?}", g.len()));
        }
    }
    let k2 = generators::complete(2).unwrap();
    let md = compute_metric(&k2).unwrap();
    let [_, upper] =
        dirichlet_bounds_finite(&k2, &md, &VertexSet::new(2, [0]), NormChoice::Computed).unwrap();
    ensure(upper.bound_value == Some(1.0) && upper.true_value == Some(1.0), || {
        format!("K_2 tight case: bound {:?}, lambda {:?}", upper.bound_value, upper.true_value)
    })?;
    Ok("500 instances x 3 bounds; K_2 upper bound = lambda = 1 exactly".into())
}

fn coupling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let Instance { g, d } = random_instance(&mut rng, 40, i % 2 == 1);
        let threshold = spectral::coupling_threshold(&g, NormChoice::Computed).unwrap();
        let grid: Vec<f64> = (0..6).map(|k| threshold * 4f64.powi(k)).collect();
        for &t in &grid {
            let row = resolvent_gap(&g, &d, t, NormChoice::Computed).map_err(|e| e.to_string())?;
            ensure(row.holds(), || format!("instance {i}: {row:?}"))?;
        }
        let rows = coupling_rate(&g, &d, &grid, NormChoice::Computed).map_err(|e| e.to_string())?;
        if let Some(bad) = rows.iter().find(|r| !r.holds()) {
            return Err(format!("instance {i}: {bad:?}"));
        }
    }
    let k2 = generators::complete(2).unwrap();
    let d = VertexSet::new(2, [1]);
    let threshold = spectral::coupling_threshold(&k2, NormChoice::Computed).unwrap();
    let pts: Vec<(f64, f64)> = (0..=10)
        .map(|k| {
            let t = threshold * 100f64.powf(k as f64 / 10.0);
            (t.ln(), resolvent_difference_norm(&k2, &d, t).unwrap().ln())
        })
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    ensure((-1.2..=-0.8).contains(&slope), || format!("K_2 log-log slope {slope}"))?;
    Ok(format!("100 instances x 6 couplings; K_2 slope {slope:.4}"))
}

fn uncertainty() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut order_checked = 0;
    for i in 0..200 {
        let Instance { g, d } = random_instance(&mut rng, 40, i % 2 == 1);
        let md = compute_metric(&g).unwrap();
        let lambda = bottom_of_spectrum(&g, OperatorSpec::dirichlet(&d.complement())).unwrap();
        let rows = uncertainty_constant(&g, &md, &d, (0.0, 0.5 * lambda), NormChoice::Computed)
            .map_err(|e| e.to_string())?;
        let theorem = rows.iter().find(|r| r.name == spectral::UC_THEOREM).unwrap();
        ensure(theorem.holds(), || format!("instance {i}: {theorem:?}"))?;
        if let Some(bad) = rows.iter().find(|r| r.violated()) {
            return Err(format!("instance {i}: {bad:?}"));
        }
        let order = rows.iter().find(|r| r.name == spectral::UC_ORDER).unwrap();
        if !order.vacuous {
            order_checked += 1;
        }
    }
    let k2 = generators::complete(2).unwrap();
    let md = compute_metric(&k2).unwrap();
    let rows = uncertainty_constant(&k2, &md, &VertexSet::new(2, [1]), (0.0, 0.25), NormChoice::Computed).unwrap();
    let thm = &rows[0];
    let kappa = thm.bound_value.unwrap();
    ensure((kappa - 9.765625e-4).abs() < 1e-12 && thm.true_value.map(|t| (t - 0.5).abs() < 1e-12) == Some(true), || {
        format!("K_2 hand case: {thm:?}")
    })?;
    Ok(format!("200 instances ({order_checked} with the corollary form); K_2 kappa {kappa:.4e} <= 0.5"))
}

fn cheeger() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut exhaustive = 0;
    while exhaustive < 100 {
        let Instance { g, mut d } = random_instance(&mut rng, 30, true);
        while d.complement().len() > EXHAUSTIVE_CAP {
            let extra = d.complement().members()[0];
            d = VertexSet::new(g.len(), d.iter().chain([extra]));
        }
        let md = compute_metric(&g).unwrap();
        let chain = cheeger_chain(&g, &md, &d, EXHAUSTIVE_CAP).map_err(|e| e.to_string())?;
        if let Some(bad) = chain.rows.iter().find(|r| !r.holds()) {
            return Err(format!("instance {exhaustive}: {bad:?}"));
        }
        exhaustive += 1;
    }
    let g = generators::lattice_box(2, 8).unwrap();
    let md = compute_metric(&g).unwrap();
    let d = parse_centers(&g, "sublattice:4").unwrap();
    let chain = cheeger_chain(&g, &md, &d, EXHAUSTIVE_CAP).unwrap();
    ensure(chain.inradius_beats_cheeger && chain.inradius_bound > chain.cheeger_route_bound, || {
        format!("lattice comparison: {} vs {}", chain.inradius_bound, chain.cheeger_route_bound)
    })?;
    ensure(chain.rows.iter().all(|r| r.pass), || "lattice comparison rows fail".into())?;
    Ok(format!(
        "100 exhaustive chains; Z^2 box L=8, sublattice:4: {:.4e} > {:.4e}",
        chain.inradius_bound, chain.cheeger_route_bound
    ))
}

fn with_potential(g: WeightedGraph, rng: &mut ChaCha8Rng) -> WeightedGraph {
    let v = (0..g.len()).map(|_| rng.gen_range(0.0..2.0)).collect();
    g.with_potential(Some(v))
}

fn ground_state_transform() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let Instance { g, .. } = random_instance(&mut rng, 40, false);
        let g = with_potential(g, &mut rng);
        let gs = ground_state(&g).map_err(|e| e.to_string())?;
        let g_phi = transform(&g, &gs).map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let f = random_function(g.len(), &mut rng);
            worst = worst.max(identity_mismatch(&g, &g_phi, &gs, &f));
        }
    }
    ensure(worst <= 1e-8, || format!("identity mismatch {worst:e}"))?;
    let mut min_slack = f64::INFINITY;
    for i in 0..100 {
        let Instance { g, d } = random_instance(&mut rng, 30, true);
        let g = with_potential(g, &mut rng);
        let md = compute_metric(&g).unwrap();
        let gs = ground_state(&g).map_err(|e| e.to_string())?;
        let rows = potential_dirichlet_bound(&g, &md, &gs, &d, None).map_err(|e| e.to_string())?;
        if let Some(bad) = rows.iter().find(|r| !r.holds()) {
            return Err(format!("instance {i}: {bad:?}"));
        }
        min_slack = min_slack.min(rows[0].slack.unwrap());
    }
    for i in 0..20 {
        let Instance { g, d } = random_instance(&mut rng, 40, i % 2 == 0);
        let md = compute_metric(&g).unwrap();
        let gs = ground_state(&g).unwrap();
        let a = &potential_dirichlet_bound(&g, &md, &gs, &d, None).unwrap()[0];
        let b = &dirichlet_lower_bound(&g, &md, &d.complement()).unwrap()[0];
        let bits = |r: &graphbound::BoundReport| {
            (r.true_value.map(f64::to_bits), r.bound_value.map(f64::to_bits), r.slack.map(f64::to_bits), r.pass)
        };
        ensure(bits(a) == bits(b), || format!("V = 0 reduction differs on instance {i}: {a:?} vs {b:?}"))?;
    }
    Ok(format!(
        "500 (g, V, f) max mismatch {worst:.2e}; 100 potential bounds (min slack {min_slack:.3e}); 20 bitwise V = 0 reductions"
    ))
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases: Vec<WeightedGraph> = (0..200).map(|i| random_instance(&mut rng, 50, i % 2 == 1).g).collect();
    cases.extend(families().into_iter().map(|(_, g)| g));
    let count = cases.len();
    for (i, g) in cases.iter().enumerate() {
        let n = g.len();
        let op = assemble(g, OperatorSpec::laplacian()).unwrap();
        let ones = op.weighted.matvec(&vec![1.0; n]);
        let harmonic = ones.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let delta = g.validate().unwrap().delta;
        ensure(harmonic <= 1e-12 * (1.0 + delta), || format!("case {i}: |H 1| = {harmonic:e}"))?;
        let sd = eigdecompose(&op).unwrap();
        ensure(sd.max() <= 2.0 * delta * (1.0 + 1e-12), || format!("case {i}: norm {} > 2 delta", sd.max()))?;
        let md = compute_metric(g).unwrap();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure(md.dist(x, z) <= md.dist(x, y) + md.dist(y, z) + 1e-12, || {
                        format!("case {i}: triangle inequality at ({x},{y},{z})")
                    })?;
                }
            }
        }
        if let Some(bad) = check_homogeneity(g, &md).unwrap().into_iter().find(|r| !r.pass) {
            return Err(format!("case {i}: {bad:?}"));
        }
    }
    Ok(format!("{count} graphs: norm, harmonic constants, triangle inequality, homogeneity"))
}

const CLI_SUITE: &[&[&str]] = &[
    &["validate", "--generate", "lattice:2:5"],
    &["metric", "--generate", "comb:6", "--centers", "every:2"],
    &["voronoi", "--generate", "random:40", "--centers", "every:6"],
    &["spectrum", "--generate", "random:30", "--centers", "every:4", "--interval", "0:1"],
    &["bounds", "--generate", "k2", "--centers", "v2"],
    &["bounds", "--generate", "random:35", "--centers", "every:5", "--t-grid", "0:1000:5"],
    &["uncertainty", "--generate", "path:30", "--centers", "every:3", "--interval", "0:0.01"],
    &["cheeger", "--generate", "randcomb:20", "--centers", "every:3"],
    &["transform", "--generate", "random:25", "--potential", "random:2", "--centers", "every:4"],
    &["report", "--generate", "randcomb:18", "--potential", "random:1", "--centers", "every:3"],
    &["report", "--generate", "random:24", "--centers", "every:4", "--format", "csv"],
];

fn run_suite(seed: &str) -> Result<Vec<Vec<u8>>, String> {
    CLI_SUITE
        .iter()
        .map(|args| {
            let out = Command::new(env!("CARGO_BIN_EXE_graphbound"))
                .args(*args)
                .args(["--seed", seed])
                .output()
                .map_err(|e| e.to_string())?;
            if out.status.code() != Some(0) {
                return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
            }
            Ok(strip_timings(out.stdout))
        })
        .collect()
}

/// Drops the trailing `timings` member of a JSON report; CSV output has none.
fn strip_timings(mut bytes: Vec<u8>) -> Vec<u8> {
    let key = b"\"timings\"";
    if let Some(pos) = bytes.windows(key.len()).rposition(|w| w == key) {
        bytes.truncate(pos);
    }
    bytes
}

fn determinism() -> Outcome {
    let first = run_suite("42")?;
    let second = run_suite("42")?;
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        ensure(a == b, || format!("{:?} differs between runs", CLI_SUITE[i]))?;
    }
    let other = run_suite("43")?;
    let changed = first.iter().zip(&other).filter(|(a, b)| a != b).count();
    Ok(format!("{} commands byte-identical across runs; {changed} differ under another seed", first.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("covering radius equals inradius of the complement", metric_identity, Some(Duration::from_secs(30))),
        ("geometric comb distances", geometric_comb_distance, None),
        ("Voronoi axioms", voronoi_axioms, Some(Duration::from_secs(60))),
        ("finite-volume and inradius-volume Dirichlet bounds", dirichlet_bounds, None),
        ("resolvent gap and coupling rate", coupling, None),
        ("uncertainty constants", uncertainty, None),
        ("Cheeger chain", cheeger, None),
        ("ground-state transform and potential bound", ground_state_transform, None),
        ("structural invariants", structural, None),
        ("CLI determinism", determinism, None),
    ];
    let suite_start = Instant::now();
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({:.2?})", i + 1, elapsed),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{:>2}] {name}: {detail} ({:.2?})", i + 1, elapsed);
            }
        }
    }
    let total = suite_start.elapsed();
    if total > Duration::from_secs(300) {
        failures += 1;
        println!("FAIL total runtime {total:.2?} exceeds 5 min");
    }
    println!("acceptance: {} of 10 criteria passed in {total:.2?}", 10 - failures.min(10));
    if failures > 0 {
        std::process::exit(1);
    }
}
