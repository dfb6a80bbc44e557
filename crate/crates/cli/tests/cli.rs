use std::process::{Command, Output};

use serde_json::Value;

fn graphbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphbound")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn row<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["rows"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap()
}

#[test]
fn k2_bounds_pass() {
    let out = graphbound(&["bounds", "--generate", "k2", "--centers", "v2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let lower = row(&v, "dirichlet.inradius_volume_lower");
    assert_eq!(lower["bound"].as_f64(), Some(0.5));
    assert_eq!(lower["true"].as_f64(), Some(1.0));
    assert_eq!(lower["pass"], true);
}

#[test]
fn path_uncertainty_rows() {
    let out = graphbound(&["uncertainty", "--generate", "path:30", "--centers", "every:3", "--interval", "0:0.01"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    for name in ["uncertainty.theorem", "uncertainty.corollary", "uncertainty.sampled_shift"] {
        let r = row(&v, name);
        assert_eq!(r["pass"], true);
        assert_eq!(r["vacuous"], false, "{name}");
        assert!(r["true"].as_f64().unwrap() >= r["bound"].as_f64().unwrap());
    }
}

#[test]
fn malformed_graph_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ \"vertices\": [ ").unwrap();
    let out = graphbound(&["validate", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed graph JSON"));
    let missing = graphbound(&["validate", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(graphbound(&["validate"]).status.code(), Some(1));
    assert_eq!(graphbound(&["bogus"]).status.code(), Some(1));
    assert_eq!(graphbound(&["bounds", "--generate", "k2"]).status.code(), Some(1));
    assert_eq!(graphbound(&["bounds", "--generate", "k2", "--centers", "zz"]).status.code(), Some(1));
    assert_eq!(graphbound(&["--help"]).status.code(), Some(0));
    assert_eq!(graphbound(&["--version"]).status.code(), Some(0));
}

#[test]
fn violation_exits_two() {
    let out = graphbound(&["validate", "--generate", "k2", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_file_round_trip_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let g = graphbound::generators::lattice_box(2, 3).unwrap();
    let gpath = dir.path().join("g.json");
    std::fs::write(&gpath, g.to_json()).unwrap();
    let out_path = dir.path().join("report.csv");
    let out = graphbound(&[
        "cheeger",
        "--graph",
        gpath.to_str().unwrap(),
        "--centers",
        "sublattice:3",
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("name,relation,true,bound,slack,pass,vacuous,note"));
    assert!(text.lines().any(|l| l.starts_with("cheeger.inequality,>=")));
}

#[test]
fn transform_with_random_potential() {
    let out = graphbound(&[
        "transform", "--generate", "randcomb:15:2", "--potential", "random:2", "--centers", "every:4",
        "--doubling-n", "6",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v["data"]["c"].as_f64().unwrap() >= 1.0);
    assert_eq!(row(&v, "ground_state.transform_identity")["pass"], true);
    assert_eq!(row(&v, "potential.doubling_lower")["pass"], true);
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["report", "--generate", "random:20", "--centers", "every:5", "--seed", "11"];
    let a = graphbound(&args);
    let b = graphbound(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(
        graphbound_cli::without_timings(&a.stdout).unwrap(),
        graphbound_cli::without_timings(&b.stdout).unwrap()
    );
}
