//! End-to-end checks of the CLI surface: output formats, JSON round-trips,
//! and exit codes.

use std::io::Write;
use std::process::{Command, Output};

use lct_core::rational;

fn lct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compute_human_readable() {
    let out = lct(&["compute", "y^2 - x^3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c0 = 5/3 (complex integrability index)"), "{text}");

    let out = lct(&["compute", "--field", "real", "--normalization", "lct", "y^2 - x^3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5/6"), "{text}");
}

#[test]
fn compute_json_round_trips() {
    let out = lct(&["compute", "--json", "--trace", "(y - x)^4"]);
    let v = stdout_json(&out);
    assert_eq!(v["c0"], "1/2");
    assert_eq!(v["field"], "complex");
    assert_eq!(v["order"], 4);
    // rationals re-parse to exact values
    let c0 = rational::parse(v["c0"].as_str().unwrap()).unwrap();
    assert_eq!(c0, rational::rat(1, 2));
    let delta = rational::parse(v["delta_inv"].as_str().unwrap()).unwrap();
    assert_eq!(delta, rational::int(4));
    // one coordinate-change term: y -> y + 1*x^1
    let terms = v["coordinate_change"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0][0], "1");
    assert_eq!(terms[0][1], 1);
    // trace length matches the engine's record count
    let f = lct_core::BivarPoly::parse("(y - x)^4").unwrap();
    let result = lct_core::compute_lct(&f, lct_core::Field::Complex).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), result.trace.len());
}

#[test]
fn polygon_json() {
    let out = lct(&["polygon", "(y-x)^4", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["t_star"], "2");
    assert_eq!(v["main_face"], "COMPACT_FACE");
    assert_eq!(v["polygon"]["vertices"], serde_json::json!([[0, 4], [4, 0]]));
}

#[test]
fn probe_json_deterministic() {
    let args = [
        "probe", "x*y", "--c", "9/5", "--samples", "5000", "--seed", "7", "--json",
    ];
    let a = stdout_json(&lct(&args));
    let b = stdout_json(&lct(&args));
    assert_eq!(a, b);
    assert_eq!(a["verdict"], "CONVERGING_TREND");
    assert_eq!(a["estimates"].as_array().unwrap().len(), 3);
}

#[test]
fn batch_and_accumulate() {
    let dir = std::env::temp_dir();
    let path = dir.join("lct_cli_batch.txt");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "# reference family").unwrap();
    for m in 3..=30 {
        writeln!(file, "y^3 - x^{m}").unwrap();
    }
    drop(file);
    let path = path.to_str().unwrap();

    let v = stdout_json(&lct(&["batch", path, "--json"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 28);
    assert_eq!(entries[0]["c0"], "4/3");

    let v = stdout_json(&lct(&["accumulate", path, "--tol", "1/20", "--min-count", "5", "--json"]));
    let candidates = v["candidates"].as_array().unwrap();
    assert!(!candidates.is_empty());
    assert_eq!(candidates[0]["nearest_c1"], "2/3");
}

#[test]
fn lattice_counts() {
    let v = stdout_json(&lct(&["lattice", "10", "--json"]));
    assert_eq!(v["count"], 66);
}

#[test]
fn exit_codes() {
    assert_eq!(lct(&["compute", "y^2 - x^3"]).status.code(), Some(0));
    // malformed expression and the zero polynomial are input errors
    assert_eq!(lct(&["compute", "y^^2"]).status.code(), Some(1));
    assert_eq!(lct(&["compute", "0"]).status.code(), Some(1));
    // unknown subcommands and flags are usage errors
    assert_eq!(lct(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lct(&["compute", "--bogus", "x*y"]).status.code(), Some(1));
    // help is not an error
    assert_eq!(lct(&["--help"]).status.code(), Some(0));
}
