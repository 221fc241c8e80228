//! End-to-end runs of the command-line interface through `cli::run`,
//! checking outputs on disk and exit codes.

use moilfp::cli::{run, EXIT_INCOMPLETE, EXIT_INPUT, EXIT_OK};
use std::fs;

const REFERENCE: &str = "instances/reference_6_3_2.moilfp";

fn args(parts: &[&str]) -> Vec<String> {
    std::iter::once("moilfp".to_string())
        .chain(parts.iter().map(|s| s.to_string()))
        .collect()
}

#[test]
fn solve_writes_trace_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.log");
    let code = run(args(&[
        "solve",
        REFERENCE,
        "--trace",
        trace.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&trace).unwrap();
    assert!(text.lines().next().unwrap().contains("action=relaxed"));
    assert!(text.contains("psi=2126/355"));
}

#[test]
fn solve_node_cap_exits_incomplete() {
    let code = run(args(&["solve", REFERENCE, "--max-nodes", "2"]));
    assert_eq!(code, EXIT_INCOMPLETE);
}

#[test]
fn missing_file_is_an_input_error() {
    let code = run(args(&["solve", "no_such_file.moilfp"]));
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn malformed_instance_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.moilfp");
    fs::write(&bad, "MOILFP 1\ndims x y z\n").unwrap();
    let code = run(args(&["solve", bad.to_str().unwrap()]));
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn oracle_cap_exits_incomplete() {
    let code = run(args(&["oracle", REFERENCE, "--cap", "1"]));
    assert_eq!(code, EXIT_INCOMPLETE);
}

#[test]
fn generate_then_bench_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let code = run(args(&[
        "generate",
        "--n",
        "3",
        "--m",
        "2",
        "--k",
        "2",
        "--seed",
        "3",
        "--count",
        "2",
        "--out-dir",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_OK);
    assert!(out.join("3_2_2_3_0.moilfp").exists());
    assert!(out.join("3_2_2_3_1.moilfp").exists());

    let table = dir.path().join("table.tsv");
    let code = run(args(&[
        "bench",
        "--dir",
        out.to_str().unwrap(),
        "--out",
        table.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&table).unwrap();
    assert!(text.starts_with("n\tm\tk\t"));
    assert!(text.lines().count() >= 2);
}

#[test]
fn selftest_passes() {
    assert_eq!(run(args(&["selftest"])), EXIT_OK);
}
