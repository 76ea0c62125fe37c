//! End-to-end tests of the `gkz-umbrella` binary: exit codes, output
//! schemas, byte determinism and the error envelope on stderr.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gkz-umbrella"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn running_input() -> PathBuf {
    scratch("running.json", r#"{"A": [[0,1,1,4],[3,0,2,1]]}"#)
}

fn infinity_input() -> PathBuf {
    scratch("infinity.json", r#"{"A": [[3,1,0],[0,1,3]]}"#)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", text(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

/// Asserts the failure contract: given exit code, empty stdout, and a
/// single-line JSON envelope on stderr echoing the code and reason.
fn assert_error(out: &Output, code: i32, reason: &str) {
    assert_eq!(out.status.code(), Some(code));
    assert!(out.stdout.is_empty(), "stdout: {}", text(&out.stdout));
    let line = text(&out.stderr);
    let envelope: Value = serde_json::from_str(line.trim_end()).unwrap();
    assert_eq!(envelope["error"]["reason"], reason, "envelope: {envelope}");
    assert_eq!(envelope["error"]["exit"], code);
    assert!(envelope["error"]["detail"].is_string());
}

#[test]
fn umbrella_reports_facets_and_echoes_input() {
    let input = running_input();
    let out = run(&["umbrella", "--A", input.to_str().unwrap(), "--L", "1,1,1,2"]);
    let v = stdout_json(&out);
    assert_eq!(v["command"], "umbrella");
    assert_eq!(v["dim"], 2);
    assert_eq!(v["num_columns"], 4);
    assert_eq!(
        v["facets"],
        serde_json::json!([[1, 3], [2, 4], [3, 4]]),
        "1-based facet sets"
    );
    assert_eq!(v["input"]["A"], serde_json::json!([[0, 1, 1, 4], [3, 0, 2, 1]]));
    assert_eq!(v["input"]["L"], serde_json::json!(["1", "1", "1", "2"]));
    let faces = v["faces"].as_array().unwrap();
    assert_eq!(faces[0]["dim"], "empty");
    assert_eq!(faces[0]["members"], serde_json::json!([]));
}

#[test]
fn umbrella_output_is_byte_deterministic() {
    let input = running_input();
    let args = ["umbrella", "--A", input.to_str().unwrap(), "--L", "1,1,1,2"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn slopes_along_the_fourth_hyperplane() {
    let input = running_input();
    let out = run(&["slopes", "--A", input.to_str().unwrap(), "--v0", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["slopes"], serde_json::json!(["3/2", "1/3"]));
    assert_eq!(v["critical_s"], serde_json::json!(["2/3", "3"]));
    assert_eq!(v["filtered_slopes"], serde_json::json!(["3/2", "1/3"]));
    assert_eq!(v["conjectural"], false);
    let candidates = v["candidates"].as_array().unwrap();
    assert_eq!(candidates.len(), 3);
    assert_eq!(candidates[2]["s"], "10/3");
    assert_eq!(candidates[2]["jump"], false);
    let intervals = v["intervals"].as_array().unwrap();
    assert_eq!(intervals[0]["s_range"], serde_json::json!(["0", "2/3"]));
    assert_eq!(
        intervals.last().unwrap()["s_range"],
        serde_json::json!(["10/3", "inf"])
    );
}

#[test]
fn slopes_at_infinity_are_flagged_conjectural() {
    let input = infinity_input();
    let out = run(&["slopes", "--A", input.to_str().unwrap(), "--vinf", "1,2"]);
    let v = stdout_json(&out);
    assert_eq!(v["slopes"], serde_json::json!(["2"]));
    assert_eq!(v["critical_s"], serde_json::json!(["1/2"]));
    assert_eq!(v["conjectural"], true);
    assert_eq!(v["filtered_slopes"], serde_json::json!([]));
}

#[test]
fn cycle_json_uses_exact_strings() {
    let input = running_input();
    let out = run(&["cycle", "--A", input.to_str().unwrap(), "--L", "1,1,1,1"]);
    let v = stdout_json(&out);
    assert_eq!(v["degree"], "13");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert_eq!(
        entries[0],
        serde_json::json!({"dim": "empty", "members": [], "mu": "13"})
    );
    assert_eq!(
        entries[5],
        serde_json::json!({"dim": 1, "members": [2, 4], "mu": "1"})
    );
}

#[test]
fn cycle_csv_matches_the_golden_table() {
    let input = running_input();
    let out = run(&[
        "cycle",
        "--A",
        input.to_str().unwrap(),
        "--L",
        "1,1,1,1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        text(&out.stdout),
        "members,dim,mu\n\
         ,empty,13\n\
         1,0,12\n\
         2,0,1\n\
         4,0,13\n\
         1 4,1,12\n\
         2 4,1,1\n\
         # degree = 13\n"
    );
}

#[test]
fn gb_reports_the_toric_ideal_and_verification() {
    let input = infinity_input();
    let out = run(&["gb", "--A", input.to_str().unwrap(), "--L", "1,1,1"]);
    let v = stdout_json(&out);
    assert_eq!(v["toric_ideal"][0]["text"], "∂_2^3 - ∂_1∂_3");
    assert_eq!(v["toric_ideal"][0]["vector"], serde_json::json!(["-1", "3", "-1"]));
    assert_eq!(v["initial_forms"], serde_json::json!(["∂_2^3"]));
    assert_eq!(v["generators"][0]["l_homogeneous"], false);
    assert_eq!(v["reduced"], true);
    assert_eq!(v["verification"]["pass"], true);
    assert_eq!(v["verification"]["witness_checks"]["failed"], serde_json::json!([]));
}

#[test]
fn plot_emits_deterministic_svg_and_honors_out() {
    let input = running_input();
    let args = ["plot", "--A", input.to_str().unwrap(), "--L", "1,1,1,2"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let svg = text(&first.stdout);
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<polygon"), "shaded region missing");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let out_file = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("plot.svg");
    let via_file = bin()
        .args(args)
        .arg("--out")
        .arg(&out_file)
        .output()
        .unwrap();
    assert_eq!(via_file.status.code(), Some(0));
    assert!(via_file.stdout.is_empty());
    assert_eq!(std::fs::read(&out_file).unwrap(), first.stdout);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["umbrella", "--help"]).status.code(), Some(0));
}

#[test]
fn validation_failures_exit_two() {
    let running = running_input();
    let running = running.to_str().unwrap();

    // Missing weight vector where one is required.
    assert_error(&run(&["cycle", "--A", running]), 2, "weight-required");
    assert_error(&run(&["umbrella", "--A", running]), 2, "weight-required");

    // File problems.
    assert_error(
        &run(&["umbrella", "--A", "/nonexistent.json", "--L", "1"]),
        2,
        "io-error",
    );
    let garbage = scratch("garbage.json", "not json");
    assert_error(
        &run(&["umbrella", "--A", garbage.to_str().unwrap(), "--L", "1"]),
        2,
        "invalid-json",
    );
    let extra_key = scratch("extra.json", r#"{"A": [[1]], "B": 1}"#);
    assert_error(
        &run(&["umbrella", "--A", extra_key.to_str().unwrap(), "--L", "1"]),
        2,
        "invalid-json",
    );
    let ragged = scratch("ragged.json", r#"{"A": [[1,2],[3]]}"#);
    assert_error(
        &run(&["umbrella", "--A", ragged.to_str().unwrap(), "--L", "1,1"]),
        2,
        "bad-dimensions",
    );

    // Matrix validation.
    let unpointed = scratch("unpointed.json", r#"{"A": [[1,-1]]}"#);
    assert_error(
        &run(&["umbrella", "--A", unpointed.to_str().unwrap(), "--L", "1,1"]),
        2,
        "not-pointed",
    );
    let sublattice = scratch("sublattice.json", r#"{"A": [[2]]}"#);
    assert_error(
        &run(&["cycle", "--A", sublattice.to_str().unwrap(), "--L", "1"]),
        2,
        "lattice-not-full",
    );

    // Argument validation.
    assert_error(
        &run(&["umbrella", "--A", running, "--L", "1,1,1"]),
        2,
        "weight-count",
    );
    assert_error(
        &run(&["umbrella", "--A", running, "--L", "1,x,1,1"]),
        2,
        "bad-rational",
    );
    assert_error(&run(&["slopes", "--A", running, "--v0", "x"]), 2, "bad-index");
    assert_error(
        &run(&["slopes", "--A", running, "--v0", "0"]),
        2,
        "index-out-of-range",
    );
    assert_error(
        &run(&["slopes", "--A", running, "--v0", "9"]),
        2,
        "index-out-of-range",
    );
    assert_error(
        &run(&["slopes", "--A", running, "--v0", "4", "--vinf", "4"]),
        2,
        "overlapping-supports",
    );
    assert_error(&run(&["slopes", "--A", running]), 2, "support-required");

    // Plot restrictions.
    let cubic = scratch("cubic.json", r#"{"A": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    assert_error(
        &run(&["plot", "--A", cubic.to_str().unwrap(), "--L", "1,1,1"]),
        2,
        "plot-requires-d2",
    );
}

#[test]
fn witness_budget_exhaustion_exits_four() {
    let input = infinity_input();
    let out = bin()
        .args(["gb", "--A", input.to_str().unwrap(), "--L", "1,1,1"])
        .env("UMBRELLA_NMAX", "0")
        .output()
        .unwrap();
    assert_error(&out, 4, "budget-exceeded");
    let detail = text(&out.stderr);
    assert!(detail.contains("raise UMBRELLA_NMAX"), "{detail}");

    let bad = bin()
        .args(["gb", "--A", input.to_str().unwrap(), "--L", "1,1,1"])
        .env("UMBRELLA_NMAX", "many")
        .output()
        .unwrap();
    assert_error(&bad, 2, "bad-budget");

    // A generous budget succeeds and reports every witness decided.
    let ok = bin()
        .args(["gb", "--A", input.to_str().unwrap(), "--L", "1,1,1"])
        .env("UMBRELLA_NMAX", "500")
        .output()
        .unwrap();
    let v = stdout_json(&ok);
    assert_eq!(v["verification"]["pass"], true);
}
