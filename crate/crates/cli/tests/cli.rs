//! End-to-end tests of the `latwork` binary: exit codes, output contracts,
//! and determinism of the rendered reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use latticework::scenario::{builtin_scenario, ExactValue, BUILTIN_NAME};

fn latwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latwork"))
        .args(args)
        .output()
        .expect("the latwork binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn shipped_scenario_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/cartwright-steger.json")
}

#[test]
fn replay_of_the_builtin_scenario_passes() {
    let output = latwork(&["replay", BUILTIN_NAME]);
    assert!(
        output.status.success(),
        "replay must exit 0: {}",
        stderr_of(&output)
    );
    let text = stdout_of(&output);
    assert!(
        text.contains("8/9"),
        "the fractional meeting appears verbatim"
    );
    assert!(
        text.contains("4/3"),
        "the final contradiction appears verbatim"
    );
    assert!(
        text.ends_with("overall: pass\n"),
        "the verdict closes the report"
    );
}

#[test]
fn replay_json_is_deterministic_and_well_formed() {
    let first = latwork(&["replay", BUILTIN_NAME, "--format", "json"]);
    let second = latwork(&["replay", BUILTIN_NAME, "--format", "json"]);
    assert!(first.status.success(), "json replay must exit 0");
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&first)).expect("report is valid JSON");
    assert_eq!(report["overall"], "pass");
    assert_eq!(report["scenario"], BUILTIN_NAME);
    let assertions = report["assertions"]
        .as_array()
        .expect("assertions is an array");
    assert_eq!(assertions.len(), 55, "every assertion is reported");
    for key in ["id", "description", "computed", "expected", "status"] {
        assert!(
            assertions[0].get(key).is_some(),
            "assertion entries carry the {key:?} field"
        );
    }
}

#[test]
fn replay_accepts_the_shipped_scenario_file_by_path() {
    let path = shipped_scenario_path();
    let output = latwork(&["replay", path.to_str().expect("path is UTF-8")]);
    assert!(
        output.status.success(),
        "replaying the shipped file must pass: {}",
        stderr_of(&output)
    );
    assert!(stdout_of(&output).ends_with("overall: pass\n"));
}

#[test]
fn replay_of_a_doctored_scenario_fails_with_exit_code_one() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut scenario = builtin_scenario();
    scenario.curves[0].expected_table.entries[0][1] = ExactValue::integer(12);
    scenario.curves[0].expected_table.entries[1][0] = ExactValue::integer(12);
    scenario.assertions.truncate(3);
    let path = dir.path().join("doctored.json");
    std::fs::write(
        &path,
        serde_json::to_string(&scenario).expect("scenario serializes"),
    )
    .expect("scenario file writes");
    let output = latwork(&["replay", path.to_str().expect("path is UTF-8")]);
    assert_eq!(output.status.code(), Some(1), "a failing replay exits 1");
    let text = stdout_of(&output);
    assert!(
        text.ends_with("overall: fail\n"),
        "the verdict reports the failure"
    );
    assert!(text.contains("fail"), "the failing row is printed");
}

#[test]
fn replay_rejects_an_unknown_target() {
    let output = latwork(&["replay", "no-such-scenario"]);
    assert_eq!(output.status.code(), Some(1), "an unknown target exits 1");
    assert!(
        stderr_of(&output).contains("no-such-scenario"),
        "the diagnostic names the target"
    );
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("report.txt");
    let output = latwork(&[
        "replay",
        BUILTIN_NAME,
        "--out",
        path.to_str().expect("path is UTF-8"),
    ]);
    assert!(output.status.success(), "replay with --out must exit 0");
    assert!(
        stdout_of(&output).is_empty(),
        "nothing goes to stdout with --out"
    );
    let written = std::fs::read_to_string(&path).expect("report file exists");
    assert!(
        written.ends_with("overall: pass\n"),
        "the file holds the report"
    );
}

#[test]
fn search_enumerates_the_two_candidate_classes() {
    let output = latwork(&["search", "--kd", "2", "--d2", "0"]);
    assert!(output.status.success(), "search must exit 0");
    let text = stdout_of(&output);
    assert!(text.contains("solutions: 2"), "exactly two classes: {text}");
    assert!(
        text.contains("(1/9, -1/9, 2/9)"),
        "first class coordinates: {text}"
    );
    assert!(
        text.contains("(-1/9, 5/9, -2/9)"),
        "second class coordinates: {text}"
    );

    let json_run = latwork(&["search", "--kd", "2", "--d2", "0", "--format", "json"]);
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&json_run)).expect("search output is valid JSON");
    assert_eq!(report["solutions"].as_array().map(Vec::len), Some(2));
    assert_eq!(report["solutions"][0]["coords"][0], "1/9");
}

#[test]
fn search_with_negative_discriminant_reports_no_solutions() {
    let output = latwork(&["search", "--kd", "2", "--d2", "1"]);
    assert!(output.status.success(), "an empty search still exits 0");
    assert!(stdout_of(&output).contains("solutions: 0"));
}

#[test]
fn quotient_setup_file_builds_the_resolved_table() {
    let dir = tempfile::tempdir().expect("temp dir");
    let scenario = builtin_scenario();
    let setup = serde_json::json!({
        "curves": scenario.curves[0],
        "quotient": scenario.quotients[0],
    });
    let path = dir.path().join("setup.json");
    std::fs::write(
        &path,
        serde_json::to_string(&setup).expect("setup serializes"),
    )
    .expect("setup file writes");
    let output = latwork(&["quotient", path.to_str().expect("path is UTF-8")]);
    assert!(
        output.status.success(),
        "quotient must exit 0: {}",
        stderr_of(&output)
    );
    let text = stdout_of(&output);
    assert!(
        text.contains("generators: 22"),
        "all generators are listed: {text}"
    );
    assert!(text.contains("R62"), "the chain curves appear");

    let json_run = latwork(&[
        "quotient",
        path.to_str().expect("path is UTF-8"),
        "--format",
        "json",
    ]);
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&json_run)).expect("quotient output is valid JSON");
    assert_eq!(report["name"], "Y");
    assert_eq!(report["generators"].as_array().map(Vec::len), Some(22));
    assert_eq!(report["gram"][0][0], "-3");
}

#[test]
fn quotient_divisibility_failure_names_the_offending_pair() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut scenario = builtin_scenario();
    scenario.curves[0].expected_table.entries[0][1] = ExactValue::integer(14);
    scenario.curves[0].expected_table.entries[1][0] = ExactValue::integer(14);
    let setup = serde_json::json!({
        "curves": scenario.curves[0],
        "quotient": scenario.quotients[0],
    });
    let path = dir.path().join("broken.json");
    std::fs::write(
        &path,
        serde_json::to_string(&setup).expect("setup serializes"),
    )
    .expect("setup file writes");
    let output = latwork(&["quotient", path.to_str().expect("path is UTF-8")]);
    assert_eq!(output.status.code(), Some(1), "a broken quotient exits 1");
    let message = stderr_of(&output);
    assert!(
        message.contains("E1'") && message.contains("E2'"),
        "the diagnostic names the pair: {message}"
    );
    assert!(
        message.contains("divisible"),
        "the diagnostic states the failure: {message}"
    );
}

#[test]
fn lefschetz_case_file_reports_the_budget() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("case.json");
    std::fs::write(&path, r#"{"trace": -2, "sign": 1}"#).expect("case file writes");
    let output = latwork(&["lefschetz", path.to_str().expect("path is UTF-8")]);
    assert!(
        output.status.success(),
        "lefschetz must exit 0: {}",
        stderr_of(&output)
    );
    let text = stdout_of(&output);
    assert!(
        text.contains("euler: 2"),
        "euler number of the fixed locus: {text}"
    );
    assert!(text.contains("total square: 6"), "total square: {text}");
    assert!(
        text.contains("canonical offset: -8"),
        "canonical offset: {text}"
    );
}

#[test]
fn hj_expands_both_chain_shapes() {
    let double = latwork(&["hj", "3", "2"]);
    assert!(double.status.success());
    assert!(stdout_of(&double).contains("chain: [-2, -2]"));

    let single = latwork(&["hj", "3", "1"]);
    assert!(single.status.success());
    let text = stdout_of(&single);
    assert!(text.contains("chain: [-3]"));
    assert!(text.contains("discrepancies: [-1/3]"));
}

#[test]
fn hj_rejects_an_invalid_singularity_type() {
    let output = latwork(&["hj", "4", "2"]);
    assert_eq!(
        output.status.code(),
        Some(1),
        "gcd(4, 2) > 1 must be rejected"
    );
    assert!(!stderr_of(&output).is_empty(), "a diagnostic is printed");
}
