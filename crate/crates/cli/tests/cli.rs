use kdyn_cli::{analyze, analyze_with, AnalysisReport, BoundsBlock};
use kdyn_core::orbits::PreperCaps;
use serde_json::Value;
use std::process::{Command, Output};

fn kdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdyn")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analysis_report_round_trips() {
    let report = analyze_with("z^2+t-t^2", Some("inf"), Some(PreperCaps::default())).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert!(report.preper.is_some());
}

#[test]
fn bad_reduction_at_t_is_improved() {
    let report = analyze("(t*z^2)/(1)", Some("0,inf")).unwrap();
    assert_eq!(report.bad_places, vec!["t", "inf"]);
    let at_t = report.improvements.iter().find(|i| i.place == "t").unwrap();
    assert_eq!(at_t.witness, "t*z");
    assert_eq!(at_t.conjugate, "(z^2)/(1)");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "analyze", "--map", "z^2-t^2-t-1", "--places", "inf", "--preper"];
    let a = kdyn(&args);
    let b = kdyn(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    let report: AnalysisReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.degree, 2);
}

#[test]
fn bounds_json_matches_library() {
    let out = kdyn(&["--json", "bounds", "--d", "2", "--s", "1"]);
    assert!(out.status.success());
    let block: BoundsBlock = serde_json::from_value(json_of(&out)).unwrap();
    let lib = kdyn_cli::bounds_block(2, 1, kdyn_core::bounds::Variant::Statement, false).unwrap();
    assert_eq!(block, lib);
    assert_eq!(block.c, "19845");
    assert_eq!(block.d_bound, "4881870");
}

#[test]
fn orbit_of_two_cycle_point() {
    let out = kdyn(&["--json", "classify", "--map", "z^2-t^2-t-1", "--point", "-t"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["m"], 1);
    assert_eq!(v["n"], 2);
}

#[test]
fn sunit_worked_instance() {
    let out = kdyn(&["--json", "sunit-solve", "--lambda", "t-1", "--mu", "1", "--places", "0,inf"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"(1)/(t)\""), "{text}");
    assert!(text.contains("\"-1\""), "{text}");
}

#[test]
fn parse_errors_exit_2() {
    let out = kdyn(&["--json", "analyze", "--map", "z^2+"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["position"].is_u64());

    let out = kdyn(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kdyn(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_3() {
    // Common factor z between numerator and denominator.
    let out = kdyn(&["--json", "analyze", "--map", "(z^2)/(z)"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"]["kind"], "precondition");
    let out = kdyn(&["sunit-solve", "--lambda", "t", "--mu", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn cap_errors_exit_4() {
    let out = kdyn(&[
        "--json", "sunit-solve", "--lambda", "t", "--mu", "1", "--places", "0,1,2,3,-1,-2,inf", "--box", "9",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_of(&out)["error"]["kind"], "cap");
}

#[test]
fn verify_suite_reports_summary() {
    let out = kdyn(&["--json", "--seed", "3", "verify", "--suite", "triangle", "--count", "25"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["instances"], 25);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["seed"], 3);
}
