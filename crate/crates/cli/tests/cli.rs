use std::process::{Command, Output};

use serde_json::Value;

fn qbarnes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbarnes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON error payload")
}

#[test]
fn hbarnes_zero_is_one() {
    let out = qbarnes(&["compute", "hbarnes", "--n", "0", "--q", "2", "--u", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "1");
}

#[test]
fn hbarnes_first_number() {
    let out = qbarnes(&["compute", "hbarnes", "--n", "1", "--r", "1", "--a", "1", "--q", "2", "--u", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"], "-3/5");
    assert_eq!(v["inputs"]["q"], "2");
    assert_eq!(v["inputs"]["u"], "3");
}

#[test]
fn mu_of_a_cell() {
    let out = qbarnes(&["compute", "mu", "--p", "3", "--level-N", "1", "--x", "1", "--u", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "3/13");
}

#[test]
fn list_valued_kinds() {
    let out = qbarnes(&["compute", "carlitz", "--k", "3", "--u", "1/3", "--q", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["values"].as_array().unwrap().len(), 4);

    let out = qbarnes(&["compute", "classical", "--n", "3", "--u", "-1"]);
    assert!(out.status.success());
    let values = json(&out)["values"].clone();
    assert_eq!(values[1], "-1/2");
    assert_eq!(values[3], "1/4");
}

#[test]
fn csv_output_has_header_and_row() {
    let out = qbarnes(&["compute", "hbarnes", "--n", "1", "--q", "2", "--u", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("kind,"));
    assert!(lines[1].ends_with(",-3/5"));
}

#[test]
fn exit_codes() {
    let out = qbarnes(&["compute", "hbarnes", "--n", "1", "--q", "2", "--u", "1/2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error(&out)["error"], "pole");

    let out = qbarnes(&["compute", "hbarnes", "--n", "1", "--q", "oops", "--u", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error(&out)["param"], "q");

    let out = qbarnes(&["compute", "lvalue", "--p", "3", "--k", "1", "--level-N", "6", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error(&out)["error"], "budget");
}

#[test]
fn inadmissible_u_is_a_precondition_failure() {
    let out = qbarnes(&["verify", "all", "--p", "3", "--u", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let e = error(&out);
    assert_eq!(e["error"], "AdmissibleU");
    assert_eq!(e["param"], "u");
}

#[test]
fn distribution_suite_passes_with_zero_residuals() {
    let out = qbarnes(&["verify", "distribution"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["residual"] == "0"));
}

#[test]
fn kummer_suite_reports_valuations() {
    let out = qbarnes(&["verify", "kummer", "--p", "5", "--n", "1"]);
    assert!(out.status.success());
    let report = json(&out);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["error_valuation"][0].as_i64().unwrap() >= 1);
    }
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let a = qbarnes(&["verify", "addition", "--seed", "7"]);
    let b = qbarnes(&["verify", "addition", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = qbarnes(&["verify", "addition", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn unknown_suite_is_rejected() {
    let out = qbarnes(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error(&out)["param"], "suite");
}
