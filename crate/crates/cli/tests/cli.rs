use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasiherm")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn csv_value(csv: &str, key: &str) -> Option<String> {
    csv.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(',')).map(str::to_string))
}

#[test]
fn k_has_ten_point_orbits_at_q3() {
    let out = run(&["orbits", "--q", "3", "--group", "K"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["orbits"].as_array().unwrap().len(), 10);
    assert_eq!(v["result"]["group_order"], 360);
    assert_eq!(v["header"]["q"], 3);
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        &["verify-quasi", "--q", "3", "--kind", "SE", "--j", "1", "--k", "1"][..],
        &["field-info", "--q", "4"],
        &["field-info", "--q", "6"],
        &["field-info", "--q", "9"],
        &["yj", "--q", "3", "--i", "2", "--j", "1"],
        &["klein", "--q", "3", "--omega", "nonsense"],
        &["srg", "--q", "5", "--exhaustive"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn max_q_raises_the_bound() {
    assert_eq!(run(&["field-info", "--q", "9", "--max-q", "9"]).status.code(), Some(0));
}

#[test]
fn failed_check_exits_1() {
    assert_eq!(run(&["yj", "--q", "3", "--i", "1", "--j", "1"]).status.code(), Some(1));
    assert_eq!(run(&["yj", "--q", "3", "--i", "1", "--j", "1", "--formulas", "corrected"]).status.code(), Some(0));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["srg", "--q", "3", "--pairs", "300", "--degree-samples", "5", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let p = &v["result"]["params"];
    assert_eq!((p["n"].as_u64(), p["k"].as_u64()), (Some(6561), Some(2240)));
    assert_eq!((p["lambda"].as_u64(), p["mu"].as_u64()), (Some(781), Some(756)));
}

#[test]
fn csv_agrees_with_json() {
    let args = ["verify-quasi", "--q", "3"];
    let v = json(&args);
    let out = run(&[&args[..], &["--format", "csv"]].concat());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("key,value\n"));
    let spectrum = v["result"]["report"]["spectrum"].as_object().unwrap();
    assert_eq!(spectrum.len(), 2);
    for (h, m) in spectrum {
        assert_eq!(csv_value(&csv, &format!("result.report.spectrum.{h}")), Some(m.to_string()));
    }
    assert_eq!(csv_value(&csv, "result.report.size"), Some(v["result"]["report"]["size"].to_string()));
    assert_eq!(csv_value(&csv, "header.xi.code"), Some("xi^1".into()));
}

#[test]
fn text_lists_checks() {
    let out = run(&["surfaces", "--q", "3", "--surface", "E:0", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result.0.size = 145"));
    assert!(text.lines().any(|l| l.starts_with("PASS |E:0|")), "{text}");
}

#[test]
fn code_weights_of_the_hermitian_surface() {
    let v = json(&["code-weights", "--q", "3", "--kind", "H"]);
    assert_eq!(v["result"]["weights"]["252"], 4320);
    assert_eq!(v["result"]["weights"]["243"], 2240);
}

#[test]
fn report_passes_with_corrected_formulas() {
    let out = run(&["report", "--q", "3", "--formulas", "corrected"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["summary"]["failed"], 0);
    let items = v["result"]["items"].as_array().unwrap();
    assert!(items.iter().any(|i| i["status"] == "N/A"));
    assert!(items.iter().all(|i| !i["item"].as_str().unwrap().is_empty()));
}

#[test]
fn thread_count_does_not_change_results() {
    let one = run(&["tables", "--q", "3", "--group", "g", "--threads", "1"]);
    let two = run(&["tables", "--q", "3", "--group", "g", "--threads", "2"]);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn sh2_is_quasi_hermitian_at_q3() {
    let out = run(&["verify-quasi", "--q", "3", "--kind", "SH2", "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["report"]["is_quasi"], true);
    assert_eq!(v["result"]["report"]["size"], 280);
}

#[test]
fn surfaces_list_checks_pairwise_intersections() {
    let v = json(&["surfaces", "--q", "3", "--list"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "S and E family members meet pairwise in O" && c["pass"] == true));
    assert_eq!(v["result"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_all_covers_every_family_at_q5() {
    let out = run(&["verify-quasi", "--q", "5", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"].as_array().unwrap().len(), 14);
}
