use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thue-twist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn family_file(name: &str) -> String {
    format!("{}/../../data/families/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn form_of_plastic() {
    let o = run(&["form", "--family", &family_file("plastic"), "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "X^3-XY^2-Y^3");
    let o = run(&["form", "--family", "plastic", "--a", "-1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["a"], -1);
}

#[test]
fn solve_formats() {
    let args = ["solve", "--family", "plastic", "--a-range", "0:3", "--require-degree"];
    let json = run(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(json.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["skipped"], serde_json::json!([0]));
    assert!(v["solutions"].as_array().unwrap().iter().any(|s| s["a"] == 1 && s["x"] == "4" && s["y"] == "3"));
    let csv = stdout(&run(&[&args[..], &["--format", "csv"]].concat()));
    assert!(csv.starts_with("a,x,y,value,i0,degree_condition\n"));
    assert!(csv.contains("\n1,4,3,1,"));
    // byte-identical on a second run
    assert_eq!(run(&[&args[..], &["--format", "json"]].concat()).stdout, json.stdout);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--family", "plastic", "--x", "4", "--y", "3", "--a", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("pass value=1"));
    let bad = run(&["verify", "--family", "plastic", "--x", "0", "--y", "1", "--a", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("xy = 0"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["solve", "--family", "plastic", "--m", "0"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--family", "no-such-family"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--family", "plastic", "--a-range", "3:1"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn root_of_unity_needs_the_flag() {
    assert_eq!(run(&["invariants", "--family", "cyclotomic12"]).status.code(), Some(64));
    let o = run(&["invariants", "--family", "cyclotomic12", "--unchecked-root-of-unity", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outside_hypotheses"], true);
}

#[test]
fn demos() {
    let o = run(&["demo", "cyclotomic", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F_a = F_0 for a in {1,5,7,11}"));
    let o = run(&["demo", "corollary", "--eps", "1,-4,1", "--h", "2", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("F_a = X^4-4X^2Y^2+Y^4"));
}

#[test]
fn bounds_report() {
    let o = run(&["bounds", "--family", "plastic", "--format", "json", "--kappa-thm2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["inputs"]["regulator"].as_f64().unwrap() - 0.28119957).abs() < 1e-6);
    assert_eq!(v["kappas"]["kappa_thm2"], 2.0);
    assert_eq!(run(&["bounds", "--family", "quartic"]).status.code(), Some(64));
    assert_eq!(run(&["bounds", "--family", "quartic", "--regulator", "2.5"]).status.code(), Some(0));
}

#[test]
fn checks_pass_on_the_corpus() {
    let o = run(&["checks"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
