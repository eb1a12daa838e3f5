//! End-to-end runs of the `kgrass` binary: outputs, exit codes and
//! determinism.

use std::process::{Command, Output};

fn kgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgrass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

const EXAMPLE: [&str; 11] = ["coeff", "--n", "4", "--k", "2", "--lambda", "2", "--mu", "2,1", "--nu", "2,2"];

fn with(extra: &[&'static str]) -> Vec<&'static str> {
    EXAMPLE.iter().copied().chain(extra.iter().copied()).collect()
}

#[test]
fn coeff_text_and_routes() {
    let o = kgrass(&EXAMPLE);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-t1*t3*t4^-2 + t3*t4^-1\n");
    let rule = kgrass(&with(&["--format", "laurent-json"]));
    for route in ["recurrence", "ty"] {
        let other = kgrass(&with(&["--format", "laurent-json", "--route", route]));
        assert!(other.status.success());
        assert_eq!(other.stdout, rule.stdout, "{route}");
    }
    let v: serde_json::Value = serde_json::from_slice(&rule.stdout).unwrap();
    assert_eq!(v["n"], 4);
}

#[test]
fn coeff_unit_class() {
    let o = kgrass(&["coeff", "--lambda", "", "--mu", "1", "--nu", "1", "--n", "2", "--k", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn coeff_latex_has_one_line_per_tableau() {
    let o = kgrass(&with(&["--format", "latex"]));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[..5].iter().all(|l| l.starts_with('+') || l.starts_with('-')));
    assert!(lines[5].starts_with("= "));
}

#[test]
fn coeff_z_poly_is_json() {
    let o = kgrass(&with(&["--format", "z-poly"]));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vars"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 11);
}

#[test]
fn bad_input_exits_2() {
    let o = kgrass(&["coeff", "--n", "4", "--k", "2", "--lambda", "3", "--mu", "1", "--nu", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kgrass(&["coeff", "--n", "4", "--k", "2", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kgrass(&["coeff", "--n", "4", "--k", "2", "--lambda", "1,2", "--mu", "1", "--nu", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kgrass(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_lists_nonzero_coefficients() {
    let o = kgrass(&["table", "--n", "4", "--k", "2", "--lambda", "", "--mu", "2,1"]);
    assert_eq!(stdout(&o), "(2,1)\t1\n");
}

#[test]
fn tableaux_dump() {
    let o = kgrass(&["tableaux", "--n", "4", "--k", "2", "--lambda", "2", "--mu", "2,1", "--nu", "2,2"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = kgrass(&["tableaux", "--n", "4", "--k", "2", "--lambda", "2", "--mu", "2,1", "--nu", "2,2", "--route", "ty"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["sgn"] == 1 || v["sgn"] == -1);
    }
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    for args in [
        &["verify", "recurrence", "--n", "4", "--k", "2"][..],
        &["verify", "positivity", "--n", "5", "--k", "2"][..],
        &["verify", "jdt-inverse", "--n", "4", "--k", "2", "--samples", "200"][..],
        &["verify", "symmetry", "--n", "4", "--k", "2", "--jobs", "2"][..],
    ] {
        let a = kgrass(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stdout(&a));
        let b = kgrass(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn verify_ballot_oracle() {
    let o = kgrass(&["verify", "ballot-oracle", "--seed", "7", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["seed"], 7);
}

#[test]
fn slide_trace_text_and_json() {
    let base = ["slide-trace", "--n", "4", "--k", "2", "--lambda", "2", "--rho", "2,1", "--mu", "1,1", "--nu", "2,2"];
    let o = kgrass(&base);
    assert!(o.status.success());
    assert!(stdout(&o).contains("swap 1_1"));
    let mut j = base.to_vec();
    j.push("--json");
    let o = kgrass(&j);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(!v["stages"].as_array().unwrap().is_empty());
    }
}
