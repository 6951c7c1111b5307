use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambdacoh")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn report_has_the_documented_fields() {
    let (code, r) = json(&["cohomology", "h1", "--preset", "Z", "--primes", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "cohomology h1");
    assert_eq!(r["status"], "clean");
    assert_eq!(r["universe"], serde_json::json!([2, 3]));
    assert_eq!(r["seed"], 0);
    assert_eq!(r["bounds"]["samples"], 100);
    assert_eq!(r["config"]["preset"], "Z");
    assert_eq!(r["results"]["group"]["text"], "Z^2");
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["complex", "check", "leibniz", "--preset", "RC2", "--seed", "9", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn sampling_checks_are_clean() {
    for identity in ["d-squared", "cosimplicial", "leibniz"] {
        for preset in ["Z", "RC2", "RC3"] {
            let (code, r) = json(&["complex", "check", identity, "--preset", preset, "--samples", "20"]);
            assert_eq!(code, 0, "{identity} on {preset}");
            assert_eq!(r["status"], "clean");
        }
    }
    for preset in ["Z", "RC2", "RC3"] {
        assert_eq!(run(&["ring", "verify", "--preset", preset]).status.code(), Some(0));
        assert_eq!(run(&["adams", "verify", "--preset", preset]).status.code(), Some(0));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["cohomology", "h0", "--preset", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "h0", "--primes", "4"]).status.code(), Some(2));
    assert_eq!(run(&["deform", "verify"]).status.code(), Some(2));
    assert_eq!(run(&["deform", "verify", "--deformation", "/nonexistent.json"]).status.code(), Some(2));

    let (code, r) = json(&["deform", "verify", "--preset", "RC2", "--primes", "2,3", "--deformation", &data("rc2_noncommuting.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "violation");

    let (code, r) = json(&["deform", "normalize", "--deformation", &data("z_linear.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "failure");
}

#[test]
fn deformation_files() {
    let linear = data("z_linear.json");
    assert_eq!(json(&["deform", "verify", "--deformation", &linear]).0, 0);
    assert_eq!(json(&["deform", "obstruction", "--deformation", &linear]).0, 0);
    let (code, r) = json(&["deform", "extend", "--deformation", &linear, "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "clean");

    let (zero, other) = (data("z_zero.json"), data("z_other.json"));
    assert_eq!(json(&["deform", "equiv", "--deformation", &zero, "--other", &zero]).0, 0);
    let (code, r) = json(&["deform", "equiv", "--deformation", &zero, "--other", &other]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "failure");
}

#[test]
fn text_output() {
    let out = run(&["poly", "P", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("poly P"));
    assert!(text.trim_end().ends_with("status: clean, seed 0"));
}
