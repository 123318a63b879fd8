use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn feqlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feqlab"))
        .args(args)
        .env_remove("FEQLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str], expect_code: i32) -> Value {
    let out = feqlab(args);
    assert_eq!(out.status.code(), Some(expect_code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn run_err(args: &[&str]) -> String {
    let out = feqlab(args);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    String::from_utf8(out.stderr).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn re_im(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn validate_summarizes_z4() {
    let v = run_json(&["validate", &path("z4_delta1.json")], 0);
    assert_eq!(v["order"], 4);
    assert_eq!(v["commutative"], true);
    assert_eq!(v["identity"], 0);
    assert_eq!(v["center_size"], 4);
    assert_eq!(v["involution"], serde_json::json!([0, 3, 2, 1]));
    assert_eq!(v["labels"], serde_json::json!(["0", "1", "2", "3"]));
    assert_eq!(re_im(&v["measure"]["total_weight"]), (1.0, 0.0));
}

#[test]
fn object_keys_are_sorted() {
    let out = feqlab(&["validate", &path("z4_weighted.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    // keys of one object share an indent; collect them per indent run
    let mut stack: Vec<(usize, Vec<String>)> = Vec::new();
    for line in text.lines() {
        let indent = line.len() - line.trim_start().len();
        let trimmed = line.trim_start();
        while stack.last().is_some_and(|(i, _)| *i > indent) {
            let (_, keys) = stack.pop().unwrap();
            assert!(keys.windows(2).all(|w| w[0] < w[1]), "{keys:?}");
        }
        if let Some(rest) = trimmed.strip_prefix('"') {
            if let Some(end) = rest.find("\":") {
                match stack.last_mut() {
                    Some((i, keys)) if *i == indent => keys.push(rest[..end].to_string()),
                    _ => stack.push((indent, vec![rest[..end].to_string()])),
                }
            }
        }
    }
}

#[test]
fn validation_errors_name_the_violation() {
    let err = run_err(&["validate", &path("s3_noncentral.json")]);
    assert!(err.contains("support not central"), "{err}");
    let err = run_err(&["validate", &path("malformed_table.json")]);
    assert!(err.contains("not associative") && err.contains("(0*0)*1"), "{err}");
    let err = run_err(&["chars", &path("left_zero3.json")]);
    assert!(err.contains("anti-homomorphism"), "{err}");
    let err = run_err(&["solve", "kannappan", &path("no_such_file.json")]);
    assert!(err.contains("cannot read"), "{err}");
}

#[test]
fn bad_arguments_exit_two() {
    run_err(&["solve", "cauchy", &path("z4_delta1.json")]);
    run_err(&["solve", "vanvleck", &path("z4_delta1.json"), "--tol", "0"]);
    let out = Command::new(env!("CARGO_BIN_EXE_feqlab"))
        .args(["validate", &path("z4_delta1.json")])
        .env("FEQLAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chars_counts() {
    let v = run_json(&["chars", &path("z4_delta1.json")], 0);
    assert_eq!(v["count"], 4);
    let admissible: Vec<bool> = v["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["van_vleck_admissible"].as_bool().unwrap())
        .collect();
    // only χ(x) = iˣ and its conjugate have ∫χ = −∫χ∘τ ≠ 0 at δ₁
    assert_eq!(admissible.iter().filter(|&&a| a).count(), 2);
    let v = run_json(&["chars", &path("trivial.json")], 0);
    assert_eq!(v["count"], 1);
}

#[test]
fn solve_van_vleck_matches_oracle() {
    let v = run_json(&["solve", "vanvleck", &path("z4_delta1.json"), "--oracle"], 0);
    assert_eq!(v["verdict"]["status"], "match");
    let sols = v["constructed"]["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    let values: Vec<(f64, f64)> = sols[0]["values"].as_array().unwrap().iter().map(re_im).collect();
    let expected = [0.0, 1.0, 0.0, -1.0];
    for ((re, im), e) in values.iter().zip(expected) {
        assert!((re - e).abs() < 1e-12 && im.abs() < 1e-12, "{values:?}");
    }
    assert_eq!(v["oracle"]["solutions"].as_array().unwrap().len(), 1);
    assert_eq!(v["oracle"]["solutions"][0]["provenance"], "oracle");
}

#[test]
fn solve_kannappan_three_solutions() {
    let v = run_json(&["solve", "kannappan", &path("z4_delta2.json"), "--oracle", "--seed", "3"], 0);
    assert_eq!(v["verdict"]["status"], "match");
    assert_eq!(v["constructed"]["solutions"].as_array().unwrap().len(), 3);
    assert_eq!(v["oracle"]["solutions"].as_array().unwrap().len(), 3);
    assert_eq!(v["oracle_config"]["rng_seed"], 3);
}

#[test]
fn solve_without_oracle_has_no_verdict() {
    let v = run_json(&["solve", "dalembert", &path("z4_delta1.json")], 0);
    assert!(v.get("oracle").is_none() && v.get("verdict").is_none());
    assert_eq!(v["constructed"]["solutions"].as_array().unwrap().len(), 3);
}

#[test]
fn include_zero_appends_the_zero_function() {
    let v = run_json(&["solve", "kannappan", &path("z4_delta2.json"), "--oracle", "--include-zero"], 0);
    for side in ["constructed", "oracle"] {
        let sols = v[side]["solutions"].as_array().unwrap();
        assert_eq!(sols.len(), 4);
        let last = sols.last().unwrap();
        assert!(last["values"].as_array().unwrap().iter().all(|z| re_im(z) == (0.0, 0.0)));
        assert_eq!(last["residual"].as_f64(), Some(0.0));
    }
    assert_eq!(v["verdict"]["status"], "match");
}

#[test]
fn impossible_tolerance_reports_mismatch() {
    let out = feqlab(&["solve", "kannappan", &path("z4_delta2.json"), "--oracle", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["status"], "mismatch");
    assert!(String::from_utf8_lossy(&out.stderr).contains("mismatch"));
}

#[test]
fn verify_theorems_passes_on_fixtures() {
    for name in ["z4_delta1.json", "z4_weighted.json", "s3_identity_mass.json", "trivial.json"] {
        let v = run_json(&["verify-theorems", &path(name)], 0);
        assert_eq!(v["passed"], true, "{name}");
        assert!(v["first_failure"].is_null());
    }
}

#[test]
fn empty_instance_passes_vacuously() {
    // τ = id on an abelian group with a point mass: no Van Vleck solutions
    let v = run_json(&["verify-theorems", &path("z4_identity_delta1.json")], 0);
    assert_eq!(v["suites"][0]["name"], "van_vleck");
    assert_eq!(v["suites"][0]["solutions"], 0);
}
