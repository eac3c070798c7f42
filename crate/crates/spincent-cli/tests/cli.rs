use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_spincent")).args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap_or(-1), v)
}

#[test]
fn dims_k2() {
    let (code, v) = run(&["dims", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim_cpk"], "10");
    assert_eq!(v["gb_count"], "10");
}

#[test]
fn multiply_y5_y8() {
    let (code, v) = run(&["multiply", "--family", "odd", "--k", "2", "--lhs", "y5", "--rhs", "y8"]);
    assert_eq!(code, 0);
    assert_eq!(v["product"], "(X - 1)y8 + (X - 1)y3");
}

#[test]
fn verify_equivariance_passes() {
    let (code, v) = run(&["verify", "--suite", "equivariance", "--n", "2", "--N", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn seeded_suite_is_deterministic() {
    let args = ["verify", "--suite", "random_products", "--n", "1", "--N", "3", "--k", "2", "--seed", "11"];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(a["checks"], b["checks"]);
    assert_eq!(a["failures"], b["failures"]);
    assert_eq!(a["passed"], true);
}

#[test]
fn bad_input_gives_failure_record() {
    let (code, v) = run(&["verify", "--suite", "nope", "--n", "2", "--N", "5"]);
    assert_eq!(code, 2);
    assert_eq!(v["ok"], false);
    let (code, v) = run(&["realize", "--n", "2", "--N", "9", "--diagram", "y1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("N = 9"));
}

#[test]
fn t0_split_and_realize_export() {
    let (code, v) = run(&["t0", "--n", "2", "--N", "5", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(v["facts"].as_array().unwrap().iter().any(|f| f[0] == "dim T0" && f[1] == "60"));
    let (code, v) = run(&["realize", "--n", "1", "--N", "3", "--diagram", "y10"]);
    assert_eq!(code, 0);
    assert_eq!(v["nrows"], 2 * 9);
}
