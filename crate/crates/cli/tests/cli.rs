use std::process::{Command, Output};

fn qeis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeis")).args(args).output().expect("run qeis")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn local_forced_polynomial() {
    let o = qeis(&["local", "--D", "3", "--n", "2", "--p", "2", "--T", "1,0,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), r#"{"case":"inert","k":1,"Q":[1,0,1]}"#);
}

#[test]
fn local_unit_norm_and_oracle() {
    let o = qeis(&["local", "--D", "3", "--p", "5", "--T", "1,0,1,0"]);
    assert_eq!(stdout_json(&o)["Q"], serde_json::json!([1]));
    let o = qeis(&["local", "--D", "7", "--p", "2", "--T", "2,0,1,1", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["oracle"]["agree"], true);
}

#[test]
fn negative_coordinates_parse() {
    let o = qeis(&["local", "--D", "3", "--p", "3", "--T", "-1,2,3,-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    assert_eq!(qeis(&["local", "--D", "4", "--p", "2", "--T", "1,0,1,0"]).status.code(), Some(2));
    assert_eq!(qeis(&["local", "--D", "3", "--p", "4", "--T", "1,0,1,0"]).status.code(), Some(2));
    assert_eq!(qeis(&["local", "--D", "3", "--p", "2", "--T", "1,0,1"]).status.code(), Some(2));
    assert_eq!(qeis(&["coeff", "--D", "3", "--n", "3", "--T", "1,0,1,0"]).status.code(), Some(2));
    assert_eq!(qeis(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qeis(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qeis(&["expand", "--D", "3"]).status.code(), Some(1));
    assert_eq!(qeis(&["expand", "--D", "3", "--bound", "10", "--budget", "100"]).status.code(), Some(4));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qeis"))
        .args(["expand", "--D", "3", "--bound", "10"])
        .env("QEIS_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn expand_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("t.json");
    let csv = dir.path().join("t.csv");
    let j = json.to_str().unwrap();
    let c = csv.to_str().unwrap();
    assert!(qeis(&["expand", "--D", "3", "--ell", "3", "--bound", "2", "--out", j]).status.success());
    assert!(qeis(&["expand", "--D", "3", "--ell", "3", "--bound", "2", "--out", c, "--format", "csv"]).status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["D_nl"], "432");
    assert_eq!(v["C_ell"], "-32/9");
    let entry = v["entries"].as_array().unwrap().iter().find(|e| e["T"] == serde_json::json!([[1, 0], [1, 0]])).unwrap();
    assert_eq!(entry["rational"], "14256");
    assert_eq!(entry["localQ"]["2"], serde_json::json!([1, 0, 1]));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().any(|l| l == "1,0,1,0,2,2,14256"));
}

#[test]
fn expand_bound_zero_is_rank_one() {
    let v = stdout_json(&qeis(&["expand", "--D", "3", "--bound", "0"]));
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["rank"] == 1));
}

#[test]
fn coeff_and_lift() {
    let v = stdout_json(&qeis(&["coeff", "--D", "3", "--ell", "3", "--T", "1,0,1,0"]));
    assert_eq!(v["rational"], "14256");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("delta.json");
    std::fs::write(&path, r#"{"weight": 12, "ap": {"2": -24, "3": 252, "5": 4830, "7": -16744}}"#).unwrap();
    let o = qeis(&["lift", "--D", "3", "--ell", "6", "--T", "1,0,1,0", "--eigenvalues", path.to_str().unwrap(), "--p", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["exact"], "-24");
    assert_eq!(v["euler_factor"]["degree"], 8);
}

#[test]
fn verify_suites() {
    let o = qeis(&["verify", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["pass"], true);
    assert_eq!(qeis(&["verify", "--suite", "oracle", "--p", "3"]).status.code(), Some(0));
}
