use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsetlab"))
        .args(args)
        .env_remove("SUBSETLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn solve_reports_witness() {
    let o = run(&["solve", "--alg", "hs", "--set", "1,2,-3,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["witness"], "m:7");
    assert_eq!(v["witness_elements"], serde_json::json!([1, 2, -3]));
    assert_eq!(v["property"], "P1");

    let none = json(&run(&["solve", "--alg", "dp", "--set", "1,2"]));
    assert_eq!(none["solution_exists"], false);
    assert!(none["witness"].is_null());
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["solve", "--alg", "dp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["solve", "--alg", "xx", "--set", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "--alg", "hs", "--set", "1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["box", "--counts", "3:1", "--ell", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "/nonexistent/trace.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn family_scan_csv() {
    let o = run(&[
        "family-scan",
        "--family",
        "paper-f",
        "--max-den",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,pi0,pi1,pi2");
    assert_eq!(lines[2], "1/4,3/4,1/4,0/1");
    assert_eq!(*lines.last().unwrap(), "1,0/1,0/1,1/1");
    assert_eq!(lines.len(), 8);

    let j = json(&run(&[
        "family-scan",
        "--family",
        "jump:1/2",
        "--max-den",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(j[1]["pi1"], "0/1");
    assert_eq!(j[1]["pi2"], "1/2");
}

#[test]
fn trace_then_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for alg in ["brute", "hs", "dp"] {
        let path = dir.path().join(format!("{alg}.json"));
        let p = path.to_str().unwrap();
        let o = run(&["trace", "--alg", alg, "--set", "3,-1,-2,7", "--out", p]);
        assert_eq!(o.status.code(), Some(0), "{alg}");
        let a = run(&["analyze", p]);
        assert_eq!(a.status.code(), Some(0), "{alg}");
        let v = json(&a);
        assert_eq!(v["passed"], true);
        assert_eq!(v["property"], "P1");
    }
}

#[test]
fn analyze_flags_tampered_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let p = path.to_str().unwrap();
    run(&["trace", "--alg", "brute", "--set", "1,2,3", "--out", p]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["events"].as_array_mut().unwrap().remove(0);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["analyze", p]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["passed"], false);
}

#[test]
fn chains_from_dp_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dp.json");
    let p = path.to_str().unwrap();
    run(&["trace", "--alg", "dp", "--set", "1,-3,2", "--out", p]);
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let last = trace["events"].as_array().unwrap().last().unwrap()["id"]
        .as_u64()
        .unwrap();
    let o = run(&["chains", p, "--event", &last.to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let lengths: Vec<u64> = v["chains"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["length"].as_u64().unwrap())
        .collect();
    assert!(lengths.contains(&2), "{lengths:?}");
    assert!(lengths.contains(&1), "{lengths:?}");
    assert_eq!(run(&["chains", p, "--event", "999"]).status.code(), Some(2));
}

#[test]
fn find_st_and_exhaustion() {
    let o = run(&[
        "find-st", "--alg", "brute", "--n", "4", "--bound", "12", "--step", "21", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["M"], 12);
    assert_eq!(v["step"], 21);
    assert_eq!(v["S"].as_array().unwrap().len(), 4);

    let o = run(&[
        "find-st", "--alg", "brute", "--n", "4", "--bound", "12", "--step", "21", "--budget", "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn seed_from_environment() {
    let args = ["box-sim", "--counts", "1:1,0:3", "--trials", "5000"];
    let flag = Command::new(env!("CARGO_BIN_EXE_subsetlab"))
        .args(args)
        .args(["--seed", "5"])
        .output()
        .unwrap();
    let env = Command::new(env!("CARGO_BIN_EXE_subsetlab"))
        .args(args)
        .env("SUBSETLAB_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    assert_ne!(stdout(&flag), stdout(&run(&args)));
}

#[test]
fn box_sim_is_worker_independent() {
    let base = run(&[
        "box-sim",
        "--counts",
        "1:1,2:1,0:2",
        "--trials",
        "30000",
        "--seed",
        "3",
    ]);
    let par = run(&[
        "box-sim",
        "--counts",
        "1:1,2:1,0:2",
        "--trials",
        "30000",
        "--seed",
        "3",
        "--workers",
        "4",
    ]);
    assert_eq!(base.stdout, par.stdout);
    let v = json(&base);
    assert!((v["1"].as_f64().unwrap() - 0.25).abs() < 0.01);
}

#[test]
fn jump_reports_magnitude() {
    let v = json(&run(&[
        "jump", "--family", "paper-f", "--q0", "1", "--depth", "64",
    ]));
    assert_eq!(v["magnitude"], "1/1");
    let v = json(&run(&[
        "jump", "--family", "const", "--q0", "1/3", "--side", "above",
    ]));
    assert_eq!(v["magnitude"], "0/1");
    assert_eq!(
        run(&["jump", "--family", "const", "--q0", "1", "--side", "above"])
            .status
            .code(),
        Some(2)
    );
}
