use std::process::{Command, Output};

fn eja(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eja")).args(args).env_remove("JM_SEED").output().expect("eja runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_prints_catalog() {
    let o = eja(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert!(names.len() >= 14);
    assert!(names.iter().any(|n| n == "thm3-correlation"));
}

#[test]
fn reference_check_passes() {
    let o = eja(&["check", "thm3-correlation", "--alg", "realsym:4", "--trials", "500", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["aggregate"]["pass"], 500);
    assert_eq!(v["config"]["seed"], 42);
}

#[test]
fn usage_errors_exit_two() {
    let o = eja(&["check", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("thm3-correlation"));
    assert_eq!(eja(&["check", "thm3-correlation", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(eja(&["check", "thm3-correlation", "--alg", "octonion:3"]).status.code(), Some(2));
    assert_eq!(eja(&["check", "thm2-automorphisms", "--alg", "spin:3"]).status.code(), Some(2));
    assert_eq!(eja(&["check", "thm3-correlation", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(eja(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(eja(&["demo", "nope"]).status.code(), Some(2));
}

#[test]
fn failures_exit_one_with_replay_hint() {
    let o = eja(&["check", "thm3-correlation", "--trials", "10", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    let hint = err.lines().find(|l| l.starts_with("FAIL")).expect("failure line");
    assert!(hint.contains("--trial"));
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let p = path.to_str().unwrap();
    let o = eja(&["check", "hlp-birkhoff", "--trials", "2", "--format", "csv", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("suite,algebra,trial,seed,inputs_digest,check,status,margin"));
    assert!(body.lines().count() > 2);
}

#[test]
fn seed_env_and_replay() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_eja"))
        .args(["check", "eq14-det", "--alg", "herm:3", "--trials", "4"])
        .env("JM_SEED", "777")
        .output()
        .unwrap();
    let full: serde_json::Value = serde_json::from_str(&stdout(&with_env)).unwrap();
    assert_eq!(full["config"]["seed"], 777);
    let one = eja(&["check", "eq14-det", "--alg", "herm:3", "--trials", "4", "--seed", "777", "--trial", "2"]);
    let one: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(one["trials"][0], full["trials"][2]);
    let bad = Command::new(env!("CARGO_BIN_EXE_eja")).args(["check", "eq14-det"]).env("JM_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn timing_is_opt_in() {
    let plain = eja(&["check", "spin-means", "--trials", "2"]);
    assert!(!stdout(&plain).contains("runtime_ms"));
    let timed = eja(&["check", "spin-means", "--trials", "2", "--timing"]);
    assert!(stdout(&timed).contains("runtime_ms"));
}

#[test]
fn demos_run() {
    let o = eja(&["demo"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let name = line.split_whitespace().next().unwrap();
        let d = eja(&["demo", name]);
        assert_eq!(d.status.code(), Some(0), "{name}");
        assert!(!stdout(&d).is_empty());
    }
}
