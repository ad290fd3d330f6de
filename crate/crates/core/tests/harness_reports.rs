use eja::harness::{catalog, run_suite, Status, SuiteConfig};
use eja::Algebra;

fn small(name: &str, seed: u64) -> SuiteConfig {
    let mut c = SuiteConfig::new(name, seed);
    c.trials = Some(3);
    c
}

#[test]
fn every_suite_is_deterministic_and_passes_small_runs() {
    for s in catalog() {
        let a = run_suite(&small(s.name, 5)).unwrap();
        let b = run_suite(&small(s.name, 5)).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{}", s.name);
        assert_eq!(a.status(), Status::Pass, "{}: {}", s.name, a.to_json());
        assert!(a.runtime_ms.is_none());
    }
}

#[test]
fn seeds_change_inputs() {
    let a = run_suite(&small("thm3-correlation", 1)).unwrap();
    let b = run_suite(&small("thm3-correlation", 2)).unwrap();
    assert_ne!(a.trials[0].inputs_digest, b.trials[0].inputs_digest);
    assert_ne!(a.trials[0].seed, b.trials[0].seed);
}

#[test]
fn report_json_shape() {
    let mut c = small("eq13-corollary", 9);
    c.algebras = vec![Algebra::RealSym(3)];
    c.timing = true;
    let r = run_suite(&c).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["schema", "suite", "config", "trials", "aggregate", "runtime_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["config"]["algebras"][0], "realsym:3");
    assert_eq!(v["aggregate"]["pass"], 3);
    let check = &v["trials"][0]["checks"][0];
    assert!(check["slacks"].is_array());
    assert_eq!(check["status"], "PASS");
}

#[test]
fn a_vanishing_tolerance_exposes_rounding() {
    // trace gaps of order 1e-15 exceed a 1e-300 tolerance
    let mut c = SuiteConfig::new("thm3-correlation", 4);
    c.trials = Some(20);
    c.tol = Some(1e-300);
    let r = run_suite(&c).unwrap();
    assert_eq!(r.status(), Status::Fail);
    let f = r.failures().next().unwrap();
    let mut replay = c.clone();
    replay.algebras = vec![f.algebra.parse().unwrap()];
    replay.only_trial = Some(f.trial);
    let one = run_suite(&replay).unwrap();
    assert_eq!(&one.trials[0], f);
}

#[test]
fn thm3_reference_run() {
    let mut c = SuiteConfig::new("thm3-correlation", 42);
    c.algebras = vec![Algebra::RealSym(4)];
    c.trials = Some(500);
    let r = run_suite(&c).unwrap();
    assert_eq!(r.aggregate.pass, 500);
}
