//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::process::Command;
use std::time::{Duration, Instant};

use eja::harness::{catalog, find_suite, run_suite, Report, Status, SuiteConfig};

const SEED: u64 = 42;

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(name: &str, trials: Option<usize>, tol: Option<f64>) -> Report {
    let mut c = SuiteConfig::new(name, SEED);
    c.trials = trials;
    c.tol = tol;
    run_suite(&c).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Runs suites, requiring zero failures and zero inconclusive trials.
fn clean(suites: &[(&str, Option<usize>, Option<f64>)], budget: Option<Duration>) -> (Outcome, Vec<Report>) {
    let start = Instant::now();
    let reports: Vec<Report> = suites.iter().map(|(n, t, tol)| run(n, *t, *tol)).collect();
    let elapsed = start.elapsed();
    let mut ok = reports.iter().all(|r| r.status() == Status::Pass);
    let mut parts: Vec<String> = reports
        .iter()
        .map(|r| format!("{} pass={} fail={} inc={}", r.suite, r.aggregate.pass, r.aggregate.fail, r.aggregate.inconclusive))
        .collect();
    if let Some(b) = budget {
        ok &= elapsed < b;
        parts.push(format!("{:.2}s < {}s", elapsed.as_secs_f64(), b.as_secs()));
    }
    (Outcome { ok, detail: parts.join("; ") }, reports)
}

fn has_check(r: &Report, name: &str) -> bool {
    r.trials.iter().all(|t| t.checks.iter().any(|c| c.name == name && c.status == Status::Pass))
}

fn per_algebra(r: &Report, trials: usize) -> bool {
    r.config.algebras.iter().all(|a| r.trials.iter().filter(|t| &t.algebra == a).count() == trials)
}

fn criterion1() -> Outcome {
    let (mut o, r) = clean(&[("algebra-axioms", Some(200), None)], Some(Duration::from_secs(5)));
    let r = &r[0];
    let named = ["jordan-identity", "trace-associativity", "spectral-reconstruction"]
        .iter()
        .all(|c| has_check(r, c));
    o.ok &= named && per_algebra(r, 200);
    o
}

fn criterion2() -> Outcome {
    let (mut o, r) = clean(&[("thm3-correlation", Some(500), Some(1e-8))], Some(Duration::from_secs(10)));
    let r = &r[0];
    let recipes_everywhere = r.config.algebras.iter().all(|a| {
        let mut seen = [false; 4];
        for t in r.trials.iter().filter(|t| &t.algebra == a) {
            if let Some(obs) = t.observations.iter().find(|o| o.name == "recipe") {
                seen[obs.value as usize] = true;
            }
        }
        seen.iter().all(|&s| s)
    });
    let named = ["cx-majorized-by-x", "unital", "trace-preserving"].iter().all(|c| has_check(r, c));
    o.ok &= recipes_everywhere && named && per_algebra(r, 500);
    o.detail.push_str(&format!("; all four recipes per algebra: {recipes_everywhere}"));
    o
}

fn criterion3() -> Outcome {
    let (mut o, r) = clean(
        &[("eq12-pa-la", Some(300), None), ("thm4-schur-powers", Some(300), None)],
        Some(Duration::from_secs(10)),
    );
    let ks = (1..=3).all(|k| has_check(&r[0], &format!("pa^{k} vs la2^{k}")));
    let rev = [-1, -2, -3].iter().all(|k| has_check(&r[0], &format!("reversal k={k}")));
    o.ok &= ks && rev;
    o
}

fn criterion4() -> Outcome {
    let (mut o, r) = clean(
        &[
            ("eq13-corollary", Some(300), None),
            ("eq14-det", Some(300), None),
            ("schur-hadamard-oppenheim", Some(300), None),
            ("fischer-split", Some(300), None),
        ],
        None,
    );
    let dets = has_check(&r[1], "det-lower-bound")
        && has_check(&r[2], "hadamard")
        && has_check(&r[2], "oppenheim-lower")
        && has_check(&r[2], "oppenheim-upper")
        && has_check(&r[3], "fischer");
    o.ok &= dets;
    o
}

fn criterion5() -> Outcome {
    let (mut o, r) = clean(&[("mean-chains", Some(200), None), ("spin-means", Some(200), None)], None);
    let quad = has_check(&r[0], "log-mean-quadrature");
    let chain = ["harmonic < sqrt-quad", "sqrt-quad < log-integral", "log-integral < lyapunov", "mG < mL", "mL < mA"]
        .iter()
        .all(|c| has_check(&r[0], c));
    o.ok &= quad && chain;
    o
}

fn criterion6() -> Outcome {
    let info = find_suite("hlp-birkhoff").expect("registered");
    let (mut o, r) = clean(&[("hlp-birkhoff", None, None)], None);
    let r = &r[0];
    let pairs = r.trials.len();
    let small = info.algebras().iter().all(|a| a.rank() <= 8);
    let checks = ["vectors dq=p", "vectors t-transform-count", "birkhoff d0 reconstruct", "birkhoff d0 term-count"]
        .iter()
        .all(|c| has_check(r, c));
    o.ok &= pairs >= 200 && small && checks;
    o.detail.push_str(&format!("; pairs={pairs}"));
    o
}

fn criterion7() -> Outcome {
    let (mut o, r) = clean(
        &[
            ("eq20-emi-local", Some(300), None),
            ("lowner-derivative", None, None),
            ("eq21-22-emi-global", Some(200), None),
            ("delta2-metric", None, None),
        ],
        None,
    );
    let fd = has_check(&r[1], "exp finite-difference") && has_check(&r[1], "log finite-difference");
    let families = ["geodesic", "straight", "polyline"]
        .iter()
        .all(|f| ["1", "2", "inf"].iter().all(|p| has_check(&r[2], &format!("{f} p={p}"))));
    let commuting = has_check(&r[2], "commuting-equality p=2");
    let metric = ["symmetry", "isometry p=2", "triangle"].iter().all(|c| has_check(&r[3], c));
    o.ok &= fd && families && commuting && metric;
    o
}

fn criterion8() -> Outcome {
    let (mut o, r) = clean(&[("weak-substochastic", Some(300), None)], None);
    let r = &r[0];
    let witnesses = r
        .trials
        .iter()
        .filter(|t| t.checks.iter().any(|c| c.name == "converse-witness" && c.status == Status::Pass))
        .count();
    o.ok &= has_check(r, "ax-weakly-majorized") && witnesses >= 1;
    o.detail.push_str(&format!("; converse witnesses in {witnesses} trials"));
    o
}

fn criterion9() -> Outcome {
    let mut same = true;
    let mut n = 0;
    for s in catalog() {
        let mut c = SuiteConfig::new(s.name, SEED);
        c.trials = Some(10);
        let a = run_suite(&c).expect("runs").to_json();
        let b = run_suite(&c).expect("runs").to_json();
        same &= a == b;
        n += 1;
    }
    let cli = |_: ()| {
        Command::new(env!("CARGO_BIN_EXE_eja"))
            .args(["check", "thm3-correlation", "--alg", "realsym:4", "--trials", "100", "--seed", "42"])
            .output()
            .expect("eja runs")
            .stdout
    };
    let cli_same = cli(()) == cli(());
    Outcome {
        ok: same && cli_same,
        detail: format!("{n} suites byte-identical: {same}; CLI stdout byte-identical: {cli_same}"),
    }
}

fn criterion10() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_eja")).args(["all"]).env_remove("JM_SEED").output().expect("eja runs");
    let elapsed = start.elapsed();
    let code = out.status.code();
    let total = String::from_utf8_lossy(&out.stdout)
        .lines()
        .find(|l| l.starts_with("TOTAL"))
        .unwrap_or("")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ");
    Outcome {
        ok: code == Some(0) && elapsed < Duration::from_secs(120),
        detail: format!("exit={code:?} {:.2}s < 120s; {total}", elapsed.as_secs_f64()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("algebra axioms", criterion1),
        ("correlation kernels are doubly stochastic", criterion2),
        ("P_a^k versus L_{a²}^k and Schur powers", criterion3),
        ("corollary and determinant battery", criterion4),
        ("mean chains and quadrature", criterion5),
        ("HLP and Birkhoff round trips", criterion6),
        ("symmetric cone geometry", criterion7),
        ("weak substochastic criterion", criterion8),
        ("determinism", criterion9),
        ("full battery", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
