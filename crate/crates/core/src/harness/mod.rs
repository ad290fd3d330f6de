//! Seeded verification suites with machine-readable reports.
//!
//! A suite runs `trials` independent trials for each configured algebra.
//! Trial `t` on algebra `alg` draws from its own stream seeded by
//! `derive_seed(seed ^ salt(suite, alg), t)`, so any single trial can be
//! replayed in isolation and reports are byte-identical across runs.

pub mod demo;
pub mod gen;
mod suites;

pub use gen::{
    gen_correlation, gen_element, gen_frame, gen_majorized_pair, gen_majorized_vectors, gen_psd_matrix,
    gen_value, GenKind, Generated,
};

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::majorize::MajorizationVerdict;
use crate::peirce::CoeffMatrix;
use crate::rng::{derive_seed, SplitMix64};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 42;
/// Environment variable overriding [`DEFAULT_SEED`].
pub const SEED_ENV: &str = "JM_SEED";

/// `JM_SEED` if set and parseable, else [`DEFAULT_SEED`].
pub fn default_seed() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{SEED_ENV}={s:?} is not a 64-bit unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Fail => "FAIL",
        })
    }
}

/// One named check inside a trial. `margin ≥ 0` means the check passed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slacks: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A reported (not asserted) measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub algebra: String,
    pub trial: usize,
    /// Seed of this trial's private stream.
    pub seed: u64,
    /// SHA-256 prefix of the trial inputs.
    pub inputs_digest: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Observation>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Aggregate {
    pub fn status(&self) -> Status {
        if self.fail > 0 {
            Status::Fail
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }

    fn merge(&mut self, o: &Aggregate) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.inconclusive += o.inconclusive;
    }
}

/// Process exit code for an overall status: 0 pass, 1 fail, 3 inconclusive only.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    /// Empty means the suite's default algebras.
    pub algebras: Vec<Algebra>,
    /// Trials per algebra; `None` means the suite default.
    pub trials: Option<usize>,
    pub seed: u64,
    /// Relative majorization tolerance override.
    pub tol: Option<f64>,
    /// Restrict to one trial index (replay).
    pub only_trial: Option<usize>,
    /// Record wall time in the report (breaks byte-identity across runs).
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        SuiteConfig {
            suite: suite.into(),
            algebras: Vec::new(),
            trials: None,
            seed,
            tol: None,
            only_trial: None,
            timing: false,
        }
    }
}

/// The configuration as actually run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub algebras: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only_trial: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub config: ConfigEcho,
    pub trials: Vec<TrialRecord>,
    pub aggregate: Aggregate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Report {
    pub fn status(&self) -> Status {
        self.aggregate.status()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per trial check.
    pub fn to_csv(&self) -> Result<String> {
        reports_to_csv(std::slice::from_ref(self))
    }

    /// Records that did not pass.
    pub fn failures(&self) -> impl Iterator<Item = &TrialRecord> {
        self.trials.iter().filter(|t| t.status != Status::Pass)
    }

    pub fn summary_line(&self) -> String {
        let a = &self.aggregate;
        format!(
            "{:<24} {:<13} pass={} fail={} inconclusive={}",
            self.suite,
            self.status(),
            a.pass,
            a.fail,
            a.inconclusive
        )
    }
}

pub fn reports_to_csv(reports: &[Report]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Usage(format!("csv: {e}"));
    w.write_record(["suite", "algebra", "trial", "seed", "inputs_digest", "check", "status", "margin"])
        .map_err(io)?;
    for r in reports {
        for t in &r.trials {
            for c in &t.checks {
                w.write_record([
                    r.suite.as_str(),
                    t.algebra.as_str(),
                    &t.trial.to_string(),
                    &t.seed.to_string(),
                    t.inputs_digest.as_str(),
                    c.name.as_str(),
                    &c.status.to_string(),
                    &format!("{:e}", c.margin),
                ])
                .map_err(io)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// Per-trial accumulator handed to suite bodies.
pub struct Trial {
    checks: Vec<CheckRecord>,
    observations: Vec<Observation>,
    hasher: Sha256,
    /// Relative majorization tolerance override from the config.
    pub tol: Option<f64>,
}

impl Trial {
    fn new(tol: Option<f64>) -> Self {
        Trial {
            checks: Vec::new(),
            observations: Vec::new(),
            hasher: Sha256::new(),
            tol,
        }
    }

    fn push(&mut self, name: &str, status: Status, margin: f64, slacks: Option<Vec<f64>>, detail: Option<String>) {
        let margin = if margin.is_finite() { margin } else { f64::MAX.copysign(margin) };
        self.checks.push(CheckRecord {
            name: name.to_string(),
            status,
            margin,
            slacks,
            detail,
        });
    }

    /// Feeds values into the inputs digest.
    pub fn input_scalars(&mut self, v: &[f64]) {
        for x in v {
            self.hasher.update(x.to_le_bytes());
        }
    }

    pub fn input(&mut self, x: &Element) {
        self.input_scalars(&x.coords());
    }

    pub fn input_coeff(&mut self, a: &CoeffMatrix) {
        self.input_scalars(&a.entries());
    }

    /// Majorization verdict; margin is [`MajorizationVerdict::margin`].
    pub fn verdict(&mut self, name: &str, v: &MajorizationVerdict) {
        let status = if v.holds { Status::Pass } else { Status::Fail };
        let m = v.margin();
        self.push(name, status, m, Some(v.partial_sum_slacks.clone()), None);
    }

    /// `lhs ≤ rhs + tol`.
    pub fn le(&mut self, name: &str, lhs: f64, rhs: f64, tol: f64) {
        let margin = rhs + tol - lhs;
        let status = if margin >= 0.0 { Status::Pass } else { Status::Fail };
        let detail = (status == Status::Fail).then(|| format!("lhs={lhs:e} rhs={rhs:e} tol={tol:e}"));
        self.push(name, status, margin, None, detail);
    }

    /// `residual ≤ tol`.
    pub fn small(&mut self, name: &str, residual: f64, tol: f64) {
        let margin = tol - residual;
        let status = if margin >= 0.0 { Status::Pass } else { Status::Fail };
        let detail = (status == Status::Fail).then(|| format!("residual={residual:e} tol={tol:e}"));
        self.push(name, status, margin, None, detail);
    }

    pub fn flag(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let (status, margin) = if ok { (Status::Pass, 0.0) } else { (Status::Fail, -1.0) };
        let detail = (!ok).then(detail);
        self.push(name, status, margin, None, detail);
    }

    /// A best-effort check that found nothing.
    pub fn inconclusive(&mut self, name: &str, detail: impl Into<String>) {
        self.push(name, Status::Inconclusive, 0.0, None, Some(detail.into()));
    }

    pub fn observe(&mut self, name: &str, value: f64) {
        self.observations.push(Observation {
            name: name.to_string(),
            value,
        });
    }

    fn finish(mut self, algebra: String, trial: usize, seed: u64, err: Option<Error>) -> TrialRecord {
        if let Some(e) = err {
            self.push("error", Status::Fail, -1.0, None, Some(e.to_string()));
        }
        if self.checks.is_empty() {
            self.push("no-checks", Status::Inconclusive, 0.0, None, None);
        }
        let status = self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        let digest = self.hasher.finalize();
        TrialRecord {
            algebra,
            trial,
            seed,
            inputs_digest: hex::encode(&digest[..8]),
            status,
            checks: self.checks,
            observations: self.observations,
        }
    }
}

pub(crate) type TrialFn = fn(&mut Trial, &Algebra, &mut SplitMix64) -> Result<()>;

/// Catalog entry.
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub default_algebras: &'static [&'static str],
    pub default_trials: usize,
    pub(crate) supports: fn(&Algebra) -> bool,
    pub(crate) run: TrialFn,
}

impl SuiteInfo {
    pub fn supports(&self, alg: &Algebra) -> bool {
        (self.supports)(alg)
    }

    pub fn algebras(&self) -> Vec<Algebra> {
        self.default_algebras
            .iter()
            .map(|s| s.parse().expect("catalog algebra spec"))
            .collect()
    }
}

/// All registered suites in catalog order.
pub fn catalog() -> &'static [SuiteInfo] {
    suites::CATALOG
}

pub fn suite_names() -> Vec<&'static str> {
    catalog().iter().map(|s| s.name).collect()
}

pub fn find_suite(name: &str) -> Result<&'static SuiteInfo> {
    catalog().iter().find(|s| s.name == name).ok_or_else(|| {
        Error::Usage(format!("unknown suite '{name}'; available: {}", suite_names().join(", ")))
    })
}

fn salt(suite: &str, alg: &str) -> u64 {
    let d = Sha256::digest(format!("{suite}/{alg}").as_bytes());
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

/// Seed of trial `trial` of `suite` on `alg`.
pub fn trial_seed(suite: &str, alg: &Algebra, seed: u64, trial: usize) -> u64 {
    derive_seed(seed ^ salt(suite, &alg.to_string()), trial as u64)
}

/// Runs one suite.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let info = find_suite(&config.suite)?;
    let trials = config.trials.unwrap_or(info.default_trials);
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    if let Some(t) = config.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Usage(format!("tolerance {t} must be positive and finite")));
        }
    }
    if let Some(k) = config.only_trial {
        if k >= trials {
            return Err(Error::Usage(format!("trial index {k} outside 0..{trials}")));
        }
    }
    let algebras = if config.algebras.is_empty() {
        info.algebras()
    } else {
        config.algebras.clone()
    };
    for alg in &algebras {
        alg.validate()?;
        if !info.supports(alg) {
            return Err(Error::Usage(format!("suite '{}' does not support algebra {alg}", info.name)));
        }
    }

    let start = Instant::now();
    let mut records = Vec::new();
    let mut aggregate = Aggregate::default();
    for alg in &algebras {
        let name = alg.to_string();
        let indices: Vec<usize> = match config.only_trial {
            Some(k) => vec![k],
            None => (0..trials).collect(),
        };
        for t in indices {
            let seed = trial_seed(info.name, alg, config.seed, t);
            let mut rng = SplitMix64::new(seed);
            let mut trial = Trial::new(config.tol);
            let err = (info.run)(&mut trial, alg, &mut rng).err();
            let rec = trial.finish(name.clone(), t, seed, err);
            aggregate.add(rec.status);
            records.push(rec);
        }
    }
    let runtime_ms = config.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(Report {
        schema: SCHEMA_VERSION,
        suite: info.name.to_string(),
        config: ConfigEcho {
            algebras: algebras.iter().map(|a| a.to_string()).collect(),
            trials,
            seed: config.seed,
            tol: config.tol,
            only_trial: config.only_trial,
        },
        trials: records,
        aggregate,
        runtime_ms,
    })
}

/// The full battery: every suite at its default sizes.
pub fn run_all(seed: u64, tol: Option<f64>, timing: bool) -> Result<Vec<Report>> {
    catalog()
        .iter()
        .map(|s| {
            let mut c = SuiteConfig::new(s.name, seed);
            c.tol = tol;
            c.timing = timing;
            run_suite(&c)
        })
        .collect()
}

/// Combined counts of several reports.
pub fn combined(reports: &[Report]) -> Aggregate {
    let mut a = Aggregate::default();
    for r in reports {
        a.merge(&r.aggregate);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_large_and_unique() {
        let names = suite_names();
        assert!(names.len() >= 14);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        for s in catalog() {
            for a in s.algebras() {
                assert!(s.supports(&a), "{} / {a}", s.name);
            }
        }
    }

    #[test]
    fn config_validation() {
        let mut c = SuiteConfig::new("thm3-correlation", 1);
        c.trials = Some(0);
        assert!(matches!(run_suite(&c), Err(Error::Usage(_))));
        assert!(matches!(run_suite(&SuiteConfig::new("nosuch", 1)), Err(Error::Usage(_))));
        let mut c = SuiteConfig::new("thm2-automorphisms", 1);
        c.algebras = vec![Algebra::Spin(3)];
        assert!(matches!(run_suite(&c), Err(Error::Usage(_))));
    }

    #[test]
    fn replay_matches_full_run() {
        let mut c = SuiteConfig::new("thm3-correlation", 7);
        c.trials = Some(5);
        c.algebras = vec![Algebra::RealSym(3)];
        let full = run_suite(&c).unwrap();
        c.only_trial = Some(3);
        let one = run_suite(&c).unwrap();
        assert_eq!(one.trials.len(), 1);
        assert_eq!(one.trials[0], full.trials[3]);
    }

    #[test]
    fn csv_has_a_row_per_check() {
        let mut c = SuiteConfig::new("hlp-birkhoff", 3);
        c.trials = Some(2);
        let r = run_suite(&c).unwrap();
        let csv = r.to_csv().unwrap();
        let rows = csv.lines().count() - 1;
        assert_eq!(rows, r.trials.iter().map(|t| t.checks.len()).sum::<usize>());
    }
}
