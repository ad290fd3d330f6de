//! `eja`: run verification suites, list the catalog, print worked demos.
//!
//! Exit codes: 0 all pass, 1 any failure, 2 usage error, 3 only inconclusive
//! results besides passes.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eja::harness::{self, demo, exit_code, Report, Status, SuiteConfig};
use eja::{Algebra, Error};

#[derive(Parser)]
#[command(name = "eja", version, about = "Euclidean Jordan algebra majorization suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite.
    Check(CheckArgs),
    /// Print the suite catalog.
    List,
    /// Print a worked example (omit the name to list demos).
    Demo { name: Option<String> },
    /// Run every suite at its default sizes.
    All(AllArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Base seed (default: $JM_SEED, else 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Relative majorization tolerance (scaled by max(1, ‖q‖₁)).
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CheckArgs {
    suite: String,
    /// Algebra such as realsym:4, herm:3, spin:5 or realsym:2+spin:3 (repeatable).
    #[arg(long = "alg")]
    algebras: Vec<String>,
    /// Trials per algebra.
    #[arg(long)]
    trials: Option<usize>,
    /// Replay a single trial index.
    #[arg(long)]
    trial: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AllArgs {
    #[command(flatten)]
    common: Common,
}

macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

fn seed(s: Option<u64>) -> eja::Result<u64> {
    match s {
        Some(s) => Ok(s),
        None => harness::default_seed(),
    }
}

fn emit(common: &Common, reports: &[Report], single: bool) -> eja::Result<()> {
    let body = match common.format {
        Format::Json if single => reports[0].to_json(),
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Csv => harness::reports_to_csv(reports)?,
    };
    match &common.out {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn failure_lines(reports: &[Report]) {
    for r in reports {
        for t in r.failures() {
            let checks: Vec<&str> = t
                .checks
                .iter()
                .filter(|c| c.status != Status::Pass)
                .map(|c| c.name.as_str())
                .collect();
            eprintln!(
                "{} {} on {}: trial {} seed {} [{}]  replay: eja check {} --alg {} --seed {} --trial {}",
                t.status,
                r.suite,
                t.algebra,
                t.trial,
                t.seed,
                checks.join(", "),
                r.suite,
                t.algebra,
                r.config.seed,
                t.trial
            );
        }
    }
}

fn run(cli: Cli) -> eja::Result<i32> {
    match cli.command {
        Command::List => {
            for s in harness::catalog() {
                outln!("{:<26} {}", s.name, s.description);
            }
            Ok(0)
        }
        Command::Demo { name: None } => {
            for (n, d) in demo::DEMOS {
                outln!("{n:<12} {d}");
            }
            Ok(0)
        }
        Command::Demo { name: Some(n) } => {
            let _ = std::io::stdout().write_all(demo::run_demo(&n)?.as_bytes());
            Ok(0)
        }
        Command::Check(a) => {
            let mut c = SuiteConfig::new(a.suite, seed(a.common.seed)?);
            c.algebras = a.algebras.iter().map(|s| s.parse::<Algebra>()).collect::<eja::Result<_>>()?;
            c.trials = a.trials;
            c.tol = a.common.tol;
            c.only_trial = a.trial;
            c.timing = a.common.timing;
            let report = harness::run_suite(&c)?;
            let reports = [report];
            emit(&a.common, &reports, true)?;
            failure_lines(&reports);
            eprintln!("{}", reports[0].summary_line());
            Ok(exit_code(reports[0].status()))
        }
        Command::All(a) => {
            let reports = harness::run_all(seed(a.common.seed)?, a.common.tol, a.common.timing)?;
            let total = harness::combined(&reports);
            if a.common.out.is_some() {
                emit(&a.common, &reports, false)?;
            }
            failure_lines(&reports);
            for r in &reports {
                outln!("{}", r.summary_line());
            }
            outln!(
                "{:<24} {:<13} pass={} fail={} inconclusive={}",
                "TOTAL",
                total.status(),
                total.pass,
                total.fail,
                total.inconclusive
            );
            Ok(exit_code(total.status()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Usage(_) | Error::Domain(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
