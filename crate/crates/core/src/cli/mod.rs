//! Batch front end behind the `defq` binary.
//!
//! Each subcommand reads a JSON [`RunConfig`], runs one computation, prints a
//! short summary and writes a JSON report. Exit codes: 0 when every
//! certificate holds, 1 when one fails, 2 for usage or configuration errors.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::error::Error;

pub use commands::CliBase;
pub use config::{BaseSpec, FieldSpec, RunConfig, Setup, StarSpec, MAX_PRECISION};

/// Directory for reports when `--out` is not given.
pub const OUT_DIR_ENV: &str = "DEFQ_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "defq", version, about = "Exact computations with truncated star products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate f★g for monomial pairs under the Moyal product.
    MoyalTable(RunArgs),
    /// Compare (a★b)★c with a★(b★c) on given or random triples.
    AssocCheck(RunArgs),
    /// ★-invert series and certify both residuals.
    Invert(RunArgs),
    /// Lift classical idempotents to ★-idempotents.
    LiftIdempotent(RunArgs),
    /// Lift a corpus of idempotents and certify conjugacy of alternative lifts.
    K0Experiment(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override the configured precision.
    #[arg(long)]
    precision: Option<usize>,
    /// Override the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; defaults to `<command>.json` in $DEFQ_OUT_DIR or the
    /// current directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Why a run did not succeed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Config(String),
    Certificate(String),
}

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Failure::Config(msg.into())
    }

    pub fn from_config(e: Error) -> Self {
        Failure::Config(e.to_string())
    }

    /// Errors raised while computing: singular classical limits are
    /// certificate failures, everything else is a bad input.
    pub fn from_run(e: Error) -> Self {
        match e {
            Error::NotInvertible | Error::NotInvertibleAtClassicalLimit => Failure::Certificate(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Certificate(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Certificate(m) => m,
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub lines: Vec<String>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::MoyalTable(_) => "moyal-table",
        Command::AssocCheck(_) => "assoc-check",
        Command::Invert(_) => "invert",
        Command::LiftIdempotent(_) => "lift-idempotent",
        Command::K0Experiment(_) => "k0-experiment",
    }
}

/// Runs a named command on a parsed config.
pub fn execute(command: &str, cfg: &RunConfig) -> Result<Outcome, Failure> {
    match command {
        "moyal-table" => commands::moyal_table(cfg),
        "assoc-check" => commands::assoc_check(cfg),
        "invert" => commands::invert(cfg),
        "lift-idempotent" => commands::lift_idempotent(cfg),
        "k0-experiment" => commands::k0_experiment(cfg),
        other => Err(Failure::config(format!("unknown command `{other}`"))),
    }
}

/// Pretty JSON with a trailing newline; key order is sorted, so equal
/// reports serialize to equal bytes.
pub fn render_report(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
    s.push('\n');
    s
}

fn report_path(name: &str, out: Option<&Path>) -> PathBuf {
    match out {
        Some(p) => p.to_path_buf(),
        None => {
            let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
            dir.join(format!("{name}.json"))
        }
    }
}

fn run_command(name: &str, args: &RunArgs) -> Result<(Outcome, PathBuf), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", args.config.display())))?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(p) = args.precision {
        cfg.precision = p;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let outcome = execute(name, &cfg)?;
    let path = report_path(name, args.out.as_deref());
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::config(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(&path, render_report(&outcome.report))
        .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
    Ok((outcome, path))
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let name = command_name(&cli.command);
    let args = match &cli.command {
        Command::MoyalTable(a)
        | Command::AssocCheck(a)
        | Command::Invert(a)
        | Command::LiftIdempotent(a)
        | Command::K0Experiment(a) => a,
    };
    match run_command(name, args) {
        Ok((outcome, path)) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            println!("report: {}", path.display());
            if outcome.passed {
                0
            } else {
                eprintln!("{name}: certificate check failed");
                1
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
