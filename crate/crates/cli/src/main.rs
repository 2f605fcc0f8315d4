mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Convex-integration construction of stationary weak SQG solutions on the
/// 2-torus, with identity checks and exports.
#[derive(Debug, Parser)]
#[command(name = "sqg", version)]
pub struct Cli {
    /// Run configuration (`key = value` lines).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `out_dir` from the configuration.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress progress and summaries on stdout/stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the iteration, writing the ledger, checkpoints and final fields.
    Run {
        /// Continue from a `checkpoint_{n}` directory.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Stop once this many steps have been taken in total.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Run the identity and estimate checks and write reports.json.
    Verify {
        /// Run only the named checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Print the exponent sign conditions for the configured parameters.
    Feasibility,
    /// Write a CSV view of an SQF1 field.
    Export {
        field: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Spectrum)]
        format: Format,
        /// Apply a multiplier first, e.g. `lambda:0.5` or `riesz:1`.
        #[arg(long)]
        apply: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Spectrum,
    Shells,
}

fn report(kind: &str, message: &str, code: u8) -> ExitCode {
    let body = serde_json::json!({ "error": kind, "message": message, "exitCode": code });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report("UsageError", e.to_string().trim(), 2),
    };
    match commands::dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let (kind, code) = classify(&err);
            report(kind, &format!("{err:#}"), code)
        }
    }
}

fn classify(err: &anyhow::Error) -> (&'static str, u8) {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<sqg_core::Error>() {
            return (e.kind(), e.exit_code() as u8);
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return ("IoError", 4);
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return ("JsonError", 4);
        }
    }
    ("Error", 3)
}
