mod commands;
mod config;
mod error;
mod io;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CheckArgs, Outcome, Predicate, Wrt};
use config::{Overrides, RunConfig};
use error::CliError;
use io::Format;

/// Generalized principal pivot transforms, Moore–Penrose inverses and
/// theorem verification campaigns. All results are written as JSON.
///
/// Exit codes: 0 success, 1 counterexample found, 2 usage or parse error,
/// 3 numeric failure, 4 size cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "gppt", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// JSON file with any of: tolerances {rank_tol_rel, eq_tol}, seed, trials, size_cap, output.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Relative singular-value cutoff for rank decisions [default: 1e-12].
    #[arg(long, global = true, value_name = "TOL")]
    rank_tol: Option<f64>,
    /// Relative residual below which predicates hold [default: 1e-9].
    #[arg(long, global = true, value_name = "TOL")]
    eq_tol: Option<f64>,
    /// Random seed for campaigns and randomized classifiers [default: 0].
    #[arg(long, global = true, env = "GPPT_SEED")]
    seed: Option<u64>,
    /// Trials per verification campaign [default: 1000].
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Largest n accepted by exact enumeration [default: 8].
    #[arg(long, global = true, value_name = "N")]
    size_cap: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Moore–Penrose inverse with the four Penrose residuals.
    Pinv { input: PathBuf },
    /// Generalized principal pivot transform with respect to a diagonal block.
    Gppt {
        input: PathBuf,
        #[arg(long, value_enum)]
        wrt: Wrt,
        /// Size of the leading block; falls back to the JSON `split` field.
        #[arg(long)]
        split: Option<usize>,
    },
    /// Generalized Schur complements F = D - CA†B and G = A - BD†C.
    Schur {
        input: PathBuf,
        #[arg(long)]
        split: Option<usize>,
    },
    /// Evaluate a matrix predicate.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        predicate: Predicate,
        /// Second operand for the inclusion predicates.
        #[arg(long, value_name = "PATH")]
        other: Option<PathBuf>,
        /// Use the sampling falsifier for p-dagger instead of exact enumeration.
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Run a verification campaign, or replay the worked examples with `--theorem FIXTURES`.
    Verify {
        #[arg(long, value_name = "ID", conflicts_with = "all", required_unless_present = "all")]
        theorem: Option<String>,
        /// Every statement except those known to be false.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate all solutions of LCP(q, M).
    Lcp {
        input: PathBuf,
        /// Comma-separated entries of q.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        q: Vec<f64>,
        /// Restrict solutions to the row space of M.
        #[arg(long)]
        row_space: bool,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = cli.global;
    let cfg = RunConfig::resolve(
        g.config.as_deref(),
        Overrides {
            rank_tol: g.rank_tol,
            eq_tol: g.eq_tol,
            seed: g.seed,
            trials: g.trials,
            size_cap: g.size_cap,
            output: g.output,
        },
    )?;
    let fmt = g.format;
    let outcome = match &cli.command {
        Command::Pinv { input } => commands::cmd_pinv(input, fmt, &cfg)?,
        Command::Gppt { input, wrt, split } => commands::cmd_gppt(input, fmt, *wrt, *split, &cfg)?,
        Command::Schur { input, split } => commands::cmd_schur(input, fmt, *split, &cfg)?,
        Command::Check {
            input,
            predicate,
            other,
            randomized,
            samples,
        } => commands::cmd_check(
            CheckArgs {
                input,
                format: fmt,
                predicate: *predicate,
                other: other.as_deref(),
                randomized: *randomized,
                samples: *samples,
            },
            &cfg,
        )?,
        Command::Verify { theorem, all } => commands::cmd_verify(theorem.as_deref(), *all, &cfg)?,
        Command::Lcp { input, q, row_space } => commands::cmd_lcp(input, fmt, q, *row_space, &cfg)?,
    };
    write_output(&outcome.json, cfg.output.as_deref())?;
    Ok(outcome)
}

fn write_output(json: &serde_json::Value, path: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(json).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Output(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
