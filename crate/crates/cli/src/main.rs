//! `ucpoint`: size scenario files, fit effort curves, estimate, and
//! evaluate estimators against project datasets.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or validation error,
//! 3 computation error (non-convergence, singular systems). Reports go to
//! stdout; warnings and errors go to stderr.

mod commands;
mod plot;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use ucpoint_core::regression::{ModelKind, SizeRange};

#[derive(Parser)]
#[command(
    name = "ucpoint",
    version,
    about = "Use-case based software effort estimation",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size a scenario file and print the per-use-case breakdown
    Size {
        /// Scenario file to size
        project_file: PathBuf,
    },
    /// Fit effort curves to a project dataset
    Fit {
        /// Dataset CSV
        dataset: PathBuf,
        /// Fit a single range instead of the full piecewise estimator
        #[arg(long, value_parser = parse_range, conflicts_with = "out")]
        range: Option<SizeRange>,
        /// Model form to fit (polynomial, exp1, exp2, exp3); needs --range
        #[arg(long, value_parser = parse_form, requires = "range", conflicts_with = "all_forms")]
        form: Option<ModelKind>,
        /// Fit all four forms per range and rank them by R^2
        #[arg(long)]
        all_forms: bool,
        /// Write the fitted estimator to this JSON file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate effort for one project
    Estimate {
        /// Scenario file to estimate
        project_file: PathBuf,
        /// Estimator JSON file produced by `fit --out`
        #[arg(long, conflicts_with = "baseline")]
        model: Option<PathBuf>,
        /// Baseline estimator; the only mode is `ucp` (20 x legacy UCP)
        #[arg(long, value_name = "MODE", value_parser = clap::builder::PossibleValuesParser::new(["ucp"]))]
        baseline: Option<String>,
    },
    /// Evaluate estimators against a dataset of actual efforts
    Evaluate {
        /// Dataset CSV with actual efforts
        dataset: PathBuf,
        /// Estimator JSON file to evaluate
        #[arg(long)]
        model: Option<PathBuf>,
        /// Also evaluate the baseline estimator (`ucp`)
        #[arg(long, value_name = "MODE", value_parser = clap::builder::PossibleValuesParser::new(["ucp"]))]
        baseline: Option<String>,
        /// Write a scatter plot with estimator curves to this SVG file
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Generate a deterministic synthetic dataset
    Generate {
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// PRNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Records per range as small,medium,large
        #[arg(long, value_parser = parse_counts, default_value = "26,21,18")]
        counts: (usize, usize, usize),
        /// Multiplicative noise amplitude as a fraction (0.05 = +/-5%)
        #[arg(long, value_parser = parse_noise, default_value = "0.05")]
        noise: f64,
    },
}

fn parse_range(token: &str) -> Result<SizeRange, String> {
    SizeRange::parse(token).ok_or_else(|| format!("unknown range `{token}` (small, medium, large)"))
}

fn parse_form(token: &str) -> Result<ModelKind, String> {
    ModelKind::parse(token)
        .ok_or_else(|| format!("unknown form `{token}` (polynomial, exp1, exp2, exp3)"))
}

fn parse_counts(text: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err("counts must be three comma-separated integers, e.g. 26,21,18".to_string());
    }
    let mut values = [0usize; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("bad count `{}`", part.trim()))?;
    }
    Ok((values[0], values[1], values[2]))
}

fn parse_noise(text: &str) -> Result<f64, String> {
    let value: f64 = text
        .parse()
        .map_err(|_| format!("noise must be a number, got `{text}`"))?;
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(format!("noise must be a nonnegative fraction, got {value}"))
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.code()
        }
    }
}
