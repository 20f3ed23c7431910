//! Command-line front end for `bmfp-core`: reads spaces, maps and function
//! suites from JSON and prints deterministic JSON or table reports.
//!
//! Exit codes: 0 when the checked claim holds, 1 when it is refuted (the
//! report carries the witness), 2 for unusable input.

pub mod commands;
pub mod demo;
pub mod error;
pub mod input;
pub mod report;

use std::path::PathBuf;

use bmfp_core::{ContractionCondition, Tolerance};
use clap::{Parser, Subcommand, ValueEnum};

pub use demo::Example;
pub use error::InputError;
use report::{Digits, Report};

pub const EXIT_INPUT: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Basic,
    Generalized,
}

impl From<Theorem> for ContractionCondition {
    fn from(t: Theorem) -> Self {
        match t {
            Theorem::Basic => ContractionCondition::Basic,
            Theorem::Generalized => ContractionCondition::Generalized,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bmfp",
    version,
    about = "Fixed-point certification on finite b-metric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Significant digits in printed numbers
    #[arg(long, global = true, default_value_t = report::DEFAULT_PRECISION as u8,
          value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,

    /// Relative tolerance for inexact comparisons
    #[arg(long, global = true, env = "BMFP_TOLERANCE")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the b-metric axioms and report the minimal coefficient
    Validate {
        space: PathBuf,
        /// Coefficient to check instead of the one in the file
        #[arg(long, value_parser = parse_real)]
        coefficient: Option<input::Real>,
    },
    /// Minimal admissible coefficient of a distance table
    Coefficient { space: PathBuf },
    /// Certify a map against a contraction condition
    Certify {
        space: PathBuf,
        map: PathBuf,
        suite: PathBuf,
        #[arg(long, value_enum, default_value_t = Theorem::Basic)]
        theorem: Theorem,
    },
    /// Picard iteration from one seed, or from every point
    Iterate {
        space: PathBuf,
        map: PathBuf,
        #[arg(long)]
        seed: Option<String>,
        /// Map applications allowed before giving up (default: points + 1)
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// All fixed points by brute force
    FixedPoints { space: PathBuf, map: PathBuf },
    /// Run an embedded four-point example end to end
    Demo {
        #[arg(value_enum, ignore_case = true)]
        example: Example,
    },
}

fn parse_real(s: &str) -> Result<input::Real, String> {
    input::Real::parse(s)
        .map(|value| input::Real {
            value,
            expr: s.parse::<f64>().is_err().then(|| s.to_string()),
        })
        .ok_or_else(|| format!("cannot read {s:?} as a real number"))
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn render<R: Report>(report: &R, format: Format, warnings: Vec<String>) -> Output {
    let stdout = match format {
        Format::Table => report.table(),
        Format::Json => match serde_json::to_string_pretty(report) {
            Ok(s) => s + "\n",
            Err(e) => {
                return Output {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                }
            }
        },
    };
    Output {
        code: report.exit_code(),
        stdout,
        stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
    }
}

fn tolerance(cli: &Cli) -> Result<Tolerance, InputError> {
    match cli.tolerance {
        None => Ok(Tolerance::default()),
        Some(t) => Tolerance::new(t)
            .map_err(|_| InputError::Usage(format!("tolerance must be finite and > 0, got {t}"))),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, InputError> {
    let tol = tolerance(cli)?;
    let digits = Digits(usize::from(cli.precision));
    let format = cli.format;
    Ok(match &cli.command {
        Command::Validate { space, coefficient } => render(
            &commands::validate(space, coefficient.as_ref(), tol, digits)?,
            format,
            vec![],
        ),
        Command::Coefficient { space } => {
            render(&commands::coefficient(space, tol, digits)?, format, vec![])
        }
        Command::Certify {
            space,
            map,
            suite,
            theorem,
        } => {
            let report = commands::certify_cmd(space, map, suite, (*theorem).into(), tol, digits)?;
            let warnings = report.membership.warnings();
            render(&report, format, warnings)
        }
        Command::Iterate {
            space,
            map,
            seed,
            max_steps,
        } => render(
            &commands::iterate(space, map, seed.as_deref(), *max_steps, tol, digits)?,
            format,
            vec![],
        ),
        Command::FixedPoints { space, map } => {
            render(&commands::fixed_points(space, map, tol)?, format, vec![])
        }
        Command::Demo { example } => {
            let report = demo::run(*example, tol, digits)?;
            let warnings = report.membership.warnings();
            render(&report, format, warnings)
        }
    })
}

/// Runs one parsed invocation. Never panics on bad input.
pub fn run(cli: &Cli) -> Output {
    dispatch(cli).unwrap_or_else(|e| Output {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}
