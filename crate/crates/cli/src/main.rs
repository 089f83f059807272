//! `heis`: theorem verification, curve sampling, polynomial inspection and
//! equilateral certificates for the Heisenberg group with the Korányi metric.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status when a check or certificate fails.
pub const EXIT_FAILED: u8 = 2;
/// Exit status for usage, parse and I/O errors.
pub const EXIT_USAGE: u8 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "heis",
    version,
    about = "Equilateral sets in the Heisenberg group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every theorem check and report pass/fail with margins.
    Verify {
        /// Number of t0 values in the partner sweep (at least 101).
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        /// Approximate number of cells in the 3D equidistant-point grid.
        #[arg(long = "grid", default_value_t = 1_000_000)]
        grid_n: usize,
        /// Replace the canonical radius 12^(-1/4) (negative control).
        #[arg(long, hide = true)]
        perturb_r0: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the curve functions over the whole curve interval.
    Curve {
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Inspect the partner polynomial at one parameter, or sweep its zero set.
    Poly {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        t0: f64,
        /// Treat t0 as the boundary parameter ±t* (cubic branch).
        #[arg(long)]
        boundary: bool,
        /// Emit the zero set of P over (t0, t) instead of a single listing.
        #[arg(long)]
        sweep: bool,
        /// Number of t0 values in sweep mode.
        #[arg(long, default_value_t = 401)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certify that the points in a file are mutually at unit distance.
    Certify {
        /// Comma-separated rows `re(z), im(z), t`; `#` starts a comment.
        input: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Verify {
            samples,
            grid_n,
            perturb_r0,
            output,
        } => commands::verify(samples, grid_n, perturb_r0, &output),
        Command::Curve { samples, output } => commands::curve(samples, &output),
        Command::Poly {
            t0,
            boundary,
            sweep,
            samples,
            output,
        } => {
            if sweep {
                commands::poly_sweep(samples, &output)
            } else {
                commands::poly(t0, boundary, &output)
            }
        }
        Command::Certify { input, tol, output } => commands::certify(&input, tol, &output),
    };
    match result {
        Ok(commands::Outcome::Passed) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Failed) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
