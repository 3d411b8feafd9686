//! Command-line front end for equilibria of polynomial Blotto games.
//!
//! `blotto solve` reads a JSON game file and writes a JSON result document
//! to stdout; `verify` certifies a strategy pair; `reduce` shrinks
//! supports; `basis` prints the orthogonal polynomials of an interval.
//! Exit codes: 0 success, 2 input error, 3 certification failure.

pub mod commands;
pub mod config;
pub mod document;
pub mod error;
pub mod rational;
pub mod strategies;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use blotto_core::numeric::to_f64;
use blotto_core::{parse_rational, Method, Rational};
use clap::{Args, Parser, Subcommand};

pub use config::{GameConfig, SolverOverrides, SolverSettings};
pub use document::{ReduceDocument, ResultDocument, VerifyDocument};
pub use error::{CliError, CliResult, EXIT_INPUT, EXIT_OK, EXIT_UNCERTIFIED};
pub use strategies::{Coords, StrategiesFile};

pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "blotto",
    version,
    about = "Equilibria of two-battlefield Blotto games with polynomial outcome functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the orthogonal polynomial basis of [-nu, nu]
    Basis {
        /// Half-width of the interval, e.g. "3/2"
        #[arg(long, value_parser = rational_arg)]
        nu: Rational,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Compute and certify an approximate equilibrium
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// lp-grid or symmetric-grid
        #[arg(long, value_parser = method_arg)]
        method: Option<Method>,
        /// Grid parameter: L + 1 equally spaced points per player
        #[arg(long = "L")]
        grid: Option<usize>,
        /// Component bound for symmetric-grid
        #[arg(long = "K")]
        components: Option<usize>,
        /// LP tolerance
        #[arg(long, value_parser = positive_arg)]
        tol: Option<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure best-response gaps of a strategy pair
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        strategies: PathBuf,
        /// How to read atom "location" fields
        #[arg(long, value_enum)]
        coords: Option<Coords>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reduce strategy supports to at most M + 2 atoms
    Reduce {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        strategies: PathBuf,
        #[arg(long, value_enum)]
        coords: Option<Coords>,
        /// Seed for the random opponents
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Largest gap accepted as PASS
    #[arg(long, value_parser = positive_arg, default_value = "1e-6")]
    pub gap_threshold: f64,
    /// Seed for the Monte Carlo check
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run a Monte Carlo check with this many samples
    #[arg(long)]
    pub samples: Option<u64>,
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn positive_arg(text: &str) -> Result<f64, String> {
    let v = to_f64(&rational_arg(text)?);
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{text} is not positive"))
    }
}

fn method_arg(text: &str) -> Result<Method, String> {
    match text.parse::<Method>() {
        Ok(m @ (Method::LpGrid | Method::SymmetricGrid)) => Ok(m),
        Ok(m) => Err(format!("{m} is not a solver method")),
        Err(e) => Err(e.to_string()),
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Basis { nu, max_degree } => commands::basis(&nu, max_degree, out, err),
        Command::Solve {
            config,
            method,
            grid,
            components,
            tol,
            common,
        } => {
            let flags = SolverOverrides {
                method,
                grid,
                tol,
                components,
                seed: common.seed,
                samples: common.samples,
            };
            commands::solve(&config, &flags, common.gap_threshold, out, err)
        }
        Command::Verify {
            config,
            strategies,
            coords,
            common,
        } => {
            let opts = commands::VerifyOptions {
                gap_threshold: common.gap_threshold,
                coords,
                seed: common.seed.unwrap_or(0),
                samples: common.samples,
            };
            commands::verify(&config, &strategies, &opts, out, err)
        }
        Command::Reduce {
            config,
            strategies,
            coords,
            seed,
        } => commands::reduce(&config, &strategies, coords, seed, out, err),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
