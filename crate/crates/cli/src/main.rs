//! `cavityq`: photon statistics, squeezing and entanglement of superposed
//! coherent and subharmonic cavity light.

mod config;
mod error;
mod output;
mod qfunc;
mod stats;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::FileConfig;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "cavityq",
    version,
    about = "Superposed coherent and subharmonic cavity light"
)]
struct Cli {
    /// File of `key = value` lines; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print photon statistics, quadrature and entanglement observables.
    Stats(stats::StatsArgs),
    /// Tabulate observables over an evenly spaced range of gamma as CSV.
    Sweep(sweep::SweepArgs),
    /// Sample the Q-function on a grid as CSV.
    Qfunc(qfunc::QfuncArgs),
    /// Compare every closed form against the numerical oracles.
    Verify(verify::VerifyArgs),
}

/// Cavity parameters shared by every subcommand.
#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    /// Cavity damping rate.
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Parametric gain (subharmonic pump amplitude).
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Coherent drive amplitude.
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
}

impl ParamArgs {
    pub fn resolve(&self, file: &FileConfig) -> Result<cavityq_core::SystemParams, CliError> {
        let params = cavityq_core::SystemParams::new(
            file.require(self.kappa, "kappa")?,
            file.require(self.gamma, "gamma")?,
            file.require(self.epsilon, "epsilon")?,
        );
        params.validate()?;
        Ok(params)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Stats(args) => stats::run(&args, &file),
        Command::Sweep(args) => sweep::run(&args, &file),
        Command::Qfunc(args) => qfunc::run(&args, &file),
        Command::Verify(args) => verify::run(&args, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
