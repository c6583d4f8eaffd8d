//! `dunkl-qes`: spectra, verification, parameter scans and tabulation for the
//! quasi-exactly solvable Dunkl oscillator and Dunkl-Coulomb families.

mod commands;
mod config;
mod output;

use std::fmt;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

/// Bad user input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidInput(pub String);

impl fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

#[derive(Parser)]
#[command(name = "dunkl-qes", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the n + 1 known levels.
    Spectrum(commands::spectrum::Opts),
    /// Check the levels against residuals, closed forms and the numerical oracles.
    Verify(commands::verify::Opts),
    /// Sweep one parameter and emit long-form CSV.
    Scan(commands::scan::Opts),
    /// Sample potentials and wavefunctions for plotting.
    Tabulate(commands::tabulate::Opts),
}

/// Whether every check passed.
pub type Passed = bool;

fn run(cli: Cli) -> Result<Passed> {
    match cli.command {
        Command::Spectrum(opts) => commands::spectrum::run(&opts),
        Command::Verify(opts) => commands::verify::run(&opts),
        Command::Scan(opts) => commands::scan::run(&opts),
        Command::Tabulate(opts) => commands::tabulate::run(&opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
