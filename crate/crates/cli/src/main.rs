//! `tauorbit`: discrete-time central-potential toolkit.
//!
//! Subcommands: `spectrum` computes discrete energy levels of a potential,
//! `reconstruct` inverts a prescribed spectrum into a potential, `simulate`
//! steps the dynamics and exports trajectories, `verify` runs the
//! cross-checking suites, `catalog` tabulates the closed-form spectra.
//!
//! Exit codes: 0 success, 1 verification failures, 2 configuration errors,
//! 3 computation errors.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "tauorbit", version, about = "Discrete-time central-potential toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the discrete energy spectrum of a potential
    Spectrum(commands::SpectrumArgs),
    /// Reconstruct a potential from a prescribed spectrum
    Reconstruct(commands::ReconstructArgs),
    /// Step the dynamics and export trajectories
    Simulate(commands::SimulateArgs),
    /// Run the cross-checking suites
    Verify(commands::VerifyArgs),
    /// Tabulate closed-form spectra of the standard potentials
    Catalog(commands::CatalogArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Reconstruct(args) => commands::reconstruct(args),
        Command::Simulate(args) => commands::simulate_cmd(args),
        Command::Verify(args) => commands::verify_cmd(args),
        Command::Catalog(args) => commands::catalog(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
