//! `dops` — batch front-end for d-orthogonal polynomial pipelines.
//!
//! Reads a JSON scenario, runs generation / Geronimus transformation /
//! factorization verification, and writes machine-readable artifacts plus a
//! human-readable summary on stdout. On failure a single JSON diagnostic
//! object is written to stderr and the exit code follows the contract:
//! 1 malformed input, 2 regularity failure, 3 band violation, 4 identity
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dops_cli::commands;

#[derive(Parser)]
#[command(name = "dops", about = "Exact pipelines for d-orthogonal polynomial sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sequence, its dual functional vector and the recurrence matrix.
    Generate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build the level-m transformed vector, determinants and sequence.
    Transform {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the named verification checks and write report.json.
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { scenario, out } => commands::generate(&scenario, &out),
        Command::Transform { scenario, m, out } => commands::transform(&scenario, m, &out),
        Command::Verify { scenario, out } => commands::verify(&scenario, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.diagnostic());
            ExitCode::from(err.exit_code())
        }
    }
}
