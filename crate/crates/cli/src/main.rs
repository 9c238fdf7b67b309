//! `rms`: encode, corrupt, syndrome, decode and experiment over
//! Reed-Muller codes.

mod commands;
mod decoder;
mod exit;
mod experiment;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::exit::{Exit, Failure};

#[derive(Debug, Parser)]
#[command(
    name = "rms",
    version,
    about = "Reed-Muller syndrome decoding beyond half the distance"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a polynomial on every point: word file plus `.json` sidecar.
    Encode(commands::EncodeArgs),
    /// Add errors at a random U_r set of points.
    Corrupt(commands::CorruptArgs),
    /// Syndrome of a word file as JSON.
    Syndrome(commands::SyndromeArgs),
    /// Error locations from a syndrome file.
    Decode(commands::DecodeArgs),
    /// Seeded trials written as CSV, with timings and a JSON summary.
    Experiment(experiment::ExperimentArgs),
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode(a) => commands::cmd_encode(&a),
        Command::Corrupt(a) => commands::cmd_corrupt(&a),
        Command::Syndrome(a) => commands::cmd_syndrome(&a),
        Command::Decode(a) => commands::cmd_decode(&a),
        Command::Experiment(a) => experiment::cmd_experiment(&a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Exit::InvalidInput.into()
            } else {
                Exit::Success.into()
            };
        }
    };
    match run(cli) {
        Ok(()) => Exit::Success.into(),
        Err(f) => {
            eprintln!("error: {f}");
            f.exit.into()
        }
    }
}
