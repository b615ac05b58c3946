//! `dcsi`: separability measures, DBSCAN sweeps, synthetic data and
//! benchmark correlations from the command line.
//!
//! Exit status: 0 on success, 1 when a report cannot be written, 2 for bad
//! input (flags, config, data), 3 when the report was written but some
//! measures, class pairs or data sets failed.

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::generate::GenerateArgs;
use config::{BenchArgs, Cmd, RunArgs, RunConfig};

pub const EXIT_OUTPUT: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PARTIAL: u8 = 3;

#[derive(Parser)]
#[command(name = "dcsi", version, about = "Class separability measures and DBSCAN benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every selected separability measure on one labelled CSV
    Measure(RunArgs),
    /// DCSI (and optional measures) for every pair of classes
    Pairwise(RunArgs),
    /// DBSCAN over a radius grid, ARI against the labels
    Sweep(RunArgs),
    /// Synthetic data sets, one file or a whole parameter grid
    Generate(GenerateArgs),
    /// Measures and max ARI per data set, plus Spearman correlations
    Bench {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        source: BenchArgs,
    },
}

pub enum Outcome {
    Success,
    Partial(usize),
}

impl Outcome {
    pub fn from_failures(failed: usize) -> Self {
        if failed == 0 {
            Outcome::Success
        } else {
            Outcome::Partial(failed)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Measure(args) => commands::measure::run(&RunConfig::resolve(Cmd::Measure, &args, None)?),
        Command::Pairwise(args) => commands::pairwise::run(&RunConfig::resolve(Cmd::Pairwise, &args, None)?),
        Command::Sweep(args) => commands::sweep::run(&RunConfig::resolve(Cmd::Sweep, &args, None)?),
        Command::Generate(args) => commands::generate::run(&args),
        Command::Bench { run, source } => commands::bench::run(&RunConfig::resolve(Cmd::Bench, &run, Some(&source))?),
    }
}

/// Failures writing the report are output errors; everything else stems
/// from what the user passed in.
fn exit_code(err: &anyhow::Error) -> u8 {
    let output = err.chain().any(|e| e.is::<std::io::Error>() || e.is::<csv::Error>());
    if output {
        EXIT_OUTPUT
    } else {
        EXIT_INPUT
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Partial(n)) => {
            eprintln!("warning: {n} row(s) carry errors");
            ExitCode::from(EXIT_PARTIAL)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
