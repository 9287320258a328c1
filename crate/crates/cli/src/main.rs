mod commands;
mod config;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{analyze::AnalyzeArgs, count::CountArgs, scan::ScanArgs, verify::VerifyArgs};
use config::GlobalArgs;

#[derive(Parser)]
#[command(name = "factorpoly", version, about = "Degree-constrained subgraph polynomials: counts, zeros, inequalities")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact coefficients N_j of a (weighted) factor count.
    Count(CountArgs),
    /// Roots, zero-location verdicts and coefficient inequalities of one polynomial.
    Analyze(AnalyzeArgs),
    /// Run one theorem check, or all of them, on a graph.
    Verify(VerifyArgs),
    /// Log-concavity scan over a family of graphs and degree bounds.
    Scan(ScanArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config::RunConfig::from_args(&cli.global).and_then(|cfg| match &cli.command {
        Command::Scan(args) => {
            config::init_threads(true)?;
            commands::scan::run(args, &cfg)
        }
        command => {
            config::init_threads(false)?;
            match command {
                Command::Count(args) => commands::count::run(args, &cfg),
                Command::Analyze(args) => commands::analyze::run(args, &cfg),
                Command::Verify(args) => commands::verify::run(args, &cfg),
                Command::Scan(_) => unreachable!(),
            }
        }
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("factorpoly: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
