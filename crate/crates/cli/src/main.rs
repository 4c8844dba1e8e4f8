use std::process::ExitCode;

use clap::{Parser, Subcommand};

use implicitize_cli::{corpus, run, CorpusArgs, RunArgs};

/// Implicitization of polynomial and rational parametrizations.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Implicitize one problem file.
    Run(RunArgs),
    /// Run a corpus of problem files against expected support sizes.
    Corpus(CorpusArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => match run(&args) {
            Ok(report) => {
                print!("{report}");
                if args.kv {
                    print!("{}", report.key_values());
                }
                if report.verification == Some(implicitize_cli::Verification::Failed) {
                    ExitCode::FAILURE
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
        Command::Corpus(args) => match corpus(&args) {
            Ok(report) => {
                print!("{report}");
                if args.kv {
                    print!("{}", report.key_values());
                }
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
    }
}
