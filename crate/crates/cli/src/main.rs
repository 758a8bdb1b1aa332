//! `cfinv`: exact checks of the determinantal and Pfaffian invariant
//! theorems.
//!
//! Exit codes: 0 all checks pass, 1 a check failed or internal error,
//! 2 bad input, 3 over the size cap, 4 precondition violated.

mod args;
mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn run(cli: &Cli) -> commands::Outcome {
    match &cli.command {
        Command::Pfaffian { input, oracle } => commands::cmd_pfaffian(input, *oracle),
        Command::NormalForm { input } => commands::cmd_normal_form(input),
        Command::Factor { input, t } => commands::cmd_factor(input, *t),
        Command::IdealGens(a) => commands::cmd_ideal_gens(a),
        Command::Hilbert(a) => commands::cmd_hilbert(a),
        Command::InvariantsDim(a) => commands::cmd_invariants_dim(a),
        Command::Dims(a) => commands::cmd_dims(a),
        Command::Points(a) => commands::cmd_points(a),
        Command::Verify(a) => commands::cmd_verify(a),
        Command::RecoverG { input } => commands::cmd_recover_g(input),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Output(format!("cannot write stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let (text, failure) = match run(&cli) {
        Ok(text) => (Some(text), None),
        Err((text, f)) => (text, Some(f)),
    };
    if let Some(text) = text {
        if let Err(f) = emit(&cli, &text) {
            eprintln!("error: {f}");
            return ExitCode::from(f.exit_code() as u8);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
