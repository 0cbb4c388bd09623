//! `rszeta`: batch runs over the Rankin–Selberg zeta library.
//!
//! Results go to `--out` or stdout; a JSON run manifest goes to stderr.
//! Exit status is 0 on success, 1 on I/O failure and 2 on invalid input.

// Guards are written as `!(x >= lo)` so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;
mod table;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Experiment};
use output::emit_manifest;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, result) = match &cli.command {
        Command::Coeffs(a) => ("coeffs", commands::coeffs(a)),
        Command::Eval(a) => ("eval", commands::eval(a)),
        Command::Hardy(a) => ("hardy", commands::hardy(a)),
        Command::Experiment(Experiment::Delta(a)) => ("experiment delta", commands::delta(a)),
        Command::Experiment(Experiment::Meanvalue(a)) => {
            ("experiment meanvalue", commands::meanvalue(a))
        }
        Command::Calibrate(a) => ("calibrate", commands::calibrate(a)),
    };
    match result {
        Ok(ran) => {
            emit_manifest(name, &ran.params, ran.checksum, start.elapsed());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
