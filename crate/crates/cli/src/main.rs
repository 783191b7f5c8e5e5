//! `rbm-sl`: generate models, draw samples, learn two-hop graphs and run experiments.
//!
//! Exit status is 0 on success, 1 on a configuration error and 2 on an internal
//! invariant failure or a failed `verify`.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rbm_sl_core::{Error, Result};

use args::{Cli, Command};
use commands::Outcome;

const CONFIG_ERROR: u8 = 1;
const INVARIANT_FAILURE: u8 = 2;

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("RBM_SL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::InvalidConfig(format!("RBM_SL_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Invariant(e.to_string()))
}

fn dispatch(command: &Command) -> Result<Outcome> {
    init_threads()?;
    match command {
        Command::GenModel(a) => commands::gen_model(a),
        Command::Sample(a) => commands::sample(a),
        Command::Learn(a) => commands::learn(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Constants(a) => commands::constants(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(CONFIG_ERROR),
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(INVARIANT_FAILURE),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config_error() { CONFIG_ERROR } else { INVARIANT_FAILURE })
        }
    }
}
