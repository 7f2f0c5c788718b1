//! Command-line front end: parameter sweeps over the Landau–Zener and
//! Rabi models, and symmetry/convergence reports. Output is CSV with a
//! `#`-prefixed metadata header plus a JSON sidecar with the run summary;
//! identical configurations produce byte-identical files.

mod config;
mod output;
mod run;

use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cfg = match config::parse(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run::dispatch(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(run::RunError::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(run::RunError::Numerical(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(2)
        }
        Err(run::RunError::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}
