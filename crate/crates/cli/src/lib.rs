//! Command-line front end for `wilsonqs`: figure data as CSV or SVG,
//! operator matrix dumps and the verification suites.
//!
//! Exit codes: 0 success, 1 validation error, 2 computation or I/O error,
//! 3 verification failure.

pub mod commands;
pub mod config;
pub mod exact;
pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{compute, execute, Outcome};
pub use config::{Cli, Command, Flags, Format, MethodChoice, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("computation failed: {0}")]
    Computation(String),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl CliError {
    pub fn invalid(e: wilsonqs::Error) -> Self {
        CliError::Validation(e.to_string())
    }

    pub fn computation(e: wilsonqs::Error) -> Self {
        match e {
            wilsonqs::Error::InvalidParams(msg) => CliError::Validation(msg),
            other => CliError::Computation(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Computation(_) | CliError::Io(_) => EXIT_COMPUTATION,
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    let result = RunConfig::resolve(cli.command, &cli.flags).and_then(|cfg| execute(&cfg));
    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.body.as_bytes()).is_err() {
                return EXIT_COMPUTATION;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
