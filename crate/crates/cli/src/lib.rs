//! Command-line front end for `pdm_core`: spectrum tables, oracle
//! verification reports and parameter sweeps as JSON or CSV.

pub mod commands;
pub mod config;
pub mod output;

use clap::Parser;

pub use config::{Cli, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("output error: {0}")]
    Output(String),
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    Deviation = 1,
    ConfigError = 2,
    Empty = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, S>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::ConfigError
            } else {
                ExitStatus::Pass
            };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| commands::run(&cfg));
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("pdm-spectra: {e}");
            ExitStatus::ConfigError
        }
    }
}
