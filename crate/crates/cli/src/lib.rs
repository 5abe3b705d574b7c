//! Command-line driver: argument parsing, layered configuration and the
//! dispatch from subcommands to `grushin-core`.

pub mod args;
mod commands;
pub mod config;
pub mod report;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use grushin_core::GrushinError;

use crate::args::Cli;
use crate::config::Layers;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const JOBS_ENV: &str = "GRUSHIN_LAB_JOBS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<GrushinError> for CliError {
    fn from(e: GrushinError) -> Self {
        match e {
            GrushinError::NotInImage { .. } | GrushinError::Unreachable => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// What a subcommand produced: the text to emit and the exit code.
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_DOMAIN;
                }
            } else {
                let _ = out.write_all(outcome.text.as_bytes());
            }
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let layers = Layers::load(cli.config.as_deref())?;
    configure_jobs(layers.pick("jobs", cli.jobs)?)?;
    commands::dispatch(cli, &layers)
}

fn configure_jobs(flag: Option<usize>) -> Result<(), CliError> {
    let jobs = match flag {
        Some(j) => Some(j),
        None => match std::env::var(JOBS_ENV) {
            Ok(s) if !s.trim().is_empty() => Some(
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("{JOBS_ENV}={s:?} is not a count")))?,
            ),
            _ => None,
        },
    };
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    Ok(())
}
