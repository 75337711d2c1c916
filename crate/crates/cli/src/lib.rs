//! Command-line front end for `ghostring`: argument parsing, dispatch, run
//! reports and the example corpus.
//!
//! Exit codes: 0 computed, 1 usage or input error (and corpus mismatch),
//! 2 precondition rejection, 3 result inconclusive at the chosen truncation.

pub mod args;
mod commands;
pub mod corpus;
mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

pub use args::{Cli, Command, TorWith};
pub use report::RunReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ghostring::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_input_error() => 2,
            _ => 1,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub report: Option<RunReport>,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE, report: None }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK, report: None }
            };
        }
    };
    let start = Instant::now();
    let out = match commands::dispatch(&cli) {
        Ok(out) => out,
        Err(e) => return Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code(), report: None },
    };
    let report = RunReport {
        command: out.command.to_string(),
        inputs: out.inputs,
        truncation: out.truncation,
        results: out.results,
        wall_time_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let flags = report.flags();
    let code = if out.failed {
        EXIT_USAGE
    } else if !flags.is_empty() {
        EXIT_TRUNCATED
    } else {
        EXIT_OK
    };
    let mut stdout = if cli.json { report.to_json() + "\n" } else { out.text };
    let mut stderr = String::new();
    if !cli.json {
        let bounds: Vec<String> = report.truncation.iter().filter(|(k, _)| k.as_str() != "flags").map(|(k, v)| format!("{k}={v}")).collect();
        if !bounds.is_empty() {
            stdout.push_str(&format!("truncation: {}\n", bounds.join(" ")));
        }
    }
    for f in &flags {
        let line = format!("warning: {f}\n");
        if cli.json || !stdout.contains(&line) {
            stderr.push_str(&line);
        }
    }
    if out.failed {
        stderr.push_str("corpus verification failed\n");
    }
    Outcome { stdout, stderr, code, report: Some(report) }
}
