//! The `zcohom` command-line tool: file formats, reports and subcommands.
//!
//! [`execute`] does all the work and returns what should be printed, so the
//! binary is a thin wrapper and tests can drive the tool in-process.

pub mod args;
pub mod commands;
pub mod format;
pub mod oracle;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

pub use report::Report;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const CAP: i32 = 3;
}

/// Why a command did not produce a clean report.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Cap(String),
    /// A cross-check disagreed; the full report is still printed.
    Mismatch { message: String, report: Report },
}

impl From<zerocohom::Error> for Failure {
    fn from(e: zerocohom::Error) -> Self {
        if e.is_cap_exceeded() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// What one invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command. Standard output
/// is either one complete report or empty.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let result = commands::run(&cli.command);
    let timing = format!("elapsed: {} ms\n", start.elapsed().as_millis());
    match result {
        Ok(report) => Outcome { code: exit::OK, stdout: report.to_json(), stderr: timing },
        Err(Failure::Input(m)) => Outcome { code: exit::INPUT, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Cap(m)) => {
            Outcome { code: exit::CAP, stdout: String::new(), stderr: format!("error: cap exceeded: {m}\n") }
        }
        Err(Failure::Mismatch { message, report }) => Outcome {
            code: exit::MISMATCH,
            stdout: report.to_json(),
            stderr: format!("oracle mismatch: {message}\n{timing}"),
        },
    }
}
