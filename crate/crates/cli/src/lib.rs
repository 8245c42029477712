//! `foliation-lab`: input parsing, command dispatch and report emission
//! for the foliation crates.

pub mod acceptance;
pub mod commands;
pub mod error;
pub mod options;
pub mod report;

use clap::Parser;

pub use error::CliError;
pub use report::{emit_report, Report, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
/// A mathematical refutation or a failed self-test.
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_SERIALIZATION: i32 = 3;

/// What a run writes and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match options::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let emitted = commands::dispatch(&cli.command, &cli.global)
        .and_then(|report| emit_report(&report, cli.global.format).map(|text| (text, report.refuted)));
    match emitted {
        Ok((stdout, refuted)) => Outcome {
            stdout,
            stderr: String::new(),
            code: if refuted { EXIT_REFUTED } else { EXIT_OK },
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
