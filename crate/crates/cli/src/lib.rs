//! Command-line front end: every command emits one JSON report on stdout
//! and mirrors its diagnostics on stderr.

mod args;
mod commands;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use args::{Cli, Command, SeqCommand, WordCommand};

/// A verdict was computed.
pub const EXIT_OK: u8 = 0;
/// Unreadable, malformed or invalid input.
pub const EXIT_INPUT: u8 = 2;
/// The inputs fall outside the hypotheses of the requested operation.
pub const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub result: Value,
    pub diagnostics: Vec<String>,
    pub exit: u8,
}

/// Why a command produced no result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub exit: u8,
    pub diagnostics: Vec<String>,
}

impl Failure {
    pub fn input(msg: impl ToString) -> Self {
        Failure { exit: EXIT_INPUT, diagnostics: vec![msg.to_string()] }
    }

    pub fn not_applicable(msg: impl ToString) -> Self {
        Failure { exit: EXIT_NOT_APPLICABLE, diagnostics: vec![msg.to_string()] }
    }
}

/// Successful command output: the payload plus notes for the reader.
pub struct Outcome {
    pub result: Value,
    pub diagnostics: Vec<String>,
}

/// Everything a process run would write, and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub exit: u8,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Iso { .. } => "iso",
        Command::Examples { .. } => "examples",
        Command::Word(w) => match w {
            WordCommand::Project { .. } => "word project",
            WordCommand::Eq { .. } => "word eq",
            WordCommand::Neq { .. } => "word neq",
            WordCommand::Concat { .. } => "word concat",
            WordCommand::Invert { .. } => "word invert",
            WordCommand::Phi { .. } => "word phi",
            WordCommand::Root { .. } => "word root",
            WordCommand::ReduceLoop { .. } => "word reduce-loop",
        },
        Command::Seq(s) => match s {
            SeqCommand::Equiv { .. } => "seq equiv",
            SeqCommand::Regroup { .. } => "seq regroup",
            SeqCommand::Sum { .. } => "seq sum",
        },
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn stderr_of(diagnostics: &[String]) -> String {
    diagnostics.iter().map(|d| format!("archipelago: {d}\n")).collect()
}

/// Parse `argv` (program name first) and run the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Output { stdout: e.to_string(), stderr: String::new(), exit: EXIT_OK };
        }
        Err(e) => {
            let diagnostics = vec![e.to_string().trim_end().to_owned()];
            let report = Report { command: String::new(), args: echo, result: Value::Null, diagnostics, exit: EXIT_INPUT };
            return Output { stdout: pretty(&report), stderr: stderr_of(&report.diagnostics), exit: EXIT_INPUT };
        }
    };
    let command = command_name(&cli.command).to_owned();
    let (result, diagnostics, exit) = match commands::execute(&cli) {
        Ok(Outcome { result, diagnostics }) => (result, diagnostics, EXIT_OK),
        Err(Failure { exit, diagnostics }) => (Value::Null, diagnostics, exit),
    };
    let stderr = stderr_of(&diagnostics);
    let stdout = if cli.json {
        pretty(&Report { command, args: echo, result, diagnostics, exit })
    } else if exit == EXIT_OK {
        pretty(&result)
    } else {
        String::new()
    };
    Output { stdout, stderr, exit }
}
