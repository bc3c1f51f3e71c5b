//! Command-line front end over `vqekit-core`: run specifications, report
//! rows, CSV/JSON writers, and the per-verb drivers.
//!
//! Reports are byte-deterministic for a fixed seed and spec: energies are
//! printed with 12 significant digits, rows are written in sorted label
//! order, and the `wall_s` column stays `0.000` unless timing is explicitly
//! requested (measured timings are always logged to stderr instead).

pub mod config;
pub mod report;
pub mod runner;

use std::fmt;

/// Process exit codes: 2 configuration, 3 parse/input, 4 numerical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Parse,
    Numerical,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::Parse => 3,
            ErrorKind::Numerical => 4,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> CliError {
        CliError { kind: ErrorKind::Config, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> CliError {
        CliError { kind: ErrorKind::Parse, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> CliError {
        CliError { kind: ErrorKind::Numerical, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<vqekit_core::Error> for CliError {
    fn from(e: vqekit_core::Error) -> CliError {
        use vqekit_core::Error::*;
        let kind = match &e {
            Parse { .. } => ErrorKind::Parse,
            InvalidConfig(_) | UnsupportedOccupation(_) | EmptyPool | QubitCapExceeded { .. } => {
                ErrorKind::Config
            }
            _ => ErrorKind::Numerical,
        };
        CliError { kind, message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
