//! Error type shared by all core modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by the core algorithms.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operators or states act on different qubit counts.
    DimensionMismatch { left: usize, right: usize },
    /// A dense realization was requested above the configured qubit cap.
    QubitCapExceeded { n_qubits: usize, cap: usize },
    /// An operation required a Hermitian operator.
    NotHermitian,
    /// An operation required an anti-Hermitian operator.
    NotAntiHermitian,
    /// A Pauli exponential requires a single Hermitian term with coefficient of unit modulus.
    NonUnitCoefficient,
    /// Malformed FCIDUMP input; `line` is 1-based.
    Parse { line: usize, message: String },
    /// An occupation pattern outside the supported closed-shell setting.
    UnsupportedOccupation(String),
    /// The requested particle-number / spin sector contains no determinants.
    EmptySector,
    /// An operator pool ended up empty.
    EmptyPool,
    /// Invalid configuration value.
    InvalidConfig(String),
    /// An optimizer or objective produced a non-finite value.
    Diverged(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} qubits vs {right} qubits")
            }
            Error::QubitCapExceeded { n_qubits, cap } => {
                write!(f, "dense realization of {n_qubits} qubits exceeds cap of {cap}")
            }
            Error::NotHermitian => write!(f, "operator is not Hermitian"),
            Error::NotAntiHermitian => write!(f, "operator is not anti-Hermitian"),
            Error::NonUnitCoefficient => {
                write!(f, "Pauli exponential requires a single term with unit real coefficient")
            }
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::UnsupportedOccupation(msg) => write!(f, "unsupported occupation: {msg}"),
            Error::EmptySector => write!(f, "empty particle-number sector"),
            Error::EmptyPool => write!(f, "operator pool is empty"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Diverged(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
