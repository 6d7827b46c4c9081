//! Crate-wide error type.

use std::fmt;

#[derive(Debug)]
pub enum Error {
    /// A parity-check file could not be parsed. `line` is 1-based.
    Alist {
        line: usize,
        reason: String,
    },
    Io(std::io::Error),
    /// A vector length does not match the graph it is used with.
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// A parameter is outside its documented domain.
    Param(String),
    /// An enumeration guard tripped before an exponential blow-up.
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    /// The operation is undefined on an all-zero input.
    Zero(&'static str),
    /// A search or decode reached a state that contradicts its contract.
    /// Carries enough context to reproduce the run.
    Anomaly(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Alist { line, reason } => {
                write!(f, "parity-check file, line {line}: {reason}")
            }
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::Dimension {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected length {expected}, got {found}"),
            Error::Param(msg) => write!(f, "invalid parameter: {msg}"),
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what} of size {size} exceeds enumeration limit {limit}")
            }
            Error::Zero(what) => write!(f, "{what} is undefined on an all-zero vector"),
            Error::Anomaly(msg) => write!(f, "compute anomaly: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
