//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inputs violate a documented precondition (dimension mismatch, bad
    /// quantum numbers, invalid state data, out-of-range parameters).
    InvalidInput(String),
    /// The operation is only defined on other dimensions (e.g. time reversal
    /// needs an even-dimensional space).
    UnsupportedDimension(String),
    /// An iterative routine failed to converge or an internal cross-check
    /// did not hold.
    NumericalFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::UnsupportedDimension(msg) => write!(f, "unsupported dimension: {msg}"),
            Error::NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedDimension(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::NumericalFailure(msg.into())
    }
}
