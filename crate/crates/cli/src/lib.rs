//! Command implementations behind the `entwit` binary.
//!
//! Everything the binary does is reachable as a library call so the
//! integration suite can drive commands in-process; `main` only parses
//! arguments, dispatches, renders the [`report::RunReport`] and maps errors
//! to the exit-code contract:
//!
//! * `0` — success
//! * `1` — usage or argument error
//! * `2` — unreadable or invalid input file
//! * `3` — internal numerical failure (including failed verification)

pub mod commands;
pub mod report;
pub mod statefile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_FILE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Error carrying its exit code.
#[derive(Debug, Clone)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn invalid_file(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_INVALID_FILE,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.message.fmt(f)
    }
}

impl std::error::Error for CliError {}

/// Default mapping for computation-stage core errors: numerical failures get
/// exit 3, everything else is treated as a bad argument. File loading maps
/// its errors to exit 2 explicitly in [`statefile`].
impl From<entwit_core::Error> for CliError {
    fn from(err: entwit_core::Error) -> Self {
        match err {
            entwit_core::Error::NumericalFailure(_) => CliError::numerical(err.to_string()),
            _ => CliError::usage(err.to_string()),
        }
    }
}
