//! Process-level error classification.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 reproduction
//! rows failing their tolerance.

use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    InvalidInput(String),
    RowsFailed { failed: usize },
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Internal(_) => ExitCode::from(1),
            CliError::InvalidInput(_) => ExitCode::from(2),
            CliError::RowsFailed { .. } => ExitCode::from(3),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            CliError::RowsFailed { failed } => {
                write!(f, "{failed} reproduction row(s) outside tolerance")
            }
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
