//! Library side of the `sensmgmt` command-line tool.

pub mod format;
pub mod scenario;
pub mod sweep;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Model(#[from] sensmgmt::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 3 for dimension mismatches, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(sensmgmt::Error::DimensionMismatch { .. }) => 3,
            _ => 2,
        }
    }
}
