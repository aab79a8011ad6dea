use std::io;

use cyclic_rips_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: parse failures, out-of-range parameters, caps.
    #[error("{0}")]
    Input(String),
    /// A computed result contradicts a proven invariant.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 3,
            CliError::Input(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_internal() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
