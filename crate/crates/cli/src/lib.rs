//! Front end for `convinv-core`: code files, reports, the golden runner and
//! the randomized property suite.

pub mod codefile;
pub mod golden;
pub mod report;
pub mod suite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },

    #[error("invalid code file: {0}")]
    File(String),

    #[error(transparent)]
    Code(#[from] convinv_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{0} golden check(s) failed")]
    GoldenMismatch(usize),

    #[error("{0} property check(s) failed")]
    SuiteFailure(usize),
}

impl CliError {
    /// 0 success, 1 input error, 2 budget refusal, 3 golden mismatch.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Code(convinv_core::Error::BudgetExceeded { .. }) => 2,
            CliError::GoldenMismatch(_) | CliError::SuiteFailure(_) => 3,
            _ => 1,
        }
    }
}
