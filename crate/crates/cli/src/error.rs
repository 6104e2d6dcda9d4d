use thiserror::Error;

use crate::format::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] multicut_core::Error),
    /// A produced cut leaves demand pairs connected.
    #[error("cut leaves {violated} demand pair(s) connected, first {first:?}")]
    InvalidCut {
        violated: usize,
        first: (usize, usize),
    },
    #[error("{failed} bench run(s) failed their checks, {invalid} with invalid cuts")]
    BenchChecks { invalid: usize, failed: usize },
}

impl CliError {
    /// 2 for an invalid cut or a failed bench check, 1 otherwise. Budget overruns map to 3 only in
    /// the `gap` command.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidCut { .. } | CliError::BenchChecks { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
