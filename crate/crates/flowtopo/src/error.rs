use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] flowtopo_core::Error),
    #[error("oracle check found {0} mismatches")]
    OracleMismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use flowtopo_core::Error as E;
        match self {
            CliError::Write { .. } => 1,
            CliError::Core(E::NotConverged { .. }) => 3,
            CliError::Core(E::DanglingVertex(_)) => 4,
            CliError::OracleMismatch(_) => 5,
            _ => 2,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
