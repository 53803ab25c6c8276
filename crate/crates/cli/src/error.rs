use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {source}", .path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", .path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", .path.display())]
    Data { path: PathBuf, source: permanence::Error },

    #[error(transparent)]
    Core(#[from] permanence::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for bad flags or parameter values, 2 for unreadable or invalid data.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(permanence::Error::InvalidParameter(_) | permanence::Error::InvalidGenerator(_)) => 1,
            _ => 2,
        }
    }
}
