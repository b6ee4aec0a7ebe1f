use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] trajrecon::Error),

    #[error("track `{track}`: {source}")]
    Track {
        track: String,
        #[source]
        source: trajrecon::Error,
    },

    #[error("output: {0}")]
    Io(#[from] io::Error),

    #[error("output: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Usage(String),

    #[error("check failed: {}", .0.join(", "))]
    CheckFailed(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 2,
            _ => 1,
        }
    }
}
