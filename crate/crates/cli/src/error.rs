use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed scenario document; `path` is the JSON field path.
    #[error("{source_name}: line {line}, column {column}, field `{path}`: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        path: String,
        message: String,
    },

    /// Well-formed scenario that breaks a scenario-level invariant.
    #[error("invalid scenario: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] hblab::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("writing JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for refusals (bad input, violated hypotheses), 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) => 2,
            CliError::Core(e) if e.is_refusal() => 2,
            _ => 1,
        }
    }
}
