use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{path}:{line}: {message}")]
    Config { path: String, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] ioaco::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Runtime(String),
}

pub type Result<T> = std::result::Result<T, BenchError>;

impl BenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 usage, 2 validation, 3 runtime.
    pub fn exit_code(&self) -> i32 {
        use ioaco::Error as E;
        match self {
            BenchError::Usage(_) => 1,
            BenchError::Validation(_) | BenchError::Config { .. } | BenchError::Json(_) => 2,
            BenchError::Core(e) => match e {
                E::Io(_) => 3,
                E::Statistics(_) => 3,
                _ => 2,
            },
            BenchError::Io { .. } | BenchError::Csv(_) | BenchError::Runtime(_) => 3,
        }
    }
}
