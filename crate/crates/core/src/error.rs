use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown teacher `{0}`")]
    UnknownTeacher(String),

    #[error("unknown category `{label}` for criterion `{criterion}`")]
    UnknownCategory { criterion: String, label: String },

    #[error("consistency ratio is only tabulated up to n = 10 (got n = {0})")]
    UnsupportedDimension(usize),

    #[error("search space of {count} timetables exceeds the enumeration limit of {limit}")]
    SearchSpaceTooLarge { count: String, limit: u64 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("inconsistent judgments (CR >= 0.1): {0}")]
    Inconsistent(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
