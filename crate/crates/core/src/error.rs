use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity mismatch: expected a set over {expected} elements, got {found}")]
    CapacityMismatch { expected: usize, found: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} needs at most {limit} attributes, got {found}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Whether the error came from malformed input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Csv(_) | Error::Json(_))
    }
}
