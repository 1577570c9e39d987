use std::path::PathBuf;

use thiserror::Error;

use crate::diagram::PlanePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Violations of the diagram value invariants.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(PlanePoint),
    #[error("point {0} lies below the diagonal (death < birth)")]
    BelowDiagonal(PlanePoint),
    #[error("point {0} lies on the diagonal (death = birth)")]
    OnDiagonal(PlanePoint),
    #[error("point {0} has multiplicity 0")]
    ZeroMultiplicity(PlanePoint),
    #[error("multiplicity overflow while merging duplicate points")]
    MultiplicityOverflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("instance too large for exhaustive search: {size} points (limit {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad input data rather than bad usage or a
    /// failure inside the library.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Diagram(_) | Error::Parse { .. } | Error::Io { .. } | Error::Json(_)
        )
    }
}
