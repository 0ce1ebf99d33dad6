use thiserror::Error;

/// Errors produced while building scenes, evaluating links or loading files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },

    #[error("points coincide: {0}")]
    Coincident(&'static str),

    #[error("unknown structure `{0}`")]
    UnknownStructure(String),

    #[error("no reachable cells in region")]
    NoReachableCells,

    #[error("empty structure list")]
    EmptyStructureList,

    #[error("percentile fraction {0} outside [0, 1]")]
    Fraction(f64),

    #[error("failed to parse scenario at `{path}`: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
