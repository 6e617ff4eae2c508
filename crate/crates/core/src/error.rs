use std::path::PathBuf;

use thiserror::Error;

use crate::spatial::Point2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("geometric median needs at least one point")]
    EmptyPointSet,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("Weiszfeld iteration did not converge after {iterations} iterations (last iterate {last})")]
    NotConverged { last: Point2, iterations: usize },

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("invalid candidate set: {0}")]
    InvalidCandidates(String),

    #[error("invalid ballot configuration: {0}")]
    InvalidBallotConfig(String),

    #[error("invalid seat allocation input: {0}")]
    InvalidAllocation(String),

    #[error("gini coefficient is undefined for {0}")]
    InvalidGiniInput(String),

    #[error("sigma must be positive, got {0}")]
    InvalidSigma(f64),

    #[error("scenario {source_name}: {message}")]
    Scenario { source_name: String, message: String },

    #[error("system `{0}` is already registered")]
    DuplicateSystem(String),

    #[error("unknown electoral system `{0}`")]
    UnknownSystem(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn scenario(source_name: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Scenario {
            source_name: source_name.into(),
            message: message.into(),
        }
    }
}
