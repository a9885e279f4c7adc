use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("trajectory has zero arc length")]
    ZeroLength,
    #[error("degenerate trajectory: all points coincide")]
    DegenerateTrajectory,
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("context number {lambda} is outside [1..{n}]")]
    InvalidLambda { lambda: usize, n: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("degenerate geometry while placing point {point}: {reason}")]
    DegenerateGeometry { point: usize, reason: String },
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("class {class} has {count} samples, at least {required} required")]
    InsufficientSamples {
        class: usize,
        count: usize,
        required: usize,
    },
    #[error("SMO did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("parameter grid is empty")]
    EmptyGrid,
    #[error("requested {requested} classes but only {available} are available")]
    InsufficientClasses { requested: usize, available: usize },
    #[error("missing file: {}", .0.display())]
    MissingFile(PathBuf),
    #[error("{}: row {row}, column {column}: {message}", .path.display())]
    Parse {
        path: PathBuf,
        row: usize,
        column: usize,
        message: String,
    },
    #[error("unrecognized dataset layout: {0}")]
    UnrecognizedLayout(String),
    #[error("model archive: {0}")]
    Archive(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures caused by input data rather than by configuration.
    pub fn is_data_error(&self) -> bool {
        if let Error::Context { source, .. } = self {
            return source.is_data_error();
        }
        !matches!(
            self,
            Error::InvalidConfig(_)
                | Error::InvalidLambda { .. }
                | Error::EmptyGrid
                | Error::InsufficientClasses { .. }
        )
    }

    /// Wraps the error with a description of where it happened.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
