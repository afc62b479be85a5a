use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid depth {0}: must be finite and positive")]
    InvalidDepth(f64),

    #[error("point is behind the camera (z = {0})")]
    BehindCamera(f64),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("shape mismatch: expected {expected_width}x{expected_height}, got {width}x{height}")]
    Shape {
        expected_width: usize,
        expected_height: usize,
        width: usize,
        height: usize,
    },

    #[error("no valid pixels to evaluate")]
    EmptyEvaluation,

    #[error("recall is undefined: no ground-truth objects are counted")]
    UndefinedRecall,

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("model ids do not align: missing {missing:?}, unexpected {unexpected:?}")]
    Alignment {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("truncated point cloud: {0} bytes is not a multiple of 16")]
    Truncation(usize),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("frame {index}: {source}")]
    Frame {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn in_frame(self, index: usize) -> Self {
        Error::Frame {
            index,
            source: Box::new(self),
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping frame and file context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Frame { source, .. } | Error::File { source, .. } => source.root(),
            other => other,
        }
    }
}
