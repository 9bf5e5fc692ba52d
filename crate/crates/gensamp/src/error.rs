//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the reconstruction pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown wavelet family `{0}` (expected haar, db2, db4, db6, db2t or db3t)")]
    UnknownFamily(String),

    #[error("invalid filter taps: {0}")]
    InvalidTaps(String),

    #[error("invalid basis index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid sampling scheme: {0}")]
    InvalidScheme(String),

    #[error(
        "model support [{lo}, {hi}] is not contained in the scheme window [{t1_neg}, {t2}]"
    )]
    SupportViolation {
        lo: f64,
        hi: f64,
        t1_neg: f64,
        t2: f64,
    },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operation requires an exact wavelet combination model")]
    NotWaveletCombo,

    #[error("least-squares problem is ill-posed below working precision (sigma_min = {sigma_min:.3e})")]
    IllPosed { sigma_min: f64 },

    #[error("stable sampling rate exceeds search cap {cap} (best C_NM found: {best_c:.6})")]
    SsrCapExceeded { cap: usize, best_c: f64 },

    #[error("quadrature grids do not match: {0}")]
    GridMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input file: {0}")]
    MalformedFile(String),

    #[error("linear algebra backend error: {0}")]
    Linalg(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
