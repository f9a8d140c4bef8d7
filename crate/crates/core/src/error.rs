use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("n = {n} outside supported range {min}..={max}")]
    SizeLimit { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{p} is not a prime")]
    NotPrime { p: u64 },

    #[error(
        "phase step of {step:.4} rad between samples {at} and {next} exceeds the lifting margin; \
         increase the sample count"
    )]
    LiftingResolution { at: usize, next: usize, step: f64 },

    #[error("path endpoints differ by {deviation:.3e}, beyond tolerance {tolerance:.3e}")]
    CompositionMismatch { deviation: f64, tolerance: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file {path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("json error at {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
