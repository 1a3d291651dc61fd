//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by domain construction, counting, sampling, and statistics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("block {block} of the point is zero; block norms must be positive")]
    ZeroBlock { block: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid angular region: {0}")]
    InvalidRegion(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The cutoff is at or below the validity threshold sup(I)^(1/d) of the
    /// closed-form volume and the tiling (the condition making every
    /// simplex dilation factor delta_T(s) positive on log I).
    #[error("cutoff T = {t} is not above the threshold {threshold} (T must exceed sup(I)^(1/d){extra})")]
    BelowThreshold {
        t: f64,
        threshold: f64,
        extra: &'static str,
    },

    #[error("dimension d = {d} unsupported here (requires d >= {min})")]
    UnsupportedDimension { d: usize, min: usize },

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("matrix is singular or numerically degenerate")]
    SingularMatrix,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error(
        "estimated {estimate:.3e} candidate points exceeds the brute-force cap {cap:.1e}; use count_tiled"
    )]
    CandidateCapExceeded { estimate: f64, cap: f64 },

    #[error("insufficient samples: need at least {need}, got {got}")]
    InsufficientSamples { need: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed lattice file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
