use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |M - M†| entry = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("overlap magnitude {magnitude} exceeds 1")]
    OverlapOutOfRange { magnitude: f64 },

    #[error("singular geometry: separation d = {d} must exceed displacement L = {l}")]
    SingularGeometry { d: f64, l: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("|K|² = {k_sqr} exceeds 1/4")]
    InvalidK { k_sqr: f64 },

    #[error("invalid measurement outcome {0} (expected 0..=3)")]
    InvalidOutcome(u8),

    #[error("horizon {horizon} is shorter than ten phase periods ({required})")]
    HorizonTooShort { horizon: f64, required: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
