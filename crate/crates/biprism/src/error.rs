use thiserror::Error;

/// Errors surfaced by geometry construction, fitting, and estimators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grating period {got:.6e} m does not match lambda/(2*alpha0) = {expected:.6e} m")]
    PeriodMismatch { got: f64, expected: f64 },

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("oracle resolution too coarse: {0} samples per slit (need >= 32)")]
    OracleResolution(usize),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
