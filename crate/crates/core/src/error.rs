use thiserror::Error;

/// Errors produced by the force library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A Fresnel denominator vanished exactly.
    #[error("reflection pole: {0}")]
    Pole(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("no sign change of the curve difference in [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Rejects NaN and values that are not strictly positive.
pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {value}")))
    }
}
