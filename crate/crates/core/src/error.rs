use thiserror::Error;

/// Errors reported by the phase-space reflection toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state index {index} exceeds basis size {max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("quadrature failed to converge (error estimate {estimate:e})")]
    Quadrature { estimate: f64 },

    #[error("integration grid too small: boundary magnitude {boundary:e} exceeds {threshold:e}")]
    GridTooSmall { boundary: f64, threshold: f64 },

    #[error("spectral sum truncated with tail estimate {tail:e}")]
    Truncation { tail: f64 },

    #[error("Airy width {gamma:e} is not positive; energy shell is not convex here")]
    NonConvex { gamma: f64 },

    #[error("Hamiltonian has no spherical normal form: {0}")]
    NormalForm(String),

    #[error("shells are tangent (|{{H+,H-}}| = {bracket:e}); use the Airy caustic treatment")]
    Caustic { bracket: f64 },

    #[error("projection onto the section failed for {failed} of {total} directions")]
    Projection { failed: usize, total: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(invalid(name, format!("must be positive and finite, got {value}")))
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(invalid(name, format!("must be finite, got {value}")))
    }
}
