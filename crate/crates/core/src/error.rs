use thiserror::Error;

use crate::states::Side;

/// Errors raised by the covariance-matrix toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("covariance matrix must be square with even dimension, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },

    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("unsupported number of modes: {0}")]
    UnsupportedModes(usize),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("covariance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("covariance matrix is not physical: smallest symplectic eigenvalue {0}")]
    NotPhysical(f64),

    #[error("negative discriminant {0:e} in the symplectic eigenvalue formula")]
    NegativeDiscriminant(f64),

    #[error("symplectic spectrum is not real (residual {0:e})")]
    ComplexSpectrum(f64),

    #[error("matrix is not symplectic (residual {0:e})")]
    NotSymplectic(f64),

    #[error("direction must have unit norm, got |m| = {0}")]
    NonUnitDirection(f64),

    #[error("state is not in the isotropic class (residual {0:e})")]
    NotIsotropic(f64),

    #[error("state is not a symmetric two-mode state")]
    NotSymmetricState,

    #[error("both generators act on mode {0:?}")]
    SameSide(Side),

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("invalid entanglement threshold {0}, expected 0.5 or 1")]
    InvalidThreshold(f64),

    #[error("optimizer did not converge within {0} iterations")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
