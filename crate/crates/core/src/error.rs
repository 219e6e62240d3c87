use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("weight |xi|^(2 alpha - 1)/2 is singular at xi = 0 for alpha = {alpha} < 1/2")]
    SingularWeight { alpha: f64 },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("xi-quadrature misses its tolerance: achieved relative error {achieved:.3e}, target {target:.3e}")]
    QuadratureTolerance { achieved: f64, target: f64 },

    #[error("adaptive integration did not converge: estimate {estimate:.17e}, error bound {error_bound:.3e}")]
    IntegrationNonConvergence { estimate: f64, error_bound: f64 },

    #[error("time grid is not uniform at sample {index}")]
    NonUniformGrid { index: usize },

    #[error("singular matrix: zero pivot in column {column}")]
    SingularMatrix { column: usize },

    #[error("non-finite value in state at t = {time}")]
    NonFinite { time: f64 },

    #[error("dense eigensolution refused: dimension {dimension} exceeds limit {limit}")]
    TooLarge { dimension: usize, limit: usize },

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error("decay fit: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn check_len(context: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            got,
        })
    }
}
