use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} is undefined at x = {x}")]
    Domain { what: &'static str, x: f64 },

    #[error("degree {degree} exceeds the limit {limit} of the explicit representation")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("tridiagonal eigensolver did not converge for order {order} (theta = {theta})")]
    ConvergenceFailure { order: usize, theta: f64 },

    #[error("function value {value} at node x = {x} is not finite")]
    Evaluation { x: f64, value: f64 },

    #[error("derivative oracle failed at x = {x} for order {order}")]
    DerivativeOracle { x: f64, order: usize },

    #[error("Mittag-Leffler E({alpha}, {beta})({z}) could not be evaluated to certified accuracy")]
    NoConvergence { alpha: f64, beta: f64, z: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl Error {
    /// `true` for errors caused by the caller's input rather than by a
    /// numerical routine failing.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::Domain { .. } | Error::DegreeTooLarge { .. })
    }
}
