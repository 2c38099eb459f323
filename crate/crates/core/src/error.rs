//! Error types shared by every module in the crate.

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the compute layer.
///
/// `Argument` is caller error (bad dimensions, invalid grids, malformed Pauli
/// words). `Numeric` covers overflow and failed accuracy contracts.
/// `Consistency` flags disagreement between two routes that must agree (a bug
/// indicator, not user error). `Precondition` is a violated operation
/// precondition detected at run time, and `Fit` covers degenerate regression
/// inputs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("eigensolver did not converge after {iterations} iterations ({deflated}/{dim} eigenvalues deflated)")]
    EigenConvergence {
        iterations: usize,
        deflated: usize,
        dim: usize,
        /// Eigenvalues already deflated when the iteration cap was hit.
        partial: Vec<Complex64>,
    },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fit failed: {0}")]
    Fit(String),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
