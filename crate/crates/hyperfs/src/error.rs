use crate::series::EvalResult;

/// Errors shared by every evaluation layer.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Input outside the admissible region of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Lower hypergeometric parameter hit a nonpositive integer.
    #[error("pole error: {0}")]
    Pole(String),

    /// Series or quadrature budget exhausted before the tolerance was met.
    /// Carries the partial result so callers can still inspect it.
    #[error("did not converge: value so far {}, error estimate {}, {} terms", partial.value, partial.error_estimate, partial.terms_used)]
    NonConvergent { partial: EvalResult },

    /// Field point coincides with the pole of the fundamental solution.
    #[error("coincident pole: field point equals the source point")]
    CoincidentPole,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
