use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A real-valued input was required but the function has a nonzero
    /// imaginary part beyond tolerance.
    #[error("function is not real-valued (realness defect {defect:.3e})")]
    NotRealValued { defect: f64 },

    /// A quadrature node produced a non-finite sample.
    #[error("non-finite sample at r={r}, theta={theta}")]
    NonFiniteSample { r: f64, theta: f64 },

    /// Adaptive refinement hit its node caps before the increment dropped
    /// below tolerance. Carries the last value and increment so callers can
    /// degrade gracefully with honest error bars.
    #[error("quadrature did not converge (value {value}, err_est {err_est}, N={n}, M={m})")]
    NoConvergence {
        value: f64,
        err_est: f64,
        n: usize,
        m: usize,
    },

    /// A parameter is outside its documented domain.
    #[error("{param} = {value} out of range ({reason})")]
    OutOfRange {
        param: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// An operation precondition was violated.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// Both inputs of a two-function formula vanish at the evaluation point.
    #[error("degenerate zero: both functions vanish at the evaluation point")]
    DegenerateZero,

    /// A holomorphic representation was required.
    #[error("expected a holomorphic function (taylor_pair with h = 0, or a monomial)")]
    NotHolomorphic,

    /// A JSON function descriptor failed to parse or validate.
    #[error("invalid function descriptor: {0}")]
    InvalidDescriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
