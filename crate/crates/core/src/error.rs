use thiserror::Error;

/// Errors raised by the approximation library.
///
/// The variants are grouped so that callers (the CLI in particular) can map
/// them onto distinct exit statuses: configuration problems, violated
/// degree thresholds, and numerical trouble.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} outside grid 0..={n_max}")]
    Index { index: usize, n_max: usize },

    #[error("degree {degree} exceeds the admissible maximum {max}")]
    Degree { degree: usize, max: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degree threshold violated: need {required} <= n(alpha, N) = {threshold}")]
    Threshold { required: f64, threshold: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("ill-conditioned Gram matrix (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("no derivative bound available for order {order} of `{function}`")]
    MissingDerivativeBound { function: String, order: usize },

    #[error("function `{function}` returned a non-finite value at t = {t}")]
    Evaluation { function: String, t: f64 },

    #[error("numerical instability: {0}")]
    Instability(String),
}

impl Error {
    /// True for errors caused by a violated degree threshold or a similar
    /// hypothesis of the worst-case bound.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::Threshold { .. })
    }

    /// True for errors caused by floating-point limitations rather than bad
    /// input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned { .. } | Error::Instability(_) | Error::Evaluation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
