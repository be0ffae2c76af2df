use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid function spec: {0}")]
    Semantic(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular point at x = {0}")]
    Singular(f64),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("integrand fails the decay screen: {0}")]
    Divergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
