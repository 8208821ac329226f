use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Each variant names the invariant or precondition that failed so that the
/// CLI can surface it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:.3e})")]
    RootsNotConverged {
        iterations: usize,
        max_residual: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular integrand: {0}")]
    SingularIntegrand(String),

    #[error("non-general configuration: {0}")]
    NonGeneral(String),

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("ODE step size underflow at s = {s} (h = {h:.3e})")]
    StepUnderflow { s: f64, h: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("undersampled curve: phase jump {jump:.3} rad at sample {index}")]
    Undersampled { index: usize, jump: f64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialization(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
