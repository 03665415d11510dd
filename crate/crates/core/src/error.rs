use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("missing constant `{constant}` required by {required_by}")]
    MissingConstant {
        constant: &'static str,
        required_by: &'static str,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("power iteration did not converge within {iterations} iterations (residual {residual:e})")]
    Numerical { iterations: usize, residual: f64 },

    /// The inner solver hit its iteration cap before certifying its gap.
    #[error("inner budget exhausted after {} iterations (phi {:e}, eta {:e})", .0.iterations, .0.phi, .0.eta)]
    Budget(Box<BudgetExhausted>),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// State carried out of an inner solve that ran out of iterations.
#[derive(Debug, Clone)]
pub struct BudgetExhausted {
    pub iterations: usize,
    pub phi: f64,
    pub eta: f64,
    pub best: Vec<f64>,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Dimension { expected, got });
    }
    Ok(())
}
