//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by any module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Window sides must be positive and finite.
    #[error("invalid window: {0}")]
    InvalidWindow(String),

    /// A point lies outside the half-open window `[0,width) x [0,height)`.
    #[error("point ({x}, {y}) lies outside the {width} x {height} window")]
    PointOutsideWindow {
        x: f64,
        y: f64,
        width: f64,
        height: f64,
    },

    /// Distance grids must be strictly increasing, positive and capped at
    /// half the shorter window side.
    #[error("invalid distance grid: {0}")]
    InvalidGrid(String),

    /// A parameter violates its stated domain.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// A thinning produced an empty sub-pattern; the bivariate statistics
    /// divide by `n1 * n2` and refuse to run.
    #[error("degenerate split: n1 = {n1}, n2 = {n2}; both sub-patterns need at least one event (re-run with a different seed)")]
    DegenerateSplit { n1: usize, n2: usize },

    /// Too few replicates for the requested envelope coverage.
    #[error("{n_sims} simulations cannot support coverage {coverage}; need at least {required}")]
    TooFewSims {
        n_sims: usize,
        coverage: f64,
        required: usize,
    },

    /// A pattern file failed to parse; `line` is 1-based.
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Unknown model label on the command line.
    #[error("unknown model '{0}' (expected poisson, thomas or hardcore)")]
    UnknownModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::DegenerateSplit { .. } => 3,
            _ => 1,
        }
    }
}
