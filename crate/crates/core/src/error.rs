use std::fmt;

use thiserror::Error;

/// Pipeline stage an error surfaced in. Used for reporting and for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Plan,
    Simulate,
    Reconstruct,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Plan => "plan",
            Stage::Simulate => "simulate",
            Stage::Reconstruct => "reconstruct",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller misuse: mismatched sizes, out-of-range indices, invalid configuration.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("numeric error: {what} (after {iterations} iterations, last estimate {last})")]
    NonConvergence {
        what: String,
        iterations: usize,
        last: f64,
    },

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("vanishing singular value sigma_{order} = {value:e} at k = {k}")]
    VanishingSingularValue { order: i32, k: f64, value: f64 },

    #[error("plan error: {0}")]
    Plan(String),

    #[error("singular K block m = {block} (minimum dominance margin {min_margin:e})")]
    SingularBlock {
        block: usize,
        min_margin: f64,
        margins: Vec<f64>,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn at(self, stage: Stage) -> Self {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// Innermost stage label, if any.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
