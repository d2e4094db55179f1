use thiserror::Error;

/// Errors raised by the numerical routines and the shape/set constructors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid interval set: {0}")]
    InvalidSet(String),

    #[error("competitor is not contained in the shape ({violations} boundary probes outside)")]
    Containment { violations: usize },

    #[error("root bracket [{lo}, {hi}] does not enclose a sign change")]
    Bracket { lo: f64, hi: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
