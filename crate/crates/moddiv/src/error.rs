use thiserror::Error;

/// Errors surfaced by parsing, solving and enumeration.
///
/// Arithmetic on mismatched ring elements is a programming error and panics
/// instead; everything that can fail on valid user input goes through here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("unsupported ring class for {op}: {ring}")]
    Unsupported { op: &'static str, ring: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("cannot enumerate an infinite ring ({0})")]
    InfiniteRing(String),

    #[error("enumeration budget exceeded: {what} needs {needed} but the budget is {budget}")]
    Budget {
        what: &'static str,
        needed: String,
        budget: u64,
    },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
