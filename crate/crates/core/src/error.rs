use thiserror::Error;

use crate::portrait::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("criterion undefined for an empty arc (a = b = {0})")]
    EmptyArc(String),

    #[error("invalid portrait: {}", join_violations(.0))]
    InvalidPortrait(Vec<Violation>),

    #[error("enumeration too large: {configurations} configurations exceeds cap {cap}")]
    EnumerationTooLarge { configurations: u128, cap: u128 },

    #[error("extension choice does not cover exactly the jump boundaries: {0}")]
    ExtensionMismatch(String),

    #[error("configuration degree {0} is not an integer")]
    NonIntegralDegree(String),

    #[error("invalid strand operation: {0}")]
    StrandConflict(String),

    #[error("arrangement is not generic: {}", .0.join("; "))]
    NonGeneric(Vec<String>),

    #[error("degenerate arrangement: {0}")]
    DegenerateArrangement(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("unknown gallery entry {0:?}")]
    UnknownGallery(String),

    #[error("closed-form self-check failed for {tag}: residual {residual}")]
    SelfCheck { tag: String, residual: String },

    #[error("sampler range must be non-empty")]
    EmptyRange,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
