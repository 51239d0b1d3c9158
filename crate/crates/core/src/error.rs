use thiserror::Error;

use crate::biobject::Biarity;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("d∘d ≠ 0 starting in degree {degree} (basis element {label})")]
    SquareZeroViolation { degree: i32, label: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid basis label {0:?}")]
    InvalidLabel(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("biarity ({}, {}) exceeds truncation bound {bound}", .biarity.0, .biarity.1)]
    TruncationExceeded { biarity: Biarity, bound: usize },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("path-object factorization failed: {0}")]
    FactorizationFailure(String),

    #[error("element leaves the sub-prop in biarity ({}, {}): {detail}", .biarity.0, .biarity.1)]
    NotClosed { biarity: Biarity, detail: String },

    #[error("no lift for generator {generator}: {detail}")]
    NoSolution { generator: String, detail: String },

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("zigzag violation at {generator} along {arrow}")]
    ZigzagViolation { generator: String, arrow: String },

    #[error("compatibility failure: {0}")]
    CompatibilityFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
