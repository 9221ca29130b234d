use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} positions, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {arity} exceeds the configured cap of {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("bad literal {literal:?} at position {position}")]
    BadLiteral { literal: String, position: usize },

    #[error("invalid function spec {spec:?}: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("function is not monotone")]
    NotMonotone,

    #[error("x -> f(x xor {0}) is not monotone")]
    InvalidOrientation(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("tree parse error at {path}: {reason}")]
    TreeParse { path: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
