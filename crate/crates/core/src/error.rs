use thiserror::Error;

use crate::hyperbolic::IsometryKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("generator index {handle} at byte {offset} exceeds genus {genus}")]
    GeneratorOutOfRange {
        offset: usize,
        handle: usize,
        genus: usize,
    },

    #[error("genus must be at least 2, got {0}")]
    Genus(usize),

    #[error("level undefined for e")]
    LevelOfIdentity,

    #[error("vector length {found} does not match 2g = {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("expected a hyperbolic isometry, got {0:?}")]
    NotHyperbolic(IsometryKind),

    #[error("representation fails tolerance: relator residual {residual:e} > {tolerance:e}")]
    Construction { residual: f64, tolerance: f64 },

    #[error("geodesics of {0} and {1} coincide (common primitive root)")]
    Coincident(String, String),

    #[error("near-tangential crossing between {0} and {1} (|sin| = {2:e})")]
    Tangential(String, String, f64),

    #[error("bracket is undefined for the trivial class")]
    TrivialClass,

    #[error("coefficient {value} of {class} is not divisible by {divisor}")]
    Integrality {
        class: String,
        value: i64,
        divisor: i64,
    },

    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
