//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("position {position} out of range 1..={size}")]
    PositionOutOfRange { position: usize, size: usize },

    #[error("slot (position {position}, value {value}) out of range for size {size}")]
    SlotOutOfRange {
        position: usize,
        value: u32,
        size: usize,
    },

    #[error("permutation {0} is not simple")]
    NotSimple(String),

    #[error("size {size} is below the minimum {min} for this operation")]
    SizeTooSmall { size: usize, min: usize },

    #[error("half-size m must be at least 2, got {0}")]
    InvalidM(usize),

    #[error("basis element {0} is not simple")]
    NonSimpleBasisElement(String),

    #[error("basis element {0} is trivial (size at most 2)")]
    TrivialBasisElement(String),

    #[error("{pattern} is not a proper pattern of {host}")]
    NotAPattern { pattern: String, host: String },

    #[error("generation passed level {bound} without terminating; supply a cap")]
    CapRequired { bound: usize },

    #[error("unknown property id: {0}")]
    UnknownProperty(String),

    #[error("size {requested} exceeds the exhaustive-check bound {max}")]
    SizeGuard { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
