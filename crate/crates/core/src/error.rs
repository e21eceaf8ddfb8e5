//! Error type shared across the engine.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coefficient was requested below the accuracy floor of a symbol.
    #[error("accuracy floor too shallow: degree {needed} requested but symbol is only accurate down to {floor}")]
    Accuracy { needed: i32, floor: i32 },

    /// The zero symbol has no order or principal symbol.
    #[error("order of the zero symbol is undefined")]
    UndefinedOrder,

    /// An operation was called with arguments outside its contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// A linear system that the obstruction theory guarantees to be solvable
    /// failed to solve; this indicates an engine bug, not bad input.
    #[error("structural error: {0}")]
    Structural(String),

    /// A cocycle pullback produced mode monomials outside the documented
    /// class decomposition.
    #[error("extraction error: {0}")]
    Extraction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
