use thiserror::Error;

use crate::table::ElementId;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input at line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("operation is not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative {
        i: ElementId,
        j: ElementId,
        k: ElementId,
    },

    #[error("subset is not closed under the product: {a}*{b} leaves it")]
    NotClosed { a: ElementId, b: ElementId },

    #[error("element {element} is out of range for order {order}")]
    OutOfRange { element: usize, order: usize },

    #[error("order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("group of order {order} exceeds the configured maximum {max}")]
    GroupTooLarge { order: u128, max: u128 },

    #[error("automorphism search exceeded its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("automorphism does not preserve class sizes at transversal element {a}")]
    NotExtendable { a: ElementId },

    #[error("not an automorphism: ({x}*{y}) image differs from the product of images")]
    NotAnAutomorphism { x: ElementId, y: ElementId },

    #[error("fiber sizes must be positive and match the base order: {0}")]
    InvalidFiberSizes(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by configured size or search bounds.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::OrderTooLarge { .. }
                | Error::GroupTooLarge { .. }
                | Error::SearchBudgetExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
