//! Diagrams of two complexes joined by algebraic links, the output complex
//! they produce, and exact checks of the surrounding structure.

mod checks;
mod complex;
mod diagram;
pub mod family;
mod space;
mod twisted;

pub use checks::*;
pub use complex::{ComplexSpec, HodgeDecomposition, Homotopy};
pub use diagram::{BGGDiagram, Bgg, Lifted};
pub use space::{Fiber, Space};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BggError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("row {row} is not a complex at index {index}")]
    NotAComplex { row: String, index: usize },
    #[error("link {index} does not map into the target fiber")]
    LinkLeavesFiber { index: usize },
    #[error("anticommutativity fails at index {index} ({nonzeros} nonzero entries, max |entry| {max_abs})")]
    AnticommutativityViolation { index: usize, nonzeros: usize, max_abs: String },
    #[error("no valid J: injective {injective:?}, surjective {surjective:?}")]
    NoValidJ { injective: Vec<bool>, surjective: Vec<bool> },
    #[error("S = DK - KD fails at index {index}")]
    KConditionViolation { index: usize },
    #[error("S ker D~ is not contained in ran D at index {index}")]
    SnrViolation { index: usize },
    #[error("diagram {0} has a row without a chain homotopy")]
    MissingHomotopy(String),
}

impl BggError {
    /// Short machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            BggError::ShapeMismatch(_) => "ShapeMismatch",
            BggError::NotAComplex { .. } => "NotAComplex",
            BggError::LinkLeavesFiber { .. } => "LinkLeavesFiber",
            BggError::AnticommutativityViolation { .. } => "AnticommutativityViolation",
            BggError::NoValidJ { .. } => "NoValidJ",
            BggError::KConditionViolation { .. } => "KConditionViolation",
            BggError::SnrViolation { .. } => "SnrViolation",
            BggError::MissingHomotopy(_) => "MissingHomotopy",
        }
    }
}
