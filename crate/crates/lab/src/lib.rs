//! Exhaustive finite verifiers for the partition theorems behind big Ramsey degrees.
//!
//! Every check has the same shape: a finite set of items is colored, and a family of targets
//! (sets of items) is searched for one on which the coloring is constant. The engine in
//! [`search`] looks for a coloring with no monochromatic target.

pub mod report;
pub mod search;
pub mod space;
pub mod theorems;
pub mod verify;

use thiserror::Error;

pub use report::{Coloring, ColoredItem, SearchStats, Verdict, WitnessReport};
pub use search::{Budget, Instance};
pub use space::{strong_subtrees, ColoringSpace, Ground, Item, Target};
pub use theorems::{hl_finite, hl_threshold, milliken_finite, milliken_finite_with, ramsey_check};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid budget: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(#[from] bigdeg_core::CoreError),
}

pub type Result<T> = std::result::Result<T, LabError>;
