//! Engine error type.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Highest weight is not a non-increasing integer tuple of length >= 2.
    InvalidHighestWeight(String),
    /// Generator or matrix-unit index out of range.
    InvalidIndex(String),
    /// Modules in a collection do not share the same rank.
    RankMismatch { expected: usize, found: usize },
    /// Component count does not match the quiver rank.
    ComponentMismatch { expected: usize, found: usize },
    /// Evaluation points of a fusion input coincide.
    CoincidentPoints,
    /// A weight space expected to be one-dimensional is not.
    WeightSpaceDimension { expected: usize, found: usize },
    /// A vector expected to be weight-homogeneous mixes weights.
    NonHomogeneous,
    /// An element lies outside the strictly upper-triangular current part.
    NotRaising,
    /// Stored entry budget exceeded; the computation was aborted.
    MemoryCap { entries: usize, cap: usize },
    /// A module invariant failed validation.
    ModuleInvariant(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::InvalidHighestWeight(s) => write!(f, "invalid highest weight: {s}"),
            CoreError::InvalidIndex(s) => write!(f, "invalid index: {s}"),
            CoreError::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            CoreError::ComponentMismatch { expected, found } => {
                write!(f, "component count mismatch: expected {expected}, found {found}")
            }
            CoreError::CoincidentPoints => write!(f, "evaluation points must be pairwise distinct"),
            CoreError::WeightSpaceDimension { expected, found } => {
                write!(f, "weight space has dimension {found}, expected {expected}")
            }
            CoreError::NonHomogeneous => write!(f, "vector is not weight-homogeneous"),
            CoreError::NotRaising => write!(f, "element is not in the raising current part"),
            CoreError::MemoryCap { entries, cap } => {
                write!(f, "entry budget exceeded: {entries} stored, cap {cap}")
            }
            CoreError::ModuleInvariant(s) => write!(f, "module invariant violated: {s}"),
        }
    }
}

impl core::error::Error for CoreError {}

pub type Result<T> = core::result::Result<T, CoreError>;
