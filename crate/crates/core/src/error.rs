//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid gramian: {0}")]
    InvalidGramian(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid region: fiber index {0} is not on the grid")]
    InvalidRegion(usize),
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),
    #[error("invalid subgroup element: {0}")]
    InvalidSubgroupElement(String),
    #[error("profile evaluation failed: {0}")]
    ProfileEvaluation(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
