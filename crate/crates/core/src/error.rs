//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while building shapes, tableaux or
/// polynomials, or while running one of the verification routes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("variable index {index} out of range 1..={n}")]
    VariableIndex { index: usize, n: usize },
    #[error("monomial of nonzero total degree or negative consecutive-ratio exponent: {0:?}")]
    NotInConsecutiveRatios(Vec<i32>),
    #[error("division by 1 - m: {0}")]
    Division(String),
    #[error("invalid Grassmannian context k={k}, n={n}")]
    Context { k: usize, n: usize },
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("invalid tableau: {0}")]
    Tableau(String),
    #[error("jeu de taquin: {0}")]
    Jdt(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
