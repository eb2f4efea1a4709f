use thiserror::Error;

use crate::roots::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("sublattice has infinite index (determinant 0)")]
    InfiniteQuotient,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rank {rank} is not valid for type {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("vertex index {index} out of range 1..={rank}")]
    VertexOutOfRange { index: usize, rank: usize },
    #[error("condition violated: vertices {uncircled:?} of Δ_r are not circled")]
    ConditionViolated { uncircled: Vec<usize> },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("rewrite relations are cyclic through [{0}]")]
    CyclicRelations(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
