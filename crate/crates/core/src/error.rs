//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("diagonal form has a zero entry at index {0}")]
    ZeroEntry(usize),
    #[error("diagonal form must have at least one entry")]
    EmptyForm,
    #[error("no anisotropic representative of dimension {dim} has the requested invariants")]
    Unrealizable { dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not in the symplectic Lie algebra")]
    NotInAlgebra,
    #[error("{0} is not a triangular number")]
    NotTriangular(u64),
    #[error("problem size exceeds the supported cap: {0}")]
    TooLarge(String),
    #[error("partition is not a Lusztig or extended Lusztig partition")]
    WrongSupport,
    #[error("form dimension {0} exceeds the supported bound of 4")]
    UnsupportedDimension(usize),
    #[error("class function is identically zero")]
    ZeroFunction,
    #[error("vertex index {index} is out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invariant classification disagrees with the conjugation oracle: {0}")]
    OracleMismatch(String),
}
