//! Exact desk-scale computations around nilpotent orbits of symplectic Lie
//! algebras over prime fields: quadratic-form classification (finite and,
//! symbolically, p-adic), signed orbit sums and their finite Fourier
//! transforms, affine C_n vertex combinatorics, and the triangular-number
//! counting identities behind the eigenspace census.
//!
//! Everything arithmetic is exact (integers mod p); the only floating-point
//! values are complex character sums, compared against
//! [`DEFAULT_TOLERANCE`].

pub mod error;
pub mod ffield;
pub mod liealg;
pub mod lusztig;
pub mod matrix;
pub mod orbits;
pub mod padic;
pub mod qforms;

mod jsonutil;

pub use error::{Error, Result};
pub use ffield::FieldSpec;
pub use liealg::SymplecticPartition;
pub use lusztig::{Algebra, ClassFunction, EigenReport};
pub use matrix::FpMatrix;
pub use orbits::{OrbitAtlas, OrbitLabel};
pub use padic::{CensusRow, LusztigDistribution, PadicLusztigDescriptor};
pub use qforms::{FiniteFormClass, PadicFormClass, PadicSquareClass, Sign};

/// Absolute tolerance for all complex/floating comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
