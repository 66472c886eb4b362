//! Exact integer linear algebra: determinants, minors, adjugates,
//! characteristic polynomials, integer eigenvalues and Gershgorin disks.
//!
//! Everything here is exact. Methods come in pairs where overflow of the
//! scalar type is possible: `try_*` returns [`LinalgError::Overflow`], the
//! plain form panics, and `*_big` always succeeds.

mod det;
mod matrix;
mod poly;
mod spectral;

use thiserror::Error;

pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use spectral::{GershgorinDisk, MinorIdentity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {} entries for a {n}x{n} matrix, got {got}", n * n)]
    EntryCount { n: usize, got: usize },
    #[error("rows have inconsistent lengths")]
    NotSquare,
    #[error("entry {entry} exceeds bound {bound}")]
    EntryOutOfBound { entry: String, bound: u64 },
    #[error("index ({i}, {j}) out of range for {n}x{n} matrix")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("{op} requires dimension {required}, got {n}")]
    Dimension {
        op: &'static str,
        n: usize,
        required: &'static str,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix has complex eigenvalues")]
    ComplexEigenvalues,
    #[error("result does not fit the scalar type")]
    Overflow,
}
