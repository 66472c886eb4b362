//! Exact counts, Monte Carlo estimates and limiting eigenvalue densities for
//! random `n x n` integer matrices with entries uniform in `{-k, ..., k}`.
//!
//! Exact arithmetic is generic over [`ExactInt`] and the closed-form curves
//! over [`Real`]; the aliases below fix the common choices.

pub mod asymptotics;
pub mod counts;
pub mod linalg;
pub mod monte_carlo;
pub mod scalar;

pub use linalg::{GershgorinDisk, IntMatrix, IntPolynomial, LinalgError, MinorIdentity};
pub use scalar::{ExactInt, Real};

/// Machine-word matrices; determinants promote internally when needed.
pub type Matrix = IntMatrix<i64>;
/// Arbitrary-precision matrices.
pub type BigMatrix = IntMatrix<num_bigint::BigInt>;
pub type Polynomial = IntPolynomial<i64>;
pub type BigPolynomial = IntPolynomial<num_bigint::BigInt>;

pub type TheoryConstants = asymptotics::TheoryConstants<f64>;
