//! Scalar abstractions.
//!
//! Exact integer code is generic over [`ExactInt`], implemented for `i64`,
//! `i128` and [`BigInt`]. Closed-form densities and quadrature are generic
//! over [`Real`] (`f32` and `f64`).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, Signed, ToPrimitive,
};

/// An exact signed integer type.
///
/// Fixed-width implementors report their width through [`ExactInt::BITS`];
/// arithmetic on them goes through the `Checked*` traits so an overflow is
/// observed rather than wrapped.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + Integer
    + Roots
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Bit width including the sign bit, `None` for arbitrary precision.
    const BITS: Option<u32>;

    fn to_big(&self) -> BigInt;

    /// Narrowing conversion; `None` when the value does not fit.
    fn from_big(value: &BigInt) -> Option<Self>;

    fn from_i128_exact(value: i128) -> Option<Self> {
        Self::from_i128(value)
    }
}

impl ExactInt for i64 {
    const BITS: Option<u32> = Some(64);

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_big(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }
}

impl ExactInt for i128 {
    const BITS: Option<u32> = Some(128);

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_big(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }
}

impl ExactInt for BigInt {
    const BITS: Option<u32> = None;

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}

/// A floating-point scalar for the limiting densities.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Lossless for every literal used in this crate when `Self = f64`.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narrowing_reports_overflow() {
        let big = BigInt::from(i64::MAX) + 1;
        assert_eq!(i64::from_big(&big), None);
        assert_eq!(i128::from_big(&big), Some(i64::MAX as i128 + 1));
        assert_eq!(BigInt::from_big(&big), Some(big));
    }

    #[test]
    fn checked_ops_detect_overflow() {
        assert_eq!(CheckedMul::checked_mul(&i64::MAX, &2), None);
        assert!(BigInt::from(i64::MAX).checked_mul(&BigInt::from(2)).is_some());
    }
}
