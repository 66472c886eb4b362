//! Fraction-free determinants.
//!
//! Bareiss elimination keeps every intermediate equal to a minor of the input,
//! so by Hadamard's inequality each product formed during a step is bounded by
//! `H^2` where `H = prod_i max(1, |row_i|_2)`. Fixed-width arithmetic is used
//! only when `2 log2 H` leaves headroom in the type; otherwise the computation
//! is promoted to `i128` and then to `BigInt`. The checked operations stay in
//! place behind the guard, so a guard miscalculation still cannot wrap.

use num_bigint::BigInt;

use super::{IntMatrix, LinalgError};
use crate::scalar::ExactInt;

/// Bits reserved above the Hadamard estimate.
const HEADROOM_BITS: f64 = 4.0;

/// Bareiss elimination on a row-major `n x n` buffer. `None` on overflow.
pub(crate) fn bareiss<T: ExactInt>(mut a: Vec<T>, n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(pivot) => {
                    for j in 0..n {
                        a.swap(k * n + j, pivot * n + j);
                    }
                    negate = !negate;
                }
                None => return Some(T::zero()),
            }
        }
        let akk = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let lhs = a[i * n + j].checked_mul(&akk)?;
                let rhs = aik.checked_mul(&a[k * n + j])?;
                let num = lhs.checked_sub(&rhs)?;
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i * n + j] = q;
            }
        }
        prev = akk;
    }
    let last = a[n * n - 1].clone();
    Some(if negate { -last } else { last })
}

/// `log2` of the Hadamard bound `prod_i max(1, |row_i|_2)`.
pub(crate) fn hadamard_log2<T: ExactInt>(entries: &[T], n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let sq: f64 = entries[i * n..(i + 1) * n]
                .iter()
                .map(|e| {
                    let v = e.to_f64().unwrap_or(f64::INFINITY);
                    v * v
                })
                .sum();
            0.5 * sq.max(1.0).log2()
        })
        .sum()
}

/// Whether Bareiss on these entries is guaranteed to stay within `bits`.
pub(crate) fn fits_width(h_log2: f64, bits: u32) -> bool {
    h_log2.is_finite() && 2.0 * h_log2 + HEADROOM_BITS <= f64::from(bits - 1)
}

/// Determinant as a `BigInt`, taking the narrowest safe route.
pub(crate) fn det_routed<T: ExactInt>(entries: &[T], n: usize) -> BigInt {
    let h = hadamard_log2(entries, n);
    if let Some(bits) = T::BITS {
        if fits_width(h, bits) {
            if let Some(d) = bareiss(entries.to_vec(), n) {
                return d.to_big();
            }
        }
    }
    if fits_width(h, 128) {
        let wide: Option<Vec<i128>> = entries.iter().map(|e| e.to_i128()).collect();
        if let Some(d) = wide.and_then(|w| bareiss(w, n)) {
            return BigInt::from(d);
        }
    }
    let big: Vec<BigInt> = entries.iter().map(|e| e.to_big()).collect();
    bareiss(big, n).expect("arbitrary precision cannot overflow")
}

impl<T: ExactInt> IntMatrix<T> {
    /// Exact determinant, or [`LinalgError::Overflow`] if it does not fit in `T`.
    pub fn try_det(&self) -> Result<T, LinalgError> {
        T::from_big(&self.det_big()).ok_or(LinalgError::Overflow)
    }

    /// Exact determinant.
    ///
    /// Panics if the value is not representable in `T`; use [`Self::try_det`]
    /// or [`Self::det_big`] when that is possible.
    pub fn det(&self) -> T {
        self.try_det()
            .expect("determinant does not fit the scalar type")
    }

    pub fn det_big(&self) -> BigInt {
        det_routed(self.entries(), self.dim())
    }

    /// The unsigned minor obtained by deleting row `i` and column `j`
    /// (0-based). The sign `(-1)^(i+j)` belongs to the
    /// adjugate.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<T, LinalgError> {
        let minor = self.minor_matrix(i, j)?;
        minor.try_det()
    }

    /// The adjugate `A` with `A[i][j] = (-1)^(i+j) * minor(j, i)`, so that
    /// `M * A = det(M) * I`.
    pub fn try_adjugate(&self) -> Result<Self, LinalgError> {
        let n = self.dim();
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.cofactor(j, i)?;
                entries.push(if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        Ok(Self::from_parts(n, entries))
    }

    pub fn adjugate(&self) -> Self {
        self.try_adjugate()
            .expect("adjugate entry does not fit the scalar type")
    }
}
