use num_bigint::BigInt;
use serde::Serialize;

use super::det::bareiss;
use super::{IntMatrix, LinalgError};
use crate::scalar::ExactInt;

/// Integer polynomial with coefficients stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: ExactInt> IntPolynomial<T> {
    /// Trailing zero coefficients are trimmed; the zero polynomial keeps `[0]`.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("non-empty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Horner evaluation; `None` if an intermediate leaves `T`.
    pub fn checked_eval(&self, x: &T) -> Option<T> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(T::zero(), |acc, c| acc.checked_mul(x)?.checked_add(c))
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::from(0), |acc, c| acc * x + c.to_big())
    }

    /// Splits off the largest power of the indeterminate: returns `(m, q)` with
    /// `self = x^m * q` and `q(0) != 0` (unless `self` is zero).
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        (m, IntPolynomial::new(self.coeffs[m..].to_vec()))
    }

    /// Distinct integer roots in `[-limit, limit]`, ascending.
    ///
    /// A zero root is read off the low coefficients; the remaining candidates
    /// are the divisors of the (nonzero) constant term of the reduced
    /// polynomial, which is where every integer root of an integer polynomial
    /// must lie.
    pub fn integer_roots_within(&self, limit: &T) -> Vec<T> {
        let (zero_mult, reduced) = self.strip_zero_roots();
        let mut roots = Vec::new();
        if zero_mult > 0 {
            roots.push(T::zero());
        }
        let c0 = reduced.coeffs[0].abs();
        if c0.is_zero() || limit.is_zero() {
            return roots;
        }
        let is_root = |x: &T| match reduced.checked_eval(x) {
            Some(v) => v.is_zero(),
            None => reduced.eval_big(&x.to_big()) == BigInt::from(0),
        };
        let mut found = Vec::new();
        let mut consider = |d: T| {
            if &d <= limit {
                let neg = -d.clone();
                if is_root(&d) {
                    found.push(d);
                }
                if is_root(&neg) {
                    found.push(neg);
                }
            }
        };
        let top = std::cmp::min(c0.sqrt(), limit.clone());
        let mut d = T::one();
        while d <= top {
            if c0.is_multiple_of(&d) {
                let co = c0.clone() / d.clone();
                if co != d {
                    consider(co);
                }
                consider(d.clone());
            }
            d = d + T::one();
        }
        roots.extend(found);
        roots.sort();
        roots.dedup();
        roots
    }
}

/// `det(x I - M)` at `x = 0..=n` followed by exact Newton interpolation.
/// `None` when an intermediate leaves `U`.
fn char_poly_in<U: ExactInt>(entries: &[U], n: usize) -> Option<Vec<U>> {
    let mut values = Vec::with_capacity(n + 1);
    for x in 0..=n {
        let x_u = U::from_usize(x)?;
        let mut shifted: Vec<U> = entries.iter().map(|e| -e.clone()).collect();
        for i in 0..n {
            shifted[i * n + i] = shifted[i * n + i].checked_add(&x_u)?;
        }
        values.push(bareiss(shifted, n)?);
    }
    // forward differences: values[j] becomes Δ^j f(0)
    for j in 1..=n {
        for i in (j..=n).rev() {
            values[i] = values[i].checked_sub(&values[i - 1])?;
        }
    }
    // falling-factorial coefficients b_j = Δ^j f(0) / j!
    let mut fact = U::one();
    for (j, v) in values.iter_mut().enumerate().skip(1) {
        fact = fact.checked_mul(&U::from_usize(j)?)?;
        let (q, r) = v.div_rem(&fact);
        assert!(
            r.is_zero(),
            "interpolation division must be exact (index {j})"
        );
        *v = q;
    }
    // p = b_0 + x (b_1 + (x - 1)(b_2 + ...)), expanded from the inside out
    let mut poly = vec![values[n].clone()];
    for j in (0..n).rev() {
        let shift = U::from_usize(j)?;
        let mut next = vec![U::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].checked_add(c)?;
            next[i] = next[i].checked_sub(&c.checked_mul(&shift)?)?;
        }
        next[0] = next[0].checked_add(&values[j])?;
        poly = next;
    }
    Some(poly)
}

impl<T: ExactInt> IntMatrix<T> {
    pub fn char_poly_big(&self) -> IntPolynomial<BigInt> {
        let n = self.dim();
        let big: Vec<BigInt> = self.entries().iter().map(|e| e.to_big()).collect();
        IntPolynomial::new(char_poly_in(&big, n).expect("arbitrary precision"))
    }

    /// `det(x I - M)` as an exact monic polynomial of degree `n`.
    pub fn try_char_poly(&self) -> Result<IntPolynomial<T>, LinalgError> {
        let n = self.dim();
        if let Some(c) = char_poly_in(self.entries(), n) {
            return Ok(IntPolynomial::new(c));
        }
        let big = self.char_poly_big();
        big.coeffs()
            .iter()
            .map(T::from_big)
            .collect::<Option<Vec<T>>>()
            .map(IntPolynomial::new)
            .ok_or(LinalgError::Overflow)
    }

    pub fn char_poly(&self) -> IntPolynomial<T> {
        self.try_char_poly()
            .expect("characteristic polynomial does not fit the scalar type")
    }

    /// Every integer `λ` with `det(M - λ I) = 0`, ascending and distinct.
    ///
    /// Candidates are confined to `|λ| <= n k`, with `k` the matrix bound (or
    /// its largest absolute entry when untagged).
    pub fn integer_eigenvalues(&self) -> Vec<T> {
        let limit_big = self.effective_bound() * BigInt::from(self.dim());
        match (self.try_char_poly(), T::from_big(&limit_big)) {
            (Ok(poly), Some(limit)) => poly.integer_roots_within(&limit),
            _ => self
                .char_poly_big()
                .integer_roots_within(&limit_big)
                .iter()
                .map(|r| T::from_big(r).expect("eigenvalue is bounded by n k"))
                .collect(),
        }
    }
}
