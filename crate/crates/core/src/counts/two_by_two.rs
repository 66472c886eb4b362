//! `O(k^2)` exact counters over `M_2(k)`.
//!
//! Writing a 2x2 matrix as `[[a, b], [c, d]]`, every property reduces to a
//! condition on the pair `(a, d)` and the product `bc`:
//!
//! * singular: `ad = bc`;
//! * eigenvalue `λ`: `(a - λ)(d - λ) = bc`;
//! * real spectrum: `(a - d)^2 + 4bc >= 0`;
//! * integer spectrum: `(a - d)^2 + 4bc` is a perfect square. The trace is an
//!   integer and the discriminant is `≡ trace^2 (mod 4)`, so a square root `s`
//!   has the parity of the trace and both roots `(trace ± s) / 2` are integers.
//!
//! The number of pairs `(a, d)` with `a - d = s` is `2k + 1 - |s|`.

use num_bigint::BigUint;
use num_integer::Roots;
use rayon::prelude::*;

use super::product::{pairs_with_product_at_most, product_distribution, sum_tau_squares};
use super::{width, Budget, CountError, CountRecord, ProductDistribution, Property};

fn diagonal_difference_count(k: u64, s: i64) -> u64 {
    width(k) - s.unsigned_abs()
}

/// `|M^0_2(k)| = sum_m r(m)^2` with `r` the product distribution.
///
/// `r(0) = 4k + 1` and `r(±m) = 2 tau_k(m)` for `m > 0`, so the sum is
/// `(4k+1)^2 + 8 sum_m tau_k(m)^2`.
pub fn count_singular_2x2(k: u64, budget: &Budget) -> Result<CountRecord, CountError> {
    budget.check_k("fast-counter", k, budget.max_k_fast)?;
    let zero = u128::from(4 * k + 1);
    let count = zero * zero + 8 * sum_tau_squares(k);
    Ok(CountRecord::new(Property::Singular, 2, k, BigUint::from(count)))
}

/// `|M^R_2(k)|`: for each `s = a - d`, the pairs `(b, c)` with `bc >= -floor(s^2/4)`.
pub fn count_real_eig_2x2(k: u64, budget: &Budget) -> Result<CountRecord, CountError> {
    budget.check_k("fast-counter", k, budget.max_k_fast)?;
    let k_i = k as i64;
    let non_negative = u128::from(4 * k + 1) + 2 * u128::from(k * k);
    let count: u128 = (0..=2 * k_i)
        .into_par_iter()
        .map(|s| {
            let t = (s * s / 4) as u64;
            let pairs = non_negative + 2 * u128::from(pairs_with_product_at_most(k, t));
            let mult = if s == 0 { 1 } else { 2 };
            mult * u128::from(diagonal_difference_count(k, s)) * pairs
        })
        .sum();
    Ok(CountRecord::new(Property::RealEig, 2, k, BigUint::from(count)))
}

/// `sum_s D(s) sum_{u ≡ s (mod 2)} p((u^2 - s^2) / 4)` with `u = sqrt(disc) >= 0`.
fn integer_eig_sum(k: u64, p: &ProductDistribution) -> u128 {
    let k_i = k as i64;
    let four_k2 = 4 * k_i * k_i;
    (0..=2 * k_i)
        .into_par_iter()
        .map(|s| {
            let s2 = s * s;
            let lo_sq = (s2 - four_k2).max(0);
            let mut u = (lo_sq as u64).sqrt() as i64;
            if u * u < lo_sq {
                u += 1;
            }
            if (u - s) % 2 != 0 {
                u += 1;
            }
            let hi = ((s2 + four_k2) as u64).sqrt() as i64;
            let mut inner = 0u128;
            while u <= hi {
                inner += u128::from(p.count((u * u - s2) / 4));
                u += 2;
            }
            let mult = if s == 0 { 1 } else { 2 };
            mult * u128::from(diagonal_difference_count(k, s)) * inner
        })
        .sum()
}

/// `|M^Z_2(k)|` via a perfect-square scan of the discriminant.
pub fn count_integer_eig_2x2(k: u64, budget: &Budget) -> Result<CountRecord, CountError> {
    budget.check_k("integer-eig counter", k, budget.max_k_integer)?;
    let p = product_distribution(k, 0, budget)?;
    let count = integer_eig_sum(k, &p);
    Ok(CountRecord::new(Property::IntegerEig, 2, k, BigUint::from(count)))
}

/// Matrices in `M_2(k)` with a repeated (necessarily integer) eigenvalue:
/// `(a - d)^2 = -4bc`.
pub fn count_repeated_eig_2x2(k: u64, budget: &Budget) -> Result<CountRecord, CountError> {
    budget.check_k("integer-eig counter", k, budget.max_k_integer)?;
    let p = product_distribution(k, 0, budget)?;
    let k_i = k as i64;
    let count: u128 = (0..=2 * k_i)
        .step_by(2)
        .map(|s| {
            let mult = if s == 0 { 1 } else { 2 };
            mult * u128::from(diagonal_difference_count(k, s)) * u128::from(p.count(-s * s / 4))
        })
        .sum();
    Ok(CountRecord::new(
        Property::Custom("repeated-eig".into()),
        2,
        k,
        BigUint::from(count),
    ))
}

/// Per-eigenvalue counter sharing one unshifted product distribution.
///
/// `|M^λ_2(k)| = sum_m q_λ(m) p(m)` where `q_λ` is the distribution of
/// `(a - λ)(d - λ)`. The sum is taken directly over `(a, d)`, which visits
/// the same terms without materialising `q_λ`.
#[derive(Debug, Clone)]
pub struct LambdaCounter {
    k: u64,
    p: ProductDistribution,
}

impl LambdaCounter {
    pub fn new(k: u64, budget: &Budget) -> Result<Self, CountError> {
        budget.check_k("integer-eig counter", k, budget.max_k_integer)?;
        Ok(LambdaCounter {
            k,
            p: product_distribution(k, 0, budget)?,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn count(&self, lambda: i64) -> u64 {
        let k = self.k as i64;
        if lambda.abs() > 2 * k {
            return 0;
        }
        let dense = self.p.dense();
        let reach = self.p.reach();
        let lo = -k - lambda;
        let hi = k - lambda;
        let lookup = |m: i64| dense[(m + reach) as usize];
        let mut diag = 0u64;
        let mut off = 0u64;
        for u in lo..=hi {
            if u == 0 {
                diag += lookup(0);
                off += (hi - u) as u64 * lookup(0);
                continue;
            }
            if (u * u).abs() <= reach {
                diag += lookup(u * u);
            }
            // v in (u, hi] with |u v| <= k^2
            let span = reach / u.abs();
            let v_lo = (u + 1).max(-span);
            let v_hi = hi.min(span);
            for v in v_lo..=v_hi {
                off += lookup(u * v);
            }
        }
        diag + 2 * off
    }

    /// `(λ, |M^λ_2(k)|)` for every `λ` in `[-2k, 2k]`, using `λ ↔ -λ` symmetry.
    pub fn all(&self) -> Vec<(i64, u64)> {
        let k = self.k as i64;
        let half: Vec<u64> = (0..=2 * k).into_par_iter().map(|l| self.count(l)).collect();
        (-2 * k..=2 * k)
            .map(|l| (l, half[l.unsigned_abs() as usize]))
            .collect()
    }

    pub fn record(&self, lambda: i64) -> CountRecord {
        CountRecord::new(Property::LambdaEig(lambda), 2, self.k, self.count(lambda))
    }
}

/// `|M^λ_2(k)|`. Returns 0 without work when `|λ| > 2k`.
pub fn count_lambda_eig_2x2(k: u64, lambda: i64, budget: &Budget) -> Result<CountRecord, CountError> {
    if lambda.unsigned_abs() > 2 * k {
        return Ok(CountRecord::new(Property::LambdaEig(lambda), 2, k, 0u32));
    }
    Ok(LambdaCounter::new(k, budget)?.record(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    fn count(r: CountRecord) -> u64 {
        u64::try_from(r.count).unwrap()
    }

    #[test]
    fn k1_fixtures() {
        assert_eq!(count(count_singular_2x2(1, &b()).unwrap()), 33);
        assert_eq!(count(count_integer_eig_2x2(1, &b()).unwrap()), 55);
        assert_eq!(count(count_real_eig_2x2(1, &b()).unwrap()), 67);
        let per_lambda: Vec<u64> = (-2..=2)
            .map(|l| count(count_lambda_eig_2x2(1, l, &b()).unwrap()))
            .collect();
        assert_eq!(per_lambda, vec![2, 27, 33, 27, 2]);
    }

    #[test]
    fn k2_per_lambda_fixture() {
        let c = LambdaCounter::new(2, &b()).unwrap();
        let got: Vec<u64> = c.all().into_iter().map(|(_, n)| n).collect();
        assert_eq!(got, vec![2, 16, 97, 107, 129, 107, 97, 16, 2]);
    }

    #[test]
    fn lambda_zero_is_singular_count() {
        for k in [1u64, 4, 13, 40] {
            let c = LambdaCounter::new(k, &b()).unwrap();
            assert_eq!(
                BigUint::from(c.count(0)),
                count_singular_2x2(k, &b()).unwrap().count
            );
        }
    }

    #[test]
    fn lambda_outside_gershgorin_range_is_zero() {
        assert_eq!(count(count_lambda_eig_2x2(2, 5, &b()).unwrap()), 0);
        assert_eq!(count(count_lambda_eig_2x2(2, -5, &b()).unwrap()), 0);
        let c = LambdaCounter::new(3, &b()).unwrap();
        assert_eq!(c.count(7), 0);
        assert_eq!(c.count(6), 2);
    }

    #[test]
    fn budgets_are_enforced() {
        let small = Budget {
            max_k_fast: 10,
            max_k_integer: 5,
            ..Budget::default()
        };
        assert!(count_singular_2x2(11, &small).is_err());
        assert!(count_real_eig_2x2(11, &small).is_err());
        assert!(count_integer_eig_2x2(6, &small).is_err());
        assert!(LambdaCounter::new(6, &small).is_err());
    }

    #[test]
    fn per_lambda_sum_accounts_for_repeated_roots() {
        for k in [1u64, 3, 8, 21] {
            let c = LambdaCounter::new(k, &b()).unwrap();
            let sum: u64 = c.all().iter().map(|(_, n)| n).sum();
            let ints = count(count_integer_eig_2x2(k, &b()).unwrap());
            let repeated = count(count_repeated_eig_2x2(k, &b()).unwrap());
            assert_eq!(sum, 2 * ints - repeated, "k={k}");
        }
    }
}
