use rayon::prelude::*;

use super::{width, Budget, CountError};

/// `counts(m) = #{(x, y) in {-k..k}^2 : (x - shift)(y - shift) = m}`, stored
/// densely over `m in [-(k+|shift|)^2, (k+|shift|)^2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDistribution {
    k: u64,
    shift: i64,
    reach: i64,
    counts: Vec<u64>,
}

impl ProductDistribution {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Largest `|m|` with a possibly nonzero count.
    pub fn reach(&self) -> i64 {
        self.reach
    }

    pub fn count(&self, m: i64) -> u64 {
        if m.abs() > self.reach {
            return 0;
        }
        self.counts[(m + self.reach) as usize]
    }

    /// Nonzero `(m, count)` pairs in increasing `m`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| (i as i64 - self.reach, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub(crate) fn dense(&self) -> &[u64] {
        &self.counts
    }
}

pub fn product_distribution(
    k: u64,
    shift: i64,
    budget: &Budget,
) -> Result<ProductDistribution, CountError> {
    let side = k as i64 + shift.abs();
    let reach = side
        .checked_mul(side)
        .ok_or_else(|| CountError::InvalidArgument("product range overflows i64".into()))?;
    let len = 2 * reach as u128 + 1;
    budget.check_memory(len * 8)?;
    let mut counts = vec![0u64; len as usize];
    let lo = -(k as i64) - shift;
    let hi = k as i64 - shift;
    for u in lo..=hi {
        for v in lo..=hi {
            counts[(u * v + reach) as usize] += 1;
        }
    }
    debug_assert_eq!(counts.iter().sum::<u64>(), width(k) * width(k));
    Ok(ProductDistribution {
        k,
        shift,
        reach,
        counts,
    })
}

/// `#{(x, y) in [1, k]^2 : x y <= t}`.
pub fn pairs_with_product_at_most(k: u64, t: u64) -> u64 {
    if t == 0 || k == 0 {
        return 0;
    }
    if t >= k * k {
        return k * k;
    }
    // rows x <= t / k are full
    let full = t / k;
    let mut acc = full * k;
    for x in full + 1..=k.min(t) {
        acc += t / x;
    }
    acc
}

const BLOCK: u64 = 1 << 18;

/// `sum_{m=1}^{k^2} tau_k(m)^2` where `tau_k(m) = #{(x, y) in [1, k]^2 : xy = m}`.
///
/// The divisor counts are sieved in blocks of `m` so memory stays `O(BLOCK)`
/// regardless of `k`.
pub(crate) fn sum_tau_squares(k: u64) -> u128 {
    if k == 0 {
        return 0;
    }
    let top = k * k;
    let blocks = top.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = 1 + b * BLOCK;
            let hi = (lo + BLOCK).min(top + 1);
            let mut tau = vec![0u32; (hi - lo) as usize];
            for x in lo.div_ceil(k).max(1)..=k.min(hi - 1) {
                let y_lo = lo.div_ceil(x).max(1);
                let y_hi = ((hi - 1) / x).min(k);
                let mut m = x * y_lo;
                for _ in y_lo..=y_hi {
                    tau[(m - lo) as usize] += 1;
                    m += x;
                }
            }
            tau.iter().map(|&t| u128::from(t) * u128::from(t)).sum::<u128>()
        })
        .sum()
}
