use std::fmt;

use serde::Serialize;

use super::{width, Budget, CountError};

/// A non-constant integer linear polynomial `slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LinearForm {
    slope: i64,
    intercept: i64,
}

impl LinearForm {
    pub fn new(slope: i64, intercept: i64) -> Result<Self, CountError> {
        if slope == 0 {
            return Err(CountError::ConstantForm);
        }
        Ok(LinearForm { slope, intercept })
    }

    /// The identity form `x`.
    pub fn identity() -> Self {
        LinearForm {
            slope: 1,
            intercept: 0,
        }
    }

    pub fn slope(&self) -> i64 {
        self.slope
    }

    pub fn intercept(&self) -> i64 {
        self.intercept
    }

    pub fn eval(&self, x: i64) -> i128 {
        i128::from(self.slope) * i128::from(x) + i128::from(self.intercept)
    }

    /// `max |L(x)|` over `x in {-k..k}`.
    fn reach(&self, k: u64) -> u128 {
        let k = k as i64;
        self.eval(k).unsigned_abs().max(self.eval(-k).unsigned_abs())
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slope, self.intercept) {
            (1, 0) => write!(f, "x"),
            (s, 0) => write!(f, "{s}x"),
            (1, c) if c < 0 => write!(f, "x-{}", -c),
            (1, c) => write!(f, "x+{c}"),
            (s, c) if c < 0 => write!(f, "{s}x-{}", -c),
            (s, c) => write!(f, "{s}x+{c}"),
        }
    }
}

fn products(l: LinearForm, r: LinearForm, k: u64) -> impl Iterator<Item = i128> {
    let k = k as i64;
    (-k..=k).flat_map(move |a| {
        let la = l.eval(a);
        (-k..=k).map(move |b| la * r.eval(b))
    })
}

/// Number of `(a, b, c, d) in {-k..k}^4` with `L1(a) L2(b) = L3(c) L4(d)`.
///
/// The value distribution of `L1(a) L2(b)` is tabulated and every
/// `L3(c) L4(d)` is looked up in it. The table is a dense array over the
/// common value range when that fits the memory budget, otherwise the two
/// sorted value lists are merged.
pub fn count_solutions_linearforms(
    forms: [LinearForm; 4],
    k: u64,
    budget: &Budget,
) -> Result<u128, CountError> {
    let [l1, l2, l3, l4] = forms;
    let pairs = u128::from(width(k)).pow(2);
    let too_wide = || CountError::InvalidArgument("form products exceed 127 bits".into());
    let left_reach = l1.reach(k).checked_mul(l2.reach(k)).filter(|&r| r <= i128::MAX as u128);
    let right_reach = l3.reach(k).checked_mul(l4.reach(k)).filter(|&r| r <= i128::MAX as u128);
    let (left_reach, right_reach) = (left_reach.ok_or_else(too_wide)?, right_reach.ok_or_else(too_wide)?);
    let reach = left_reach.min(right_reach);
    let dense_bytes = (2 * reach + 1).saturating_mul(4);
    if dense_bytes <= u128::from(budget.memory_bytes) {
        let reach = reach as i128;
        let mut table = vec![0u32; (2 * reach + 1) as usize];
        for v in products(l1, l2, k) {
            if v.abs() <= reach {
                table[(v + reach) as usize] += 1;
            }
        }
        let mut total = 0u128;
        for v in products(l3, l4, k) {
            if v.abs() <= reach {
                total += u128::from(table[(v + reach) as usize]);
            }
        }
        return Ok(total);
    }
    budget.check_memory(pairs * 32)?;
    let mut left: Vec<i128> = products(l1, l2, k).collect();
    let mut right: Vec<i128> = products(l3, l4, k).collect();
    left.sort_unstable();
    right.sort_unstable();
    let (mut i, mut j, mut total) = (0, 0, 0u128);
    while i < left.len() && j < right.len() {
        match left[i].cmp(&right[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let v = left[i];
                let i0 = i;
                while i < left.len() && left[i] == v {
                    i += 1;
                }
                let j0 = j;
                while j < right.len() && right[j] == v {
                    j += 1;
                }
                total += ((i - i0) * (j - j0)) as u128;
            }
        }
    }
    Ok(total)
}
