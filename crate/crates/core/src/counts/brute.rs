use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{width, Budget, CountError, CountRecord, Property};
use crate::linalg::IntMatrix;

fn check_enumeration(n: usize, k: u64, budget: &Budget) -> Result<(), CountError> {
    let total = BigUint::from(width(k)).pow((n * n) as u32);
    if total > BigUint::from(budget.max_matrices) {
        return Err(CountError::BudgetExceeded {
            budget: "brute-force",
            requested: format!("{total} matrices"),
            limit: format!("{} matrices", budget.max_matrices),
        });
    }
    Ok(())
}

/// Calls `f` on every matrix of `M_n(k)` whose first entry is `first`, in
/// lexicographic order of the remaining entries.
fn for_each_with_first(n: usize, k: u64, first: i64, mut f: impl FnMut(&IntMatrix<i64>)) {
    let k = k as i64;
    let mut entries = vec![-k; n * n];
    entries[0] = first;
    let mut m = IntMatrix::with_bound(n, entries, k as u64).expect("entries within bound");
    loop {
        f(&m);
        let e = m.entries_mut();
        let mut idx = n * n - 1;
        loop {
            if idx == 0 {
                return;
            }
            if e[idx] < k {
                e[idx] += 1;
                break;
            }
            e[idx] = -k;
            idx -= 1;
        }
    }
}

/// Calls `f` on every matrix of `M_n(k)`, sequentially.
pub fn for_each_matrix(
    n: usize,
    k: u64,
    budget: &Budget,
    mut f: impl FnMut(&IntMatrix<i64>),
) -> Result<(), CountError> {
    check_enumeration(n, k, budget)?;
    let k_i = k as i64;
    for first in -k_i..=k_i {
        for_each_with_first(n, k, first, &mut f);
    }
    Ok(())
}

/// Exact count of matrices in `M_n(k)` satisfying `predicate`, by enumeration.
///
/// Work is split on the value of the first entry; partial counts are integers,
/// so the result does not depend on scheduling.
pub fn brute_force_count<P>(
    n: usize,
    k: u64,
    property: Property,
    predicate: P,
    budget: &Budget,
) -> Result<CountRecord, CountError>
where
    P: Fn(&IntMatrix<i64>) -> bool + Sync,
{
    if n == 0 {
        return Err(CountError::InvalidArgument("n must be at least 1".into()));
    }
    check_enumeration(n, k, budget)?;
    let k_i = k as i64;
    let count: u64 = (-k_i..=k_i)
        .into_par_iter()
        .map(|first| {
            let mut hits = 0u64;
            for_each_with_first(n, k, first, |m| {
                if predicate(m) {
                    hits += 1;
                }
            });
            hits
        })
        .sum();
    Ok(CountRecord::new(property, n, k, count))
}

/// `|M^Z_n(k)|`: matrices with at least one integer eigenvalue, by enumeration
/// through the rational-root search.
pub fn count_integer_eig_any_n(n: usize, k: u64, budget: &Budget) -> Result<CountRecord, CountError> {
    brute_force_count(
        n,
        k,
        Property::IntegerEig,
        |m| !m.integer_eigenvalues().is_empty(),
        budget,
    )
}

/// For every integer `λ`, the number of matrices in `M_n(k)` having `λ` as an
/// eigenvalue (each matrix counted once per distinct eigenvalue).
pub fn brute_force_eigenvalue_tally(
    n: usize,
    k: u64,
    budget: &Budget,
) -> Result<BTreeMap<i64, u64>, CountError> {
    check_enumeration(n, k, budget)?;
    let k_i = k as i64;
    let partials: Vec<BTreeMap<i64, u64>> = (-k_i..=k_i)
        .into_par_iter()
        .map(|first| {
            let mut tally = BTreeMap::new();
            for_each_with_first(n, k, first, |m| {
                for l in m.integer_eigenvalues() {
                    *tally.entry(l).or_insert(0) += 1;
                }
            });
            tally
        })
        .collect();
    let mut tally = BTreeMap::new();
    for part in partials {
        for (l, c) in part {
            *tally.entry(l).or_insert(0) += c;
        }
    }
    Ok(tally)
}
