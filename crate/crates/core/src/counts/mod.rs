//! Exact counting of matrices in `M_n(k)` with a spectral property.
//!
//! Brute force enumerates every matrix and is the ground truth for small
//! instances. The 2x2 counters work on the distribution of products `xy` over
//! `{-k..k}^2` and run in `O(k^2)` time.

mod brute;
mod growth;
mod linear_forms;
mod product;
mod record;
mod two_by_two;

use thiserror::Error;

pub use brute::{
    brute_force_count, brute_force_eigenvalue_tally, count_integer_eig_any_n, for_each_matrix,
};
pub use growth::{fit_log_log, growth_probe, GrowthProbe, LogLogFit, EPSILON_MARGIN};
pub use linear_forms::{count_solutions_linearforms, LinearForm};
pub use product::{pairs_with_product_at_most, product_distribution, ProductDistribution};
pub use record::{total_matrices, CountRecord, Property};
pub use two_by_two::{
    count_integer_eig_2x2, count_lambda_eig_2x2, count_real_eig_2x2, count_repeated_eig_2x2,
    count_singular_2x2, LambdaCounter,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{budget} budget exceeded: requested {requested}, limit {limit}")]
    BudgetExceeded {
        budget: &'static str,
        requested: String,
        limit: String,
    },
    #[error("linear form must be non-constant")]
    ConstantForm,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("records disagree on {0}")]
    Mismatched(&'static str),
}

/// Resource caps for the exact counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Budget {
    /// Largest `(2k+1)^(n^2)` brute force will enumerate.
    pub max_matrices: u64,
    /// Largest `k` for the singular and real-eigenvalue 2x2 counters.
    pub max_k_fast: u64,
    /// Largest `k` for the integer-eigenvalue and per-eigenvalue 2x2 counters.
    pub max_k_integer: u64,
    /// Largest single dense count array, in bytes.
    pub memory_bytes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_matrices: 100_000_000,
            max_k_fast: 10_000,
            max_k_integer: 1_500,
            memory_bytes: 1 << 30,
        }
    }
}

impl Budget {
    pub fn with_memory_mb(mut self, mb: u64) -> Self {
        self.memory_bytes = mb.saturating_mul(1 << 20);
        self
    }

    pub(crate) fn check_memory(&self, bytes: u128) -> Result<(), CountError> {
        if bytes > u128::from(self.memory_bytes) {
            return Err(CountError::BudgetExceeded {
                budget: "memory",
                requested: format!("{bytes} bytes"),
                limit: format!("{} bytes", self.memory_bytes),
            });
        }
        Ok(())
    }

    pub(crate) fn check_k(&self, name: &'static str, k: u64, limit: u64) -> Result<(), CountError> {
        if k > limit {
            return Err(CountError::BudgetExceeded {
                budget: name,
                requested: format!("k = {k}"),
                limit: format!("k <= {limit}"),
            });
        }
        Ok(())
    }
}

/// Number of entries `2k + 1` in `{-k, ..., k}`.
pub(crate) fn width(k: u64) -> u64 {
    2 * k + 1
}
