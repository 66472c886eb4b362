use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::IntMatrix;

/// Identifies the generator and the substream derivation in every record.
pub const GENERATOR_ID: &str =
    "rand_chacha-0.3/ChaCha8Rng; worker w: seed_from_u64(seed), set_stream(w); top-bit rejection";

/// A seeded uniform source of matrix entries.
///
/// Worker `w` of a run with master seed `s` reads ChaCha8 stream `w` under the
/// key derived by `seed_from_u64(s)`. Streams are disjoint, each has period
/// `2^64` blocks.
#[derive(Debug, Clone)]
pub struct EntryStream {
    rng: ChaCha8Rng,
}

impl EntryStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        EntryStream { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, range)` by rejection on the top `ceil(log2 range)` bits.
    pub fn below(&mut self, range: u64) -> u64 {
        assert!(range > 0, "empty range");
        if range == 1 {
            return 0;
        }
        let bits = 64 - (range - 1).leading_zeros();
        loop {
            let x = self.rng.next_u64() >> (64 - bits);
            if x < range {
                return x;
            }
        }
    }

    /// Uniform on `{-k, ..., k}`.
    pub fn entry(&mut self, k: u64) -> i64 {
        self.below(2 * k + 1) as i64 - k as i64
    }

    /// Overwrites `m` with fresh uniform entries from `{-k, ..., k}`.
    pub fn fill(&mut self, m: &mut IntMatrix<i64>, k: u64) {
        for e in m.entries_mut() {
            *e = self.entry(k);
        }
    }
}

/// An `n x n` matrix with independent entries uniform in `{-k, ..., k}`.
pub fn sample_matrix(stream: &mut EntryStream, n: usize, k: u64) -> IntMatrix<i64> {
    let entries = (0..n * n).map(|_| stream.entry(k)).collect();
    IntMatrix::with_bound(n, entries, k).expect("sampled entries lie within the bound")
}
