//! Seeded Monte Carlo estimation and scaled eigenvalue histograms.
//!
//! A run is reproducible from `(seed, workers)`: samples are split evenly
//! over `workers` logical workers, worker `w` reads its own generator stream,
//! and partial results are merged in worker order.

mod estimate;
mod histogram;
mod rng;

use serde::Serialize;
use thiserror::Error;

pub use estimate::{estimate_probability, estimate_property, Interval, EstimateRecord};
pub use histogram::{
    eigenvalue_histogram_exact, eigenvalue_histogram_sampled, HistogramSource, Normalization,
    ScaledHistogram, SpectrumMode, DEFAULT_BIN_WIDTH,
};
pub use rng::{sample_matrix, EntryStream, GENERATOR_ID};

use crate::counts::CountError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("invalid sampler configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Count(#[from] CountError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub k: u64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SamplerConfig {
    pub fn new(n: usize, k: u64, samples: u64, seed: u64) -> Self {
        SamplerConfig {
            n,
            k,
            samples,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        if self.n == 0 {
            return Err(SampleError::Config("n must be at least 1".into()));
        }
        if self.samples == 0 {
            return Err(SampleError::Config("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(SampleError::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of samples drawn by worker `w`.
    pub fn share(&self, w: usize) -> u64 {
        let workers = self.workers as u64;
        self.samples / workers + u64::from((w as u64) < self.samples % workers)
    }
}
