use std::fmt;

use num_integer::Roots;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::rng::EntryStream;
use super::{SampleError, SamplerConfig};
use crate::counts::{count_integer_eig_2x2, Budget, LambdaCounter};

/// 100 bins across `[-2, 2]`.
pub const DEFAULT_BIN_WIDTH: f64 = 0.04;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    IntegerSpectrum,
    RealSpectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HistogramSource {
    Exact,
    Sampled,
}

/// Normalizer of an exact histogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Half the number of (matrix, eigenvalue) records; the area is exactly 2.
    HalfEigenvalueMass,
    /// `|M^Z_2(k)|`, as in the limit `k |M^λ| / |M^Z|`.
    IntegerEigCount,
}

impl fmt::Display for SpectrumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumMode::IntegerSpectrum => "integer",
            SpectrumMode::RealSpectrum => "real",
        })
    }
}

/// Eigenvalue histogram on the rescaled axis `δ = λ/k ∈ [-2, 2]`.
///
/// Bin weights are kept in half-eigenvalue units. An eigenvalue whose `δ`
/// falls exactly on an interior bin edge puts one half in each neighbouring
/// bin, so a histogram built from a negation-closed family is exactly even.
/// `δ = ±2` belongs to the outermost bin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledHistogram {
    pub k: u64,
    pub mode: SpectrumMode,
    pub source: HistogramSource,
    pub bin_width: f64,
    half_weights: Vec<u64>,
    normalizer_twice: u128,
    density: Vec<f64>,
}

fn bin_count(bin_width: f64) -> Result<usize, SampleError> {
    if !(bin_width > 0.0 && bin_width <= 4.0) {
        return Err(SampleError::Config(format!(
            "bin width {bin_width} outside (0, 4]"
        )));
    }
    let bins = (4.0 / bin_width).round();
    if (bins * bin_width - 4.0).abs() > 1e-9 {
        return Err(SampleError::Config(format!(
            "bin width {bin_width} does not divide [-2, 2] evenly"
        )));
    }
    Ok(bins as usize)
}

/// Adds `weight` half-units for the integer eigenvalue `lambda` at scale `k`.
fn add_integer(half: &mut [u64], k: u64, lambda: i64, weight: u64) {
    let bins = half.len() as i128;
    let num = (i128::from(lambda) + 2 * i128::from(k)) * bins;
    let den = 4 * i128::from(k);
    let idx = num.div_euclid(den);
    if num.rem_euclid(den) == 0 && idx > 0 && idx < bins {
        half[idx as usize - 1] += weight / 2;
        half[idx as usize] += weight - weight / 2;
    } else {
        half[idx.clamp(0, bins - 1) as usize] += weight;
    }
}

fn add_real(half: &mut [u64], k: u64, lambda: f64) {
    let bins = half.len();
    let x = (lambda / k as f64 + 2.0) * bins as f64 / 4.0;
    let idx = (x.floor().max(0.0) as usize).min(bins - 1);
    half[idx] += 2;
}

impl ScaledHistogram {
    fn build(
        k: u64,
        mode: SpectrumMode,
        source: HistogramSource,
        bin_width: f64,
        half_weights: Vec<u64>,
        normalizer_twice: u128,
    ) -> Self {
        let scale = normalizer_twice as f64 * bin_width;
        let density = half_weights
            .iter()
            .map(|&h| if scale > 0.0 { h as f64 / scale } else { 0.0 })
            .collect();
        ScaledHistogram {
            k,
            mode,
            source,
            bin_width,
            half_weights,
            normalizer_twice,
            density,
        }
    }

    pub fn bins(&self) -> usize {
        self.half_weights.len()
    }

    /// `[lo, hi)` of bin `i` in `δ` units.
    pub fn edges(&self, i: usize) -> (f64, f64) {
        let bins = self.bins() as f64;
        (
            -2.0 + 4.0 * i as f64 / bins,
            -2.0 + 4.0 * (i + 1) as f64 / bins,
        )
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// Eigenvalue records per bin (half-integers when edges are hit).
    pub fn weights(&self) -> Vec<f64> {
        self.half_weights.iter().map(|&h| h as f64 / 2.0).collect()
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer_twice as f64 / 2.0
    }

    /// The normalizer as an exact decimal string (it may end in `.5`).
    pub fn normalizer_exact(&self) -> String {
        let n = self.normalizer_twice;
        if n % 2 == 0 {
            (n / 2).to_string()
        } else {
            format!("{}.5", n / 2)
        }
    }

    /// `sum density * bin_width`.
    pub fn area(&self) -> f64 {
        let mass: u128 = self.half_weights.iter().map(|&h| u128::from(h)).sum();
        if self.normalizer_twice == 0 {
            return 0.0;
        }
        (mass as f64) / (self.normalizer_twice as f64)
    }

    /// Bin containing `δ` under the half-open convention.
    pub fn bin_of(&self, delta: f64) -> Option<usize> {
        if !(-2.0..=2.0).contains(&delta) {
            return None;
        }
        let bins = self.bins();
        Some((((delta + 2.0) * bins as f64 / 4.0).floor() as usize).min(bins - 1))
    }

    pub fn density_at(&self, delta: f64) -> Option<f64> {
        self.bin_of(delta).map(|i| self.density[i])
    }

    /// Exact mirror symmetry of the bin weights.
    pub fn is_even(&self) -> bool {
        self.half_weights.iter().eq(self.half_weights.iter().rev())
    }
}

/// Exact integer-spectrum histogram of `M_2(k)` from the per-eigenvalue counts.
///
/// Each matrix contributes once per distinct integer eigenvalue. Bins hold a
/// fixed number of integers only when `bin_width * k` is an integer; otherwise
/// the density shows aliasing between bins.
pub fn eigenvalue_histogram_exact(
    k: u64,
    mode: SpectrumMode,
    bin_width: f64,
    normalization: Normalization,
    budget: &Budget,
) -> Result<ScaledHistogram, SampleError> {
    if mode != SpectrumMode::IntegerSpectrum {
        return Err(SampleError::Config(
            "exact histograms are available for the integer spectrum only".into(),
        ));
    }
    if k == 0 {
        return Err(SampleError::Config("k must be at least 1".into()));
    }
    let bins = bin_count(bin_width)?;
    let counter = LambdaCounter::new(k, budget)?;
    let mut half = vec![0u64; bins];
    let mut mass = 0u128;
    for (lambda, count) in counter.all() {
        add_integer(&mut half, k, lambda, 2 * count);
        mass += u128::from(count);
    }
    let normalizer_twice = match normalization {
        Normalization::HalfEigenvalueMass => mass,
        Normalization::IntegerEigCount => {
            let c = count_integer_eig_2x2(k, budget)?;
            2 * c.count.to_u128().expect("2x2 counts fit in 128 bits")
        }
    };
    Ok(ScaledHistogram::build(
        k,
        mode,
        HistogramSource::Exact,
        bin_width,
        half,
        normalizer_twice,
    ))
}

/// Histogram of both eigenvalues of sampled 2x2 matrices in the mode's subset,
/// normalized by the number of retained matrices.
pub fn eigenvalue_histogram_sampled(
    config: &SamplerConfig,
    mode: SpectrumMode,
    bin_width: f64,
) -> Result<ScaledHistogram, SampleError> {
    config.validate()?;
    if config.n != 2 {
        return Err(SampleError::Config("histograms need n = 2".into()));
    }
    if config.k == 0 {
        return Err(SampleError::Config("k must be at least 1".into()));
    }
    let bins = bin_count(bin_width)?;
    let k = config.k;
    let parts: Vec<(Vec<u64>, u64)> = (0..config.workers)
        .into_par_iter()
        .map(|w| {
            let mut stream = EntryStream::new(config.seed, w as u64);
            let mut half = vec![0u64; bins];
            let mut kept = 0u64;
            for _ in 0..config.share(w) {
                let [a, b, c, d] = [0; 4].map(|_| i128::from(stream.entry(k)));
                let disc = (a - d) * (a - d) + 4 * b * c;
                if disc < 0 {
                    continue;
                }
                let s = disc.sqrt();
                let square = s * s == disc;
                if mode == SpectrumMode::IntegerSpectrum && !square {
                    continue;
                }
                kept += 1;
                let t = a + d;
                if square {
                    add_integer(&mut half, k, ((t - s) / 2) as i64, 2);
                    add_integer(&mut half, k, ((t + s) / 2) as i64, 2);
                } else {
                    let root = (disc as f64).sqrt();
                    add_real(&mut half, k, (t as f64 - root) / 2.0);
                    add_real(&mut half, k, (t as f64 + root) / 2.0);
                }
            }
            (half, kept)
        })
        .collect();
    let mut half = vec![0u64; bins];
    let mut kept = 0u64;
    for (h, c) in parts {
        for (acc, x) in half.iter_mut().zip(h) {
            *acc += x;
        }
        kept += c;
    }
    Ok(ScaledHistogram::build(
        k,
        mode,
        HistogramSource::Sampled,
        bin_width,
        half,
        2 * u128::from(kept),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(k: u64) -> ScaledHistogram {
        eigenvalue_histogram_exact(
            k,
            SpectrumMode::IntegerSpectrum,
            DEFAULT_BIN_WIDTH,
            Normalization::HalfEigenvalueMass,
            &Budget::default(),
        )
        .unwrap()
    }

    #[test]
    fn bin_width_validation() {
        assert_eq!(bin_count(0.04).unwrap(), 100);
        assert_eq!(bin_count(4.0).unwrap(), 1);
        assert!(bin_count(0.03).is_err());
        assert!(bin_count(0.0).is_err());
        assert!(bin_count(-1.0).is_err());
    }

    #[test]
    fn edge_hits_split_evenly() {
        let mut half = vec![0u64; 4];
        // k = 1, four bins of width 1: λ = 0 sits on the middle edge
        add_integer(&mut half, 1, 0, 2);
        assert_eq!(half, vec![0, 1, 1, 0]);
        add_integer(&mut half, 1, 2, 2);
        add_integer(&mut half, 1, -2, 2);
        assert_eq!(half, vec![2, 1, 1, 2]);
    }

    #[test]
    fn exact_histogram_is_even_with_area_two() {
        for k in [1u64, 3, 25, 50] {
            let h = exact(k);
            assert!(h.is_even(), "k={k}");
            assert!((h.area() - 2.0).abs() < 1e-12);
            let integral: f64 = h.density().iter().map(|d| d * h.bin_width).sum();
            assert!((integral - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn integer_count_normalization_gives_smaller_area() {
        let h = eigenvalue_histogram_exact(
            10,
            SpectrumMode::IntegerSpectrum,
            DEFAULT_BIN_WIDTH,
            Normalization::IntegerEigCount,
            &Budget::default(),
        )
        .unwrap();
        // Σλ count = 2C - R < 2C
        assert!(h.area() < 2.0 && h.area() > 1.9);
    }

    #[test]
    fn exact_rejects_real_mode() {
        assert!(eigenvalue_histogram_exact(
            5,
            SpectrumMode::RealSpectrum,
            0.04,
            Normalization::HalfEigenvalueMass,
            &Budget::default()
        )
        .is_err());
    }

    #[test]
    fn sampled_area_two_and_deterministic() {
        let c = SamplerConfig::new(2, 30, 50_000, 8).with_workers(3);
        for mode in [SpectrumMode::RealSpectrum, SpectrumMode::IntegerSpectrum] {
            let a = eigenvalue_histogram_sampled(&c, mode, 0.04).unwrap();
            let b = eigenvalue_histogram_sampled(&c, mode, 0.04).unwrap();
            assert_eq!(a, b);
            assert!((a.area() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normalizer_exact_string() {
        let h = ScaledHistogram::build(
            1,
            SpectrumMode::IntegerSpectrum,
            HistogramSource::Exact,
            1.0,
            vec![1; 4],
            7,
        );
        assert_eq!(h.normalizer_exact(), "3.5");
        assert_eq!(h.bin_of(2.0), Some(3));
        assert_eq!(h.bin_of(-2.0), Some(0));
        assert_eq!(h.bin_of(2.1), None);
    }
}
