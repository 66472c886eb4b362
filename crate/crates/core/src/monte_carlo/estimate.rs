use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;

use super::rng::{EntryStream, GENERATOR_ID};
use super::{SampleError, SamplerConfig};
use crate::counts::Property;
use crate::linalg::IntMatrix;

const Z95: f64 = 1.959_963_984_540_054;

/// Below this many hits (or misses) the Wilson interval replaces the normal one.
const WILSON_THRESHOLD: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRecord {
    pub config: SamplerConfig,
    pub property: String,
    pub hits: u64,
    pub p_hat: f64,
    pub stderr: f64,
    pub ci95: Interval,
    pub ci_method: &'static str,
    pub generator: &'static str,
}

fn wilson(hits: u64, samples: u64) -> Interval {
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Interval {
        lo: (centre - half).max(0.0).min(p),
        hi: (centre + half).min(1.0).max(p),
    }
}

fn interval(hits: u64, samples: u64) -> (f64, Interval, &'static str) {
    let n = samples as f64;
    let p = hits as f64 / n;
    let stderr = (p * (1.0 - p) / n).sqrt();
    if hits < WILSON_THRESHOLD || samples - hits < WILSON_THRESHOLD {
        return (stderr, wilson(hits, samples), "wilson");
    }
    let ci = Interval {
        lo: (p - Z95 * stderr).max(0.0),
        hi: (p + Z95 * stderr).min(1.0),
    };
    (stderr, ci, "normal")
}

/// Estimates the probability that a uniform matrix of `M_n(k)` satisfies
/// `predicate`. Bit-identical for a fixed configuration.
pub fn estimate_probability<P>(
    config: &SamplerConfig,
    label: &str,
    predicate: P,
) -> Result<EstimateRecord, SampleError>
where
    P: Fn(&IntMatrix<i64>) -> bool + Sync,
{
    config.validate()?;
    let hits: u64 = (0..config.workers)
        .into_par_iter()
        .map(|w| {
            let mut stream = EntryStream::new(config.seed, w as u64);
            let mut m = IntMatrix::with_bound(config.n, vec![0; config.n * config.n], config.k)
                .expect("zero matrix within bound");
            let mut hits = 0u64;
            for _ in 0..config.share(w) {
                stream.fill(&mut m, config.k);
                if predicate(&m) {
                    hits += 1;
                }
            }
            hits
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let (stderr, ci95, ci_method) = interval(hits, config.samples);
    Ok(EstimateRecord {
        config: *config,
        property: label.to_string(),
        hits,
        p_hat: hits as f64 / config.samples as f64,
        stderr,
        ci95,
        ci_method,
        generator: GENERATOR_ID,
    })
}

fn two_by_two(m: &IntMatrix<i64>) -> (i128, i128, i128, i128) {
    let e = m.entries();
    (e[0] as i128, e[1] as i128, e[2] as i128, e[3] as i128)
}

fn is_square(x: i128) -> bool {
    x >= 0 && {
        let r = x.sqrt();
        r * r == x
    }
}

/// [`estimate_probability`] for a named [`Property`]. 2x2 matrices use the
/// closed-form discriminant and determinant tests.
pub fn estimate_property(
    config: &SamplerConfig,
    property: &Property,
) -> Result<EstimateRecord, SampleError> {
    let label = property.to_string();
    let n = config.n;
    match property {
        Property::Custom(_) => Err(SampleError::Config(format!(
            "property {label:?} has no predicate"
        ))),
        Property::RealEig if n != 2 => Err(SampleError::Config(
            "real-eig is defined for n = 2 only".into(),
        )),
        Property::Singular if n == 2 => estimate_probability(config, &label, |m| {
            let (a, b, c, d) = two_by_two(m);
            a * d == b * c
        }),
        Property::RealEig => estimate_probability(config, &label, |m| {
            let (a, b, c, d) = two_by_two(m);
            (a - d) * (a - d) + 4 * b * c >= 0
        }),
        Property::IntegerEig if n == 2 => estimate_probability(config, &label, |m| {
            let (a, b, c, d) = two_by_two(m);
            is_square((a - d) * (a - d) + 4 * b * c)
        }),
        Property::LambdaEig(l) if n == 2 => {
            let l = *l as i128;
            estimate_probability(config, &label, move |m| {
                let (a, b, c, d) = two_by_two(m);
                (a - l) * (d - l) == b * c
            })
        }
        p => estimate_probability(config, &label, |m| {
            p.holds(m).expect("built-in properties always evaluate")
        }),
    }
}
