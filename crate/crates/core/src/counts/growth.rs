use serde::Serialize;

use super::{CountError, CountRecord};

/// Slack added to the leading exponent to absorb logarithmic factors at the
/// grid sizes reachable on one machine.
pub const EPSILON_MARGIN: f64 = 0.35;

/// Ordinary least-squares line through `(x, y)` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
}

/// Fits `log y = slope * log x + intercept`. Needs at least two distinct `x`
/// and strictly positive data.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<LogLogFit, CountError> {
    if points.len() < 2 {
        return Err(CountError::InvalidArgument(
            "need at least two points to fit".into(),
        ));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(CountError::InvalidArgument(
            "log-log fit needs positive data".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(CountError::InvalidArgument("x values are all equal".into()));
    }
    // y is centred on its first value so constant data gives slope exactly 0
    let y0 = logs[0].1;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - y0)).sum();
    let slope = sxy / sxx;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let intercept = my - slope * mx;
    let residuals = logs
        .iter()
        .map(|&(x, y)| y - (slope * x + intercept))
        .collect();
    Ok(LogLogFit {
        slope,
        intercept,
        residuals,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthProbe {
    pub property: String,
    pub n: usize,
    /// `(k, count)` with counts converted to floating point.
    pub grid: Vec<(u64, f64)>,
    pub exponent: f64,
    pub residuals: Vec<f64>,
    pub epsilon_margin: f64,
}

impl GrowthProbe {
    /// Whether the fitted exponent lies in `[base, base + EPSILON_MARGIN]`.
    pub fn within(&self, base: f64) -> bool {
        self.exponent >= base && self.exponent <= base + self.epsilon_margin
    }
}

/// Least-squares exponent of `count` against `k` over a grid of records.
pub fn growth_probe(records: &[CountRecord]) -> Result<GrowthProbe, CountError> {
    if records.len() < 3 {
        return Err(CountError::InvalidArgument(
            "growth probe needs at least three records".into(),
        ));
    }
    let first = &records[0];
    if records.iter().any(|r| r.property != first.property) {
        return Err(CountError::Mismatched("property"));
    }
    if records.iter().any(|r| r.n != first.n) {
        return Err(CountError::Mismatched("n"));
    }
    if records.windows(2).any(|w| w[0].k >= w[1].k) {
        return Err(CountError::InvalidArgument(
            "k values must be strictly increasing".into(),
        ));
    }
    let grid: Vec<(u64, f64)> = records.iter().map(|r| (r.k, r.count_f64())).collect();
    let points: Vec<(f64, f64)> = grid.iter().map(|&(k, c)| (k as f64, c)).collect();
    let fit = fit_log_log(&points)?;
    Ok(GrowthProbe {
        property: first.property.to_string(),
        n: first.n,
        grid,
        exponent: fit.slope,
        residuals: fit.residuals,
        epsilon_margin: EPSILON_MARGIN,
    })
}
