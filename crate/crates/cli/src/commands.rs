use intmat::asymptotics::{convergence_report, curve_table, CurveId, Empirical, ReportTarget};
use intmat::counts::{
    brute_force_count, count_integer_eig_2x2, count_integer_eig_any_n, count_lambda_eig_2x2,
    count_real_eig_2x2, count_singular_2x2, total_matrices, CountRecord, Property,
};
use intmat::monte_carlo::{
    eigenvalue_histogram_exact, eigenvalue_histogram_sampled, estimate_property, Normalization,
    SamplerConfig, ScaledHistogram, SpectrumMode,
};
use serde::Serialize;

use crate::args::{
    CountArgs, CurveArg, CurveArgs, EstimateArgs, Format, HistArgs, ModeArg, NormalizerArg,
    PropertyArg, ReportArgs, SourceArg, TargetArg,
};
use crate::output::{csv_writer, grid, sig12, write_json, RunManifest};
use crate::{CliError, Context};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn property(p: PropertyArg, lambda: Option<i64>) -> Result<Property, CliError> {
    match (p, lambda) {
        (PropertyArg::LambdaEig, Some(l)) => Ok(Property::LambdaEig(l)),
        (PropertyArg::LambdaEig, None) => Err(usage("lambda-eig needs --lambda")),
        (_, Some(_)) => Err(usage("--lambda only applies to lambda-eig")),
        (PropertyArg::Singular, None) => Ok(Property::Singular),
        (PropertyArg::IntegerEig, None) => Ok(Property::IntegerEig),
        (PropertyArg::RealEig, None) => Ok(Property::RealEig),
        (PropertyArg::Always, None) => Ok(Property::Always),
    }
}

fn count_one(ctx: &Context, p: &Property, n: usize, k: u64) -> Result<CountRecord, CliError> {
    let b = &ctx.budget;
    let record = match (p, n) {
        (Property::Always, _) => {
            CountRecord::new(Property::Always, n, k, total_matrices(n, k))
        }
        (Property::Singular, 2) => count_singular_2x2(k, b)?,
        (Property::RealEig, 2) => count_real_eig_2x2(k, b)?,
        (Property::IntegerEig, 2) => count_integer_eig_2x2(k, b)?,
        (Property::LambdaEig(l), 2) => count_lambda_eig_2x2(k, *l, b)?,
        (Property::RealEig, _) => return Err(usage("real-eig is defined for n = 2 only")),
        (Property::IntegerEig, _) => count_integer_eig_any_n(n, k, b)?,
        (p, _) => brute_force_count(
            n,
            k,
            p.clone(),
            |m| p.holds(m).expect("built-in properties always evaluate"),
            b,
        )?,
    };
    Ok(record)
}

pub fn count(ctx: &Context, a: &CountArgs) -> Result<(), CliError> {
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let p = property(a.property, a.lambda)?;
    let ks = match (&a.k, &a.k_grid) {
        (Some(k), None) => vec![*k],
        (None, Some(g)) if !g.is_empty() => g.clone(),
        _ => return Err(usage("give exactly one of --k or --k-grid")),
    };
    let records = ks
        .iter()
        .map(|&k| count_one(ctx, &p, a.n, k))
        .collect::<Result<Vec<_>, _>>()?;
    match ctx.format {
        Format::Json => {
            let m = RunManifest::new("count", a, ctx.workers, ctx.budget);
            write_json(&m, "records", &records)?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["property", "n", "k", "count", "total", "probability"])?;
            for r in &records {
                w.write_record([
                    r.property.to_string(),
                    r.n.to_string(),
                    r.k.to_string(),
                    r.count.to_string(),
                    r.total.to_string(),
                    sig12(r.probability_f64()),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn estimate(ctx: &Context, a: &EstimateArgs) -> Result<(), CliError> {
    let p = property(a.property, a.lambda)?;
    let config = SamplerConfig::new(a.n, a.k, a.samples, a.seed).with_workers(ctx.workers);
    let r = estimate_property(&config, &p)?;
    match ctx.format {
        Format::Json => {
            let m = RunManifest::new("estimate", a, ctx.workers, ctx.budget);
            write_json(&m, "estimate", &r)?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record([
                "property", "n", "k", "samples", "seed", "workers", "hits", "p_hat", "stderr",
                "ci_lo", "ci_hi", "ci_method", "generator",
            ])?;
            let c = &r.config;
            w.write_record([
                r.property.clone(),
                c.n.to_string(),
                c.k.to_string(),
                c.samples.to_string(),
                c.seed.to_string(),
                c.workers.to_string(),
                r.hits.to_string(),
                sig12(r.p_hat),
                sig12(r.stderr),
                sig12(r.ci95.lo),
                sig12(r.ci95.hi),
                r.ci_method.to_string(),
                r.generator.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn mode(m: ModeArg) -> SpectrumMode {
    match m {
        ModeArg::Integer => SpectrumMode::IntegerSpectrum,
        ModeArg::Real => SpectrumMode::RealSpectrum,
    }
}

fn bin_width(bins: usize, width: Option<f64>) -> Result<f64, CliError> {
    match width {
        Some(w) => Ok(w),
        None if bins == 0 => Err(usage("--bins must be at least 1")),
        None => Ok(4.0 / bins as f64),
    }
}

fn sampled_config(ctx: &Context, k: u64, samples: Option<u64>, seed: Option<u64>) -> Result<SamplerConfig, CliError> {
    let seed = seed.ok_or_else(|| usage("sampled histograms need --seed"))?;
    let samples = samples.ok_or_else(|| usage("sampled histograms need --samples"))?;
    Ok(SamplerConfig::new(2, k, samples, seed).with_workers(ctx.workers))
}

#[derive(Serialize)]
struct HistBin {
    delta_lo: f64,
    delta_hi: f64,
    density: f64,
}

#[derive(Serialize)]
struct HistDoc<'a> {
    k: u64,
    mode: String,
    source: &'a intmat::monte_carlo::HistogramSource,
    bin_width: f64,
    normalizer: String,
    area: f64,
    bins: Vec<HistBin>,
}

pub fn hist(ctx: &Context, a: &HistArgs) -> Result<(), CliError> {
    if a.n != 2 {
        return Err(usage("histograms are defined for n = 2 only"));
    }
    let width = bin_width(a.bins, a.bin_width)?;
    let h = match a.source {
        SourceArg::Exact => {
            if a.mode != ModeArg::Integer {
                return Err(usage("exact histograms need --mode integer"));
            }
            if a.samples.is_some() || a.seed.is_some() {
                return Err(usage("--samples and --seed apply to sampled histograms"));
            }
            let norm = match a.normalizer {
                NormalizerArg::HalfMass => Normalization::HalfEigenvalueMass,
                NormalizerArg::IntegerCount => Normalization::IntegerEigCount,
            };
            eigenvalue_histogram_exact(a.k, mode(a.mode), width, norm, &ctx.budget)?
        }
        SourceArg::Sampled => {
            if a.normalizer != NormalizerArg::HalfMass {
                return Err(usage("--normalizer applies to exact histograms"));
            }
            let config = sampled_config(ctx, a.k, a.samples, a.seed)?;
            eigenvalue_histogram_sampled(&config, mode(a.mode), width)?
        }
    };
    match ctx.format {
        Format::Json => {
            let m = RunManifest::new("hist", a, ctx.workers, ctx.budget);
            write_json(&m, "histogram", hist_doc(&h))?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["delta_lo", "delta_hi", "density"])?;
            for (i, d) in h.density().iter().enumerate() {
                let (lo, hi) = h.edges(i);
                w.write_record([grid(lo), grid(hi), sig12(*d)])?;
            }
            w.write_record([
                "#meta".to_string(),
                format!("normalizer={}", h.normalizer_exact()),
                format!("area={:.6}", h.area()),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn hist_doc(h: &ScaledHistogram) -> HistDoc<'_> {
    HistDoc {
        k: h.k,
        mode: h.mode.to_string(),
        source: &h.source,
        bin_width: h.bin_width,
        normalizer: h.normalizer_exact(),
        area: h.area(),
        bins: h
            .density()
            .iter()
            .enumerate()
            .map(|(i, &density)| {
                let (delta_lo, delta_hi) = h.edges(i);
                HistBin {
                    delta_lo,
                    delta_hi,
                    density,
                }
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct CurveRow {
    delta: f64,
    u_z: f64,
    u_r: f64,
}

pub fn curve(ctx: &Context, a: &CurveArgs) -> Result<(), CliError> {
    let z = curve_table(CurveId::UZ, a.step)?;
    let r = curve_table(CurveId::UR, a.step)?;
    let rows: Vec<CurveRow> = z
        .points
        .iter()
        .zip(&r.points)
        .map(|(&(delta, u_z), &(_, u_r))| CurveRow { delta, u_z, u_r })
        .collect();
    match ctx.format {
        Format::Json => {
            let m = RunManifest::new("curve", a, ctx.workers, ctx.budget);
            write_json(&m, "rows", &rows)?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["delta", "u_z", "u_r"])?;
            for row in &rows {
                w.write_record([grid(row.delta), sig12(row.u_z), sig12(row.u_r)])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn report(ctx: &Context, a: &ReportArgs) -> Result<(), CliError> {
    if a.k_grid.len() < 2 {
        return Err(usage("a report needs a --k-grid of at least two values"));
    }
    if a.k_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--k-grid must be strictly increasing"));
    }
    let b = &ctx.budget;
    let report = match a.target {
        TargetArg::Singular | TargetArg::IntegerEig => {
            let (target, counter): (_, fn(u64, &_) -> _) = if a.target == TargetArg::Singular {
                (ReportTarget::Singular, count_singular_2x2)
            } else {
                (ReportTarget::IntegerEig, count_integer_eig_2x2)
            };
            let records = a
                .k_grid
                .iter()
                .map(|&k| counter(k, b))
                .collect::<Result<Vec<CountRecord>, _>>()?;
            convergence_report(Empirical::Counts(&records), target)?
        }
        TargetArg::Histogram => {
            let width = bin_width(a.bins, None)?;
            let hists = a
                .k_grid
                .iter()
                .map(|&k| match a.curve {
                    CurveArg::UZ => Ok(eigenvalue_histogram_exact(
                        k,
                        SpectrumMode::IntegerSpectrum,
                        width,
                        Normalization::HalfEigenvalueMass,
                        b,
                    )?),
                    CurveArg::UR => {
                        let config = sampled_config(ctx, k, a.samples, a.seed)?;
                        Ok(eigenvalue_histogram_sampled(&config, SpectrumMode::RealSpectrum, width)?)
                    }
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let curve = match a.curve {
                CurveArg::UZ => CurveId::UZ,
                CurveArg::UR => CurveId::UR,
            };
            convergence_report(Empirical::Histograms(&hists), ReportTarget::Histogram(curve))?
        }
    };
    let m = RunManifest::new("report", a, ctx.workers, ctx.budget);
    write_json(&m, "report", &report)?;
    Ok(())
}
