//! Invariant suites behind `intmat verify`.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use intmat::asymptotics::{integrate_curve, v_piece, w_piece, CurveId};
use intmat::counts::{
    count_integer_eig_2x2, count_real_eig_2x2, count_repeated_eig_2x2, count_singular_2x2,
    for_each_matrix, LambdaCounter,
};
use intmat::monte_carlo::{sample_matrix, EntryStream};
use intmat::Matrix;
use num_integer::Roots;
use num_traits::ToPrimitive;
use num_traits::Zero;
use serde::Serialize;

use crate::args::{Format, Suite, VerifyArgs};
use crate::output::{write_json, RunManifest};
use crate::{CliError, Context};

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl SuiteResult {
    fn pass(suite: &'static str, checked: u64, detail: String) -> Self {
        SuiteResult {
            suite,
            passed: true,
            checked,
            detail,
            counterexample: None,
        }
    }

    fn fail(suite: &'static str, checked: u64, detail: String, counterexample: String) -> Self {
        SuiteResult {
            suite,
            passed: false,
            checked,
            detail,
            counterexample: Some(counterexample),
        }
    }
}

fn dump(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.dim())
        .map(|i| format!("{:?}", m.row(i)))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn need_seed(a: &VerifyArgs, suite: &str) -> Result<u64, CliError> {
    a.seed
        .ok_or_else(|| CliError::Usage(format!("verify {suite} is randomized and needs --seed")))
}

/// Both sides of the minor identity on random matrices.
fn identity(a: &VerifyArgs) -> Result<SuiteResult, CliError> {
    let seed = need_seed(a, "identity")?;
    if a.n < 3 {
        return Err(CliError::Usage("verify identity needs --n 3 or more".into()));
    }
    let mut stream = EntryStream::new(seed, 0);
    for t in 0..a.trials {
        let m = sample_matrix(&mut stream, a.n, a.k);
        let id = m.adjugate_minor_identity().map_err(|e| CliError::Usage(e.to_string()))?;
        if !id.holds() {
            return Ok(SuiteResult::fail(
                "identity",
                t + 1,
                format!("lhs {} != rhs {}", id.lhs, id.rhs),
                dump(&m),
            ));
        }
    }
    Ok(SuiteResult::pass(
        "identity",
        a.trials,
        format!("a11 a22 - a12 a21 = det(M) det(Z) on {} random {n}x{n} matrices, k = {}", a.trials, a.k, n = a.n),
    ))
}

/// Integer eigenvalues are roots, bounded by nk, and inside the disks.
fn gershgorin(a: &VerifyArgs) -> Result<SuiteResult, CliError> {
    let seed = need_seed(a, "gershgorin")?;
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let bound = a.n as i128 * i128::from(a.k);
    let mut stream = EntryStream::new(seed, 0);
    let mut roots = 0u64;
    for t in 0..a.trials {
        let m = sample_matrix(&mut stream, a.n, a.k);
        for l in m.integer_eigenvalues() {
            roots += 1;
            let problem = if !m.shifted(&l).det_big().is_zero() {
                Some("det(M - λI) != 0")
            } else if i128::from(l).abs() > bound {
                Some("|λ| > nk")
            } else if !m.in_gershgorin_union(&l) {
                Some("outside every Gershgorin disk")
            } else {
                None
            };
            if let Some(p) = problem {
                return Ok(SuiteResult::fail(
                    "gershgorin",
                    t + 1,
                    format!("λ = {l}: {p}"),
                    dump(&m),
                ));
            }
        }
    }
    Ok(SuiteResult::pass(
        "gershgorin",
        a.trials,
        format!("{roots} integer eigenvalues of {} random {n}x{n} matrices, all within nk = {bound}", a.trials, n = a.n),
    ))
}

#[derive(Default)]
struct Tally {
    singular: u64,
    real: u64,
    integer: u64,
    repeated: u64,
    lambda: BTreeMap<i64, u64>,
}

/// Direct enumeration of `M_2(k)` with the quadratic formula.
fn enumerate(k: u64, ctx: &Context) -> Result<Tally, CliError> {
    let mut t = Tally::default();
    for_each_matrix(2, k, &ctx.budget, |m| {
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| i128::from(m.entries()[i]));
        if a * d == b * c {
            t.singular += 1;
        }
        let disc = (a - d) * (a - d) + 4 * b * c;
        if disc < 0 {
            return;
        }
        t.real += 1;
        let s = disc.sqrt();
        if s * s != disc {
            return;
        }
        t.integer += 1;
        let lo = ((a + d - s) / 2) as i64;
        let hi = ((a + d + s) / 2) as i64;
        *t.lambda.entry(lo).or_insert(0) += 1;
        if s == 0 {
            t.repeated += 1;
        } else {
            *t.lambda.entry(hi).or_insert(0) += 1;
        }
    })?;
    Ok(t)
}

/// Fast 2x2 counters against enumeration for every k up to `k_max`.
fn oracle(ctx: &Context, a: &VerifyArgs) -> Result<SuiteResult, CliError> {
    let b = &ctx.budget;
    let as_u64 = |r: intmat::counts::CountRecord| r.count.to_u64().expect("2x2 counts fit");
    for k in 1..=a.k_max {
        let brute = enumerate(k, ctx)?;
        let lambda = LambdaCounter::new(k, b)?;
        let mut checks = vec![
            ("singular", as_u64(count_singular_2x2(k, b)?), brute.singular),
            ("real-eig", as_u64(count_real_eig_2x2(k, b)?), brute.real),
            ("integer-eig", as_u64(count_integer_eig_2x2(k, b)?), brute.integer),
            ("repeated-eig", as_u64(count_repeated_eig_2x2(k, b)?), brute.repeated),
        ];
        let lambda_sum: u64 = lambda.all().iter().map(|&(_, c)| c).sum();
        checks.push(("sum over λ = 2|M^Z| - repeated", lambda_sum, 2 * brute.integer - brute.repeated));
        for (label, fast, slow) in checks {
            if fast != slow {
                return Ok(SuiteResult::fail(
                    "oracle",
                    k,
                    format!("{label} disagrees"),
                    format!("k = {k}: counter {fast}, enumeration {slow}"),
                ));
            }
        }
        for (l, fast) in lambda.all() {
            let slow = brute.lambda.get(&l).copied().unwrap_or(0);
            if fast != slow {
                return Ok(SuiteResult::fail(
                    "oracle",
                    k,
                    "per-eigenvalue count disagrees".into(),
                    format!("k = {k}, λ = {l}: counter {fast}, enumeration {slow}"),
                ));
            }
        }
    }
    Ok(SuiteResult::pass(
        "oracle",
        a.k_max,
        format!("2x2 counters equal enumeration for k = 1..{}", a.k_max),
    ))
}

/// Joins, evenness, endpoints, sign and total area of the limiting densities.
fn curves() -> Result<SuiteResult, CliError> {
    let fail = |detail: String, at: f64| {
        Ok(SuiteResult::fail("curves", 0, detail, format!("δ = {at}")))
    };
    let joins = [
        ("V at sqrt 2", SQRT_2, v_piece(1, SQRT_2) - v_piece(2, SQRT_2)),
        ("W at 1", 1.0, w_piece(1, 1.0) - w_piece(2, 1.0)),
        ("W at sqrt 2", SQRT_2, w_piece(2, SQRT_2) - w_piece(3, SQRT_2)),
    ];
    for (name, at, gap) in joins {
        if gap.abs() > 1e-12 {
            return fail(format!("{name}: pieces differ by {gap:e}"), at);
        }
    }
    let mut checked = joins.len() as u64;
    for curve in [CurveId::UZ, CurveId::UR] {
        let f = |d: f64| curve.eval(d).expect("grid stays in [-2, 2]");
        for i in 0..=2000 {
            let d = i as f64 / 1000.0;
            let (y, y_neg) = (f(d), f(-d));
            checked += 1;
            if y != y_neg {
                return fail(format!("{curve} is not even: {y} vs {y_neg}"), d);
            }
            if !(y >= 0.0) {
                return fail(format!("{curve} is negative: {y}"), d);
            }
        }
        for end in [-2.0, 2.0] {
            if f(end).abs() > 1e-12 {
                return fail(format!("{curve} does not vanish at the endpoint: {}", f(end)), end);
            }
        }
        let area: f64 = integrate_curve(curve, -2.0, 2.0, 1e-10)?;
        if (area - 2.0).abs() > 1e-6 {
            return fail(format!("{curve} has area {area}, expected 2"), 2.0);
        }
    }
    Ok(SuiteResult::pass(
        "curves",
        checked,
        "pieces join, U_Z and U_R are even, non-negative, vanish at ±2 and have area 2".into(),
    ))
}

pub fn run(ctx: &Context, a: &VerifyArgs) -> Result<(), CliError> {
    let suites = match a.suite {
        Suite::Identity => vec![Suite::Identity],
        Suite::Gershgorin => vec![Suite::Gershgorin],
        Suite::Oracle => vec![Suite::Oracle],
        Suite::Curves => vec![Suite::Curves],
        Suite::All => vec![Suite::Identity, Suite::Gershgorin, Suite::Oracle, Suite::Curves],
    };
    if suites.iter().any(|s| matches!(s, Suite::Identity | Suite::Gershgorin)) {
        need_seed(a, "identity/gershgorin")?;
    }
    let mut results = Vec::new();
    for s in suites {
        let r = match s {
            Suite::Identity => identity(a)?,
            Suite::Gershgorin => gershgorin(a)?,
            Suite::Oracle => oracle(ctx, a)?,
            Suite::Curves => curves()?,
            Suite::All => unreachable!(),
        };
        results.push(r);
    }
    match ctx.format {
        Format::Json => {
            let m = RunManifest::new("verify", a, ctx.workers, ctx.budget);
            write_json(&m, "suites", &results)?;
        }
        Format::Csv => {
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                println!("{tag} {}: {}", r.suite, r.detail);
                if let Some(c) = &r.counterexample {
                    println!("  counterexample: {c}");
                }
            }
        }
    }
    match results.iter().find(|r| !r.passed) {
        Some(r) => Err(CliError::Verification(format!(
            "{}: {} ({})",
            r.suite,
            r.detail,
            r.counterexample.as_deref().unwrap_or("")
        ))),
        None => Ok(()),
    }
}
