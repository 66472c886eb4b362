use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::quadrature::integrate_with_breaks;
use super::{theory_constants, AsymptoticsError};
use crate::scalar::Real;

/// `t log|t|`, continuously extended by 0 at `t = 0`.
fn tlog<F: Real>(t: F) -> F {
    if t == F::zero() {
        F::zero()
    } else {
        t * t.abs().ln()
    }
}

fn c<F: Real>(x: f64) -> F {
    F::lit(x)
}

/// Piece `i` (1 or 2) of `V`, without domain checks.
pub fn v_piece<F: Real>(piece: usize, d: F) -> F {
    let one = F::one();
    match piece {
        1 => {
            c::<F>(4.0) - c::<F>(2.0) * d - d * d + d * d * (one + d).ln()
                + c::<F>(2.0) * tlog(d - one)
        }
        2 => {
            let e = d - one;
            d * d - c::<F>(2.0) * d - e.ln() - e * tlog(e)
        }
        _ => panic!("V has pieces 1 and 2"),
    }
}

/// Piece `i` (1, 2 or 3) of `W`, without domain checks.
pub fn w_piece<F: Real>(piece: usize, d: F) -> F {
    let one = F::one();
    let d2 = d * d;
    let d3 = d2 * d;
    match piece {
        1 => {
            (c::<F>(80.0) + c::<F>(20.0) * d + c::<F>(90.0) * d2 + c::<F>(52.0) * d3
                - c::<F>(107.0) * d2 * d2)
                / (c::<F>(144.0) * (one + d))
                - (c::<F>(5.0) - c::<F>(7.0) * d + c::<F>(8.0) * d2) * tlog(one - d) / c(12.0)
                - d * (one - d2) * (one + d).ln() / c(4.0)
        }
        2 => {
            d * (c::<F>(20.0) + c::<F>(10.0) * d - c::<F>(12.0) * d2 - c::<F>(3.0) * d3)
                / (c::<F>(16.0) * (one + d))
                + (c::<F>(3.0) * d - one) * tlog(d - one) / c(4.0)
                + d * (d2 - one) * (d + one).ln() / c(4.0)
        }
        3 => {
            let e = d - one;
            d * (d - c(2.0)) * (c::<F>(2.0) - c::<F>(6.0) * d + c::<F>(3.0) * d2)
                / (c::<F>(16.0) * e)
                - e * e * tlog(e) / c(4.0)
        }
        _ => panic!("W has pieces 1, 2 and 3"),
    }
}

fn check_half<F: Real>(name: &'static str, d: F) -> Result<(), AsymptoticsError> {
    if !(d >= F::zero() && d <= c(2.0)) {
        return Err(AsymptoticsError::Domain {
            curve: name,
            delta: d.to_f64().unwrap_or(f64::NAN),
            domain: "[0, 2]",
        });
    }
    Ok(())
}

fn check_full<F: Real>(name: &'static str, d: F) -> Result<(), AsymptoticsError> {
    if !(d.abs() <= c(2.0)) {
        return Err(AsymptoticsError::Domain {
            curve: name,
            delta: d.to_f64().unwrap_or(f64::NAN),
            domain: "[-2, 2]",
        });
    }
    Ok(())
}

pub fn v<F: Real>(d: F) -> Result<F, AsymptoticsError> {
    check_half("V", d)?;
    Ok(if d <= F::SQRT_2() { v_piece(1, d) } else { v_piece(2, d) })
}

pub fn w<F: Real>(d: F) -> Result<F, AsymptoticsError> {
    check_half("W", d)?;
    Ok(if d <= F::one() {
        w_piece(1, d)
    } else if d <= F::SQRT_2() {
        w_piece(2, d)
    } else {
        w_piece(3, d)
    })
}

/// Limiting density of rescaled integer eigenvalues, `α V(|δ|)`.
pub fn u_z<F: Real>(d: F) -> Result<F, AsymptoticsError> {
    check_full("U_Z", d)?;
    Ok(theory_constants::<F>().alpha * v(d.abs())?)
}

/// Limiting density of rescaled real eigenvalues, `β W(|δ|)`.
pub fn u_r<F: Real>(d: F) -> Result<F, AsymptoticsError> {
    check_full("U_R", d)?;
    Ok(theory_constants::<F>().beta * w(d.abs())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CurveId {
    #[serde(rename = "U_Z")]
    UZ,
    #[serde(rename = "U_R")]
    UR,
    V,
    W,
}

impl CurveId {
    pub fn eval<F: Real>(self, d: F) -> Result<F, AsymptoticsError> {
        match self {
            CurveId::UZ => u_z(d),
            CurveId::UR => u_r(d),
            CurveId::V => v(d),
            CurveId::W => w(d),
        }
    }

    pub fn domain<F: Real>(self) -> (F, F) {
        match self {
            CurveId::UZ | CurveId::UR => (c(-2.0), c(2.0)),
            CurveId::V | CurveId::W => (F::zero(), c(2.0)),
        }
    }

    /// Points where the curve's formula changes or its slope is unbounded.
    pub fn breakpoints<F: Real>() -> [F; 4] {
        [-F::SQRT_2(), -F::one(), F::one(), F::SQRT_2()]
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveId::UZ => "U_Z",
            CurveId::UR => "U_R",
            CurveId::V => "V",
            CurveId::W => "W",
        })
    }
}

impl FromStr for CurveId {
    type Err = AsymptoticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "u_z" | "uz" => Ok(CurveId::UZ),
            "u_r" | "ur" => Ok(CurveId::UR),
            "v" => Ok(CurveId::V),
            "w" => Ok(CurveId::W),
            _ => Err(AsymptoticsError::Invalid(format!("unknown curve {s:?}"))),
        }
    }
}

/// `∫_lo^hi curve`, split at every breakpoint inside the range.
pub fn integrate_curve<F: Real>(curve: CurveId, lo: F, hi: F, tol: F) -> Result<F, AsymptoticsError> {
    let (a, b) = curve.domain::<F>();
    if !(lo >= a && hi <= b && lo <= hi) {
        return Err(AsymptoticsError::Invalid(format!(
            "range [{lo}, {hi}] is not inside the domain of {curve}"
        )));
    }
    if !(tol > F::zero()) {
        return Err(AsymptoticsError::Invalid("tolerance must be positive".into()));
    }
    let f = |x: F| curve.eval(x).expect("quadrature nodes stay inside the domain");
    Ok(integrate_with_breaks(f, lo, hi, &CurveId::breakpoints::<F>(), tol))
}

/// Left and right difference quotients at `x`, treating the curve as 0
/// outside its domain. A diagnostic only.
pub fn one_sided_derivatives(curve: CurveId, x: f64, h: f64) -> (f64, f64) {
    let f = |t: f64| curve.eval(t).unwrap_or(0.0);
    ((f(x) - f(x - h)) / h, (f(x + h) - f(x)) / h)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveTable<F> {
    pub curve: CurveId,
    pub step: F,
    pub points: Vec<(F, F)>,
}

/// Equally spaced values over the curve's domain. `step` must divide the
/// domain length.
pub fn curve_table<F: Real>(curve: CurveId, step: F) -> Result<CurveTable<F>, AsymptoticsError> {
    let (a, b) = curve.domain::<F>();
    let len = b - a;
    if !(step > F::zero() && step <= len) {
        return Err(AsymptoticsError::Invalid("grid step must be in (0, domain length]".into()));
    }
    let m = (len / step).round();
    if (m * step - len).abs() > c::<F>(1e-9).max(F::epsilon() * c(16.0)) {
        return Err(AsymptoticsError::Invalid(format!(
            "grid step {step} does not divide the domain evenly"
        )));
    }
    let m = m.to_usize().expect("grid size");
    let mf = F::from_usize(m).expect("grid size");
    let points = (0..=m)
        .map(|i| {
            let d = a + len * F::from_usize(i).expect("grid index") / mf;
            let d = d.max(a).min(b);
            Ok((d, curve.eval(d)?))
        })
        .collect::<Result<_, AsymptoticsError>>()?;
    Ok(CurveTable { curve, step, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn endpoint_values() {
        assert_eq!(v(0.0f64).unwrap(), 4.0);
        assert_abs_diff_eq!(v(2.0f64).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w(0.0f64).unwrap(), 5.0 / 9.0, epsilon = 1e-15);
        assert_eq!(w(2.0f64).unwrap(), 0.0);
    }

    #[test]
    fn pieces_agree_at_joins() {
        let r2 = std::f64::consts::SQRT_2;
        let closed = 2.0 - 2.0 * r2 + (4.0 - 2.0 * r2) * (1.0 + r2).ln();
        assert_abs_diff_eq!(v_piece(1, r2), closed, epsilon = 1e-12);
        assert_abs_diff_eq!(v_piece(2, r2), closed, epsilon = 1e-12);
        assert_eq!(w_piece(1, 1.0f64), 15.0 / 32.0);
        assert_eq!(w_piece(2, 1.0f64), 15.0 / 32.0);
        assert_abs_diff_eq!(w_piece(2, r2), w_piece(3, r2), epsilon = 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(v(-0.1f64).is_err());
        assert!(w(2.0001f64).is_err());
        assert!(u_z(-2.5f64).is_err());
        assert!(u_r(f64::NAN).is_err());
        assert!(u_r(-2.0f64).is_ok());
    }

    #[test]
    fn densities_are_even() {
        for i in 0..=200 {
            let d = i as f64 / 100.0;
            assert_eq!(u_z(d).unwrap(), u_z(-d).unwrap());
            assert_eq!(u_r(d).unwrap(), u_r(-d).unwrap());
        }
    }

    #[test]
    fn table_shape() {
        let t = curve_table(CurveId::UZ, 0.001f64).unwrap();
        assert_eq!(t.points.len(), 4001);
        assert_eq!(t.points[2000].0, 0.0);
        assert_eq!(t.points[4000].0, 2.0);
        assert!(curve_table(CurveId::UZ, 0.003f64).is_err());
        assert!(curve_table(CurveId::UZ, 0.0f64).is_err());
        assert_eq!(curve_table(CurveId::W, 0.5f64).unwrap().points.len(), 5);
    }

    #[test]
    fn single_precision_curves() {
        let a = u_r(0.75f32).unwrap();
        let b = u_r(0.75f64).unwrap();
        assert!((f64::from(a) - b).abs() < 1e-5);
    }

    #[test]
    fn integrate_rejects_bad_ranges() {
        assert!(integrate_curve(CurveId::V, -1.0f64, 1.0, 1e-6).is_err());
        assert!(integrate_curve(CurveId::UZ, 1.0f64, 0.0, 1e-6).is_err());
        assert!(integrate_curve(CurveId::UZ, 0.0f64, 1.0, 0.0).is_err());
    }
}
