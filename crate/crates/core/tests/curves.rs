//! Limiting curves checked against values derived by hand and by quadrature.

use approx::assert_abs_diff_eq;
use intmat::asymptotics::{
    curve_table, integrate_curve, one_sided_derivatives, theory_constants, u_r, u_z, v, w, CurveId,
};

#[test]
fn quoted_values() {
    let c = theory_constants::<f64>();
    assert_abs_diff_eq!(u_z(0.0f64).unwrap(), 4.0 * c.alpha, epsilon = 1e-15);
    assert_eq!(format!("{:.6}", u_z(0.0f64).unwrap()), "1.088033");
    assert_abs_diff_eq!(u_r(0.0f64).unwrap(), 40.0 / 49.0, epsilon = 1e-14);
    assert_eq!(u_z(2.0f64).unwrap(), u_z(-2.0f64).unwrap());
    assert_abs_diff_eq!(u_z(-2.0f64).unwrap(), 0.0, epsilon = 1e-15);
    assert_eq!(u_r(2.0f64).unwrap(), 0.0);
    assert_abs_diff_eq!(c.integer_eig_coeff, 0.558_739_574_737_304_6, epsilon = 1e-15);
}

#[test]
fn half_line_integrals() {
    let c = theory_constants::<f64>();
    let iv = integrate_curve(CurveId::V, 0.0f64, 2.0, 1e-10).unwrap();
    assert_abs_diff_eq!(iv, 1.0 / c.alpha, epsilon = 1e-8);
    let iw = integrate_curve(CurveId::W, 0.0f64, 2.0, 1e-10).unwrap();
    assert_abs_diff_eq!(iw, 49.0 / 72.0, epsilon = 1e-8);
}

#[test]
fn values_at_sqrt_two() {
    let r2 = std::f64::consts::SQRT_2;
    assert_abs_diff_eq!(v(r2).unwrap(), 0.204_166_262_771_059_43, epsilon = 1e-13);
    assert_abs_diff_eq!(w(r2).unwrap(), 0.076_319_494_846_197_28, epsilon = 1e-13);
}

#[test]
fn real_spectrum_peak_location() {
    let t = curve_table(CurveId::UR, 0.0001f64).unwrap();
    let (arg, _) = t
        .points
        .iter()
        .filter(|p| p.0 > 0.0)
        .fold((0.0, f64::MIN), |acc, &(d, y)| if y > acc.1 { (d, y) } else { acc });
    assert_abs_diff_eq!(arg, 0.7503, epsilon = 2e-4);
}

#[test]
fn single_precision_area() {
    let a = integrate_curve(CurveId::UZ, -2.0f32, 2.0, 1e-4).unwrap();
    assert!((a - 2.0).abs() < 1e-3);
}

#[test]
fn derivative_diagnostic_is_smooth_at_joins() {
    let r2 = std::f64::consts::SQRT_2;
    for curve in [CurveId::UZ, CurveId::UR] {
        let (l, r) = one_sided_derivatives(curve, r2, 1e-6);
        assert!((l - r).abs() < 1e-3, "{curve} at sqrt 2: {l} vs {r}");
        let (l, r) = one_sided_derivatives(curve, 2.0, 1e-6);
        assert!(l.abs() < 1e-3 && r == 0.0, "{curve} at 2: {l} vs {r}");
    }
}
