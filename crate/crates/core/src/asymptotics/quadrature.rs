use crate::scalar::Real;

const MAX_DEPTH: u32 = 48;

fn simpson<F: Real>(fa: F, fm: F, fb: F, a: F, b: F) -> F {
    (b - a) / F::lit(6.0) * (fa + F::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Real>(
    f: &impl Fn(F) -> F,
    a: F,
    b: F,
    fa: F,
    fm: F,
    fb: F,
    whole: F,
    tol: F,
    depth: u32,
) -> F {
    let two = F::lit(2.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= F::lit(15.0) * tol {
        return left + right + delta / F::lit(15.0);
    }
    refine(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Real>(f: impl Fn(F) -> F, a: F, b: F, tol: F) -> F {
    if a == b {
        return F::zero();
    }
    let m = (a + b) / F::lit(2.0);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// Integrates panel by panel between consecutive `breaks` inside `(a, b)`,
/// giving each panel an equal share of `tol`.
pub fn integrate_with_breaks<F: Real>(f: impl Fn(F) -> F, a: F, b: F, breaks: &[F], tol: F) -> F {
    let mut points = vec![a];
    points.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    let share = tol / F::from_usize(points.len() - 1).expect("panel count");
    points
        .windows(2)
        .map(|w| adaptive_simpson(&f, w[0], w[1], share))
        .fold(F::zero(), |acc, x| acc + x)
}
