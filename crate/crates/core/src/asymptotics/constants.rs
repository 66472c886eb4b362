use serde::Serialize;

use crate::scalar::Real;

/// Limiting constants for `M_2(k)`, each evaluated from its own formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryConstants<F> {
    /// `6/π²`: `P(singular) ~ singular_coeff · log k / k²`.
    pub singular_coeff: F,
    /// `(7√2 + 4 + 3 log(√2+1)) / (3π²)`: `P(integer eigenvalue) ~ c · log k / k`.
    pub integer_eig_coeff: F,
    /// `9 / (14√2 + 8 + 6 log(√2+1))`.
    pub alpha: F,
    /// `72/49`.
    pub beta: F,
    /// `49/72`, the limiting probability of a real spectrum.
    pub real_eig_prob: F,
    /// `96/π²`: `|M^0_2(k)| ~ singular_count_coeff · k² log k`.
    pub singular_count_coeff: F,
}

pub fn theory_constants<F: Real>() -> TheoryConstants<F> {
    let pi2 = F::PI() * F::PI();
    let sqrt2 = F::SQRT_2();
    let log_term = (sqrt2 + F::one()).ln();
    TheoryConstants {
        singular_coeff: F::lit(6.0) / pi2,
        integer_eig_coeff: (F::lit(7.0) * sqrt2 + F::lit(4.0) + F::lit(3.0) * log_term)
            / (F::lit(3.0) * pi2),
        alpha: F::lit(9.0)
            / (F::lit(14.0) * sqrt2 + F::lit(8.0) + F::lit(6.0) * log_term),
        beta: F::lit(72.0) / F::lit(49.0),
        real_eig_prob: F::lit(49.0) / F::lit(72.0),
        singular_count_coeff: F::lit(96.0) / pi2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_digits() {
        let c = theory_constants::<f64>();
        assert_eq!(format!("{:.6}", c.alpha), "0.272008");
        assert_eq!(format!("{:.6}", c.singular_coeff), "0.607927");
        assert!((c.real_eig_prob - 0.680556).abs() < 5e-7);
        assert!((c.beta * c.real_eig_prob - 1.0).abs() < 1e-15);
    }

    #[test]
    fn f32_agrees_with_f64() {
        let a = theory_constants::<f32>();
        let b = theory_constants::<f64>();
        assert!((f64::from(a.alpha) - b.alpha).abs() < 1e-6);
        assert!((f64::from(a.integer_eig_coeff) - b.integer_eig_coeff).abs() < 1e-6);
    }
}
