//! Randomized invariants of the exact linear algebra.

use intmat::{BigMatrix, Matrix};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(n: usize, k: i64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-k..=k, n * n).prop_map(move |e| Matrix::with_bound(n, e, k as u64).unwrap())
}

fn sized(k: i64) -> impl Strategy<Value = Matrix> {
    (1usize..=6).prop_flat_map(move |n| matrix(n, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn det_is_multiplicative((a, c) in (1usize..=5).prop_flat_map(|n| (matrix(n, 9), matrix(n, 9)))) {
        let prod = a.try_mul(&c).unwrap();
        prop_assert_eq!(prod.det_big(), a.det_big() * c.det_big());
    }

    #[test]
    fn adjugate_identity(m in (2usize..=6).prop_flat_map(|n| matrix(n, 12))) {
        let n = m.dim();
        let big: BigMatrix = m.to_big();
        let prod = big.try_mul(&big.adjugate()).unwrap();
        let det = big.det();
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { det.clone() } else { BigInt::zero() };
                prop_assert_eq!(prod.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn char_poly_evaluates_to_shifted_det(m in sized(20), x in -50i64..=50) {
        let p = m.char_poly_big();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), m.dim());
        let n = m.dim();
        let entries: Vec<i64> = (0..n * n)
            .map(|idx| if idx % (n + 1) == 0 { x } else { 0 } - m.entries()[idx])
            .collect();
        let shifted = Matrix::new(n, entries).unwrap();
        prop_assert_eq!(p.eval_big(&BigInt::from(x)), shifted.det_big());
        let c = p.coeffs();
        prop_assert_eq!(&c[n - 1], &(-BigInt::from(m.trace())));
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(&c[0], &(m.det_big() * sign));
    }

    #[test]
    fn integer_eigenvalues_are_exactly_the_singular_shifts(m in sized(3)) {
        let n = m.dim() as i64;
        let eig = m.integer_eigenvalues();
        for l in -n * 3..=n * 3 {
            let singular = m.shifted(&l).det_big().is_zero();
            prop_assert_eq!(eig.contains(&l), singular, "λ={}", l);
        }
        prop_assert!(eig.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn eigenvalues_lie_in_gershgorin_union(m in sized(6)) {
        let disks = m.gershgorin_disks();
        let k = m.bound().unwrap();
        for d in &disks {
            prop_assert!(d.radius <= (m.dim() as i64 - 1) * k as i64);
        }
        for l in m.integer_eigenvalues() {
            prop_assert!(disks.iter().any(|d| d.contains(&l)));
            prop_assert!(l.unsigned_abs() <= m.dim() as u64 * k);
        }
    }

    #[test]
    fn minor_identity_always_holds(m in (3usize..=6).prop_flat_map(|n| matrix(n, 10))) {
        prop_assert_eq!(m.verify_adjugate_identity(), Ok(true));
    }

    #[test]
    fn cofactor_matches_minor_det(m in (2usize..=5).prop_flat_map(|n| matrix(n, 10)), i in 0usize..5, j in 0usize..5) {
        let n = m.dim();
        let (i, j) = (i % n, j % n);
        prop_assert_eq!(m.cofactor(i, j).unwrap(), m.minor_matrix(i, j).unwrap().det());
    }

    #[test]
    fn two_by_two_integer_spectrum_iff_square_discriminant(m in matrix(2, 40)) {
        let d = m.discriminant_2x2().unwrap();
        let square = d >= BigInt::zero() && {
            let r = num_integer::Roots::sqrt(&d);
            &r * &r == d
        };
        prop_assert_eq!(!m.integer_eigenvalues().is_empty(), square);
    }
}
