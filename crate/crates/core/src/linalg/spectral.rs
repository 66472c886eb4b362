use num_bigint::BigInt;
use serde::Serialize;

use super::{IntMatrix, LinalgError};
use crate::scalar::ExactInt;

/// A Gershgorin disk: center `m_ii`, radius `sum_{j != i} |m_ij|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GershgorinDisk<T> {
    pub center: T,
    pub radius: T,
}

impl<T: ExactInt> GershgorinDisk<T> {
    pub fn contains(&self, point: &T) -> bool {
        (point.clone() - self.center.clone()).abs() <= self.radius
    }

    pub fn contains_real(&self, point: f64) -> bool {
        let c = self.center.to_f64().unwrap_or(f64::NAN);
        let r = self.radius.to_f64().unwrap_or(f64::NAN);
        (point - c).abs() <= r
    }
}

/// Both sides of `a11 a22 - a12 a21 = det(M) det(Z)`, where `a_ij` are the
/// unsigned minors of `M` and `Z` is `M` without its first two rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorIdentity {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl MinorIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl<T: ExactInt> IntMatrix<T> {
    fn require_2x2(&self, op: &'static str) -> Result<(), LinalgError> {
        if self.dim() != 2 {
            return Err(LinalgError::Dimension {
                op,
                n: self.dim(),
                required: "= 2",
            });
        }
        Ok(())
    }

    /// `(m11 - m22)^2 + 4 m12 m21` for a 2x2 matrix.
    pub fn discriminant_2x2(&self) -> Result<BigInt, LinalgError> {
        self.require_2x2("discriminant_2x2")?;
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| self.entries()[i].to_big());
        let diff = a - d;
        Ok(&diff * &diff + 4 * b * c)
    }

    pub fn has_real_eigenvalues_2x2(&self) -> Result<bool, LinalgError> {
        Ok(self.discriminant_2x2()? >= BigInt::from(0))
    }

    /// Both real eigenvalues of a 2x2 matrix in ascending order, from the exact
    /// trace and discriminant.
    pub fn real_eigenvalues_2x2(&self) -> Result<(f64, f64), LinalgError> {
        let disc = self.discriminant_2x2()?;
        if disc < BigInt::from(0) {
            return Err(LinalgError::ComplexEigenvalues);
        }
        let t = self.trace().to_f64().unwrap_or(f64::NAN);
        let root = num_traits::ToPrimitive::to_f64(&disc)
            .unwrap_or(f64::INFINITY)
            .sqrt();
        Ok(((t - root) / 2.0, (t + root) / 2.0))
    }

    pub fn gershgorin_disks(&self) -> Vec<GershgorinDisk<T>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let radius = (0..n)
                    .filter(|&j| j != i)
                    .fold(T::zero(), |acc, j| acc + self.get(i, j).abs());
                GershgorinDisk {
                    center: self.get(i, i).clone(),
                    radius,
                }
            })
            .collect()
    }

    pub fn in_gershgorin_union(&self, point: &T) -> bool {
        self.gershgorin_disks().iter().any(|d| d.contains(point))
    }

    /// Evaluates both sides of the 2x2 adjugate-minor identity exactly.
    pub fn adjugate_minor_identity(&self) -> Result<MinorIdentity, LinalgError> {
        let n = self.dim();
        if n < 3 {
            return Err(LinalgError::Dimension {
                op: "verify_adjugate_identity",
                n,
                required: ">= 3",
            });
        }
        let big = self.to_big();
        let minor = |i, j| big.without(&[i], &[j]).det_big();
        let lhs = minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0);
        let z = big.without(&[0, 1], &[0, 1]);
        let rhs = big.det_big() * z.det_big();
        Ok(MinorIdentity { lhs, rhs })
    }

    pub fn verify_adjugate_identity(&self) -> Result<bool, LinalgError> {
        Ok(self.adjugate_minor_identity()?.holds())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix<i64> {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn discriminant_sign_cases() {
        assert_eq!(m(vec![vec![1, 0], vec![0, -1]]).discriminant_2x2(), Ok(BigInt::from(4)));
        assert_eq!(m(vec![vec![1, 0], vec![0, -1]]).has_real_eigenvalues_2x2(), Ok(true));
        assert_eq!(m(vec![vec![0, 1], vec![-1, 0]]).has_real_eigenvalues_2x2(), Ok(false));
        assert!(matches!(
            IntMatrix::<i64>::identity(3).has_real_eigenvalues_2x2(),
            Err(LinalgError::Dimension { .. })
        ));
    }

    #[test]
    fn real_eigenvalue_closed_forms() {
        assert_eq!(IntMatrix::<i64>::identity(2).real_eigenvalues_2x2(), Ok((1.0, 1.0)));
        assert_eq!(m(vec![vec![0, 1], vec![1, 0]]).real_eigenvalues_2x2(), Ok((-1.0, 1.0)));
        let (lo, hi) = m(vec![vec![2, 1], vec![1, 1]]).real_eigenvalues_2x2().unwrap();
        let s5 = 5f64.sqrt();
        assert!((lo - (3.0 - s5) / 2.0).abs() < 1e-15);
        assert!((hi - (3.0 + s5) / 2.0).abs() < 1e-15);
        assert_eq!(
            m(vec![vec![0, 1], vec![-1, 0]]).real_eigenvalues_2x2(),
            Err(LinalgError::ComplexEigenvalues)
        );
    }

    #[test]
    fn gershgorin_of_identity_and_all_k() {
        let disks = IntMatrix::<i64>::identity(3).gershgorin_disks();
        assert_eq!(disks, vec![GershgorinDisk { center: 1, radius: 0 }; 3]);
        let all_k = IntMatrix::filled(4, 5i64);
        for d in all_k.gershgorin_disks() {
            assert_eq!(d, GershgorinDisk { center: 5, radius: 15 });
        }
        assert!(all_k.in_gershgorin_union(&20));
        assert!(!all_k.in_gershgorin_union(&21));
    }

    #[test]
    fn minor_identity_small_cases() {
        assert_eq!(IntMatrix::<i64>::identity(3).verify_adjugate_identity(), Ok(true));
        let zero_first_row = m(vec![vec![0, 0, 0], vec![4, -2, 7], vec![1, 3, 3]]);
        let sides = zero_first_row.adjugate_minor_identity().unwrap();
        assert_eq!(sides.lhs, BigInt::from(0));
        assert!(sides.holds());
        assert!(matches!(
            IntMatrix::<i64>::identity(2).verify_adjugate_identity(),
            Err(LinalgError::Dimension { .. })
        ));
    }

    #[test]
    fn three_by_three_specialisation() {
        // a11 a22 - a12 a21 = m33 det M
        let a = m(vec![vec![2, -1, 4], vec![3, 5, -2], vec![-6, 1, 7]]);
        let sides = a.adjugate_minor_identity().unwrap();
        assert_eq!(sides.rhs, BigInt::from(7) * a.det_big());
        assert!(sides.holds());
    }
}
