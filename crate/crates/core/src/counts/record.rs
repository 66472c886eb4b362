use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::CountError;
use crate::linalg::IntMatrix;

/// The property a count or estimate refers to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Property {
    Singular,
    IntegerEig,
    RealEig,
    LambdaEig(i64),
    Always,
    Custom(String),
}

impl Property {
    /// Evaluates the property on a concrete matrix. `Custom` has no intrinsic
    /// meaning and always returns `None`.
    pub fn holds(&self, m: &IntMatrix<i64>) -> Option<bool> {
        Some(match self {
            Property::Singular => m.det_big().is_zero(),
            Property::IntegerEig => !m.integer_eigenvalues().is_empty(),
            Property::RealEig => m.has_real_eigenvalues_2x2().ok()?,
            Property::LambdaEig(l) => m.shifted(l).det_big().is_zero(),
            Property::Always => true,
            Property::Custom(_) => return None,
        })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Singular => f.write_str("singular"),
            Property::IntegerEig => f.write_str("integer-eig"),
            Property::RealEig => f.write_str("real-eig"),
            Property::LambdaEig(l) => write!(f, "lambda-eig:{l}"),
            Property::Always => f.write_str("always"),
            Property::Custom(label) => f.write_str(label),
        }
    }
}

impl FromStr for Property {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "singular" => Property::Singular,
            "integer-eig" => Property::IntegerEig,
            "real-eig" => Property::RealEig,
            "always" => Property::Always,
            other => match other.strip_prefix("lambda-eig:") {
                Some(l) => Property::LambdaEig(l.parse().map_err(|_| {
                    CountError::InvalidArgument(format!("bad eigenvalue in {other:?}"))
                })?),
                None => {
                    return Err(CountError::InvalidArgument(format!(
                        "unknown property {other:?}"
                    )))
                }
            },
        })
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An exact count of matrices in `M_n(k)` with a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    pub property: Property,
    pub n: usize,
    pub k: u64,
    pub count: BigUint,
    pub total: BigUint,
}

impl CountRecord {
    /// `total` is set to `(2k+1)^(n^2)`. Panics if `count > total`.
    pub fn new(property: Property, n: usize, k: u64, count: impl Into<BigUint>) -> Self {
        let total = total_matrices(n, k);
        let count = count.into();
        assert!(count <= total, "count exceeds |M_n(k)|");
        CountRecord {
            property,
            n,
            k,
            count,
            total,
        }
    }

    pub fn probability(&self) -> Ratio<BigInt> {
        Ratio::new(
            BigInt::from(self.count.clone()),
            BigInt::from(self.total.clone()),
        )
    }

    pub fn probability_f64(&self) -> f64 {
        self.probability()
            .to_f64()
            .unwrap_or_else(|| ratio_f64(&self.count, &self.total))
    }

    pub fn count_f64(&self) -> f64 {
        self.count.to_f64().unwrap_or(f64::INFINITY)
    }
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
}

/// `|M_n(k)| = (2k+1)^(n^2)`.
pub fn total_matrices(n: usize, k: u64) -> BigUint {
    BigUint::from(2 * k + 1).pow((n * n) as u32)
}

impl Serialize for CountRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            property: &'a Property,
            n: usize,
            k: u64,
            count: String,
            total: String,
            probability: f64,
            probability_exact: String,
        }
        let p = self.probability();
        Row {
            property: &self.property,
            n: self.n,
            k: self.k,
            count: self.count.to_string(),
            total: self.total.to_string(),
            probability: self.probability_f64(),
            probability_exact: format!("{}/{}", p.numer(), p.denom()),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_is_power_of_alphabet() {
        assert_eq!(total_matrices(2, 1), BigUint::from(81u32));
        assert_eq!(total_matrices(3, 1), BigUint::from(19683u32));
        let r = CountRecord::new(Property::Singular, 2, 1, 33u32);
        assert_eq!(r.probability(), Ratio::new(BigInt::from(11), BigInt::from(27)));
        assert!((r.probability_f64() - 33.0 / 81.0).abs() < 1e-16);
    }

    #[test]
    #[should_panic(expected = "count exceeds")]
    fn count_cannot_exceed_total() {
        CountRecord::new(Property::Always, 2, 1, 82u32);
    }

    #[test]
    fn property_labels_round_trip() {
        for p in [
            Property::Singular,
            Property::IntegerEig,
            Property::RealEig,
            Property::LambdaEig(-3),
            Property::Always,
        ] {
            assert_eq!(p.to_string().parse::<Property>(), Ok(p));
        }
        assert!("lambda-eig:x".parse::<Property>().is_err());
        assert!("diagonalizable".parse::<Property>().is_err());
    }
}
