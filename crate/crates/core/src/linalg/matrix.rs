use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::LinalgError;
use crate::scalar::ExactInt;

/// A square matrix of exact integers stored row-major.
///
/// `bound`, when present, is the entry bound `k` of the family the matrix was
/// drawn from; every entry satisfies `|e| <= k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix<T> {
    n: usize,
    entries: Vec<T>,
    bound: Option<u64>,
}

impl<T: ExactInt> IntMatrix<T> {
    pub fn new(n: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if n == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(LinalgError::EntryCount {
                n,
                got: entries.len(),
            });
        }
        Ok(IntMatrix {
            n,
            entries,
            bound: None,
        })
    }

    /// Builds a matrix tagged with entry bound `k`, rejecting any `|e| > k`.
    pub fn with_bound(n: usize, entries: Vec<T>, k: u64) -> Result<Self, LinalgError> {
        let mut m = Self::new(n, entries)?;
        m.set_bound(k)?;
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare);
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        IntMatrix {
            n,
            entries: vec![T::zero(); n * n],
            bound: None,
        }
    }

    /// The `n x n` matrix with every entry equal to `value`.
    pub fn filled(n: usize, value: T) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        IntMatrix {
            n,
            entries: vec![value; n * n],
            bound: None,
        }
    }

    pub fn set_bound(&mut self, k: u64) -> Result<(), LinalgError> {
        let k_big = BigInt::from(k);
        if let Some(e) = self.entries.iter().find(|e| e.abs().to_big() > k_big) {
            return Err(LinalgError::EntryOutOfBound {
                entry: e.to_string(),
                bound: k,
            });
        }
        self.bound = Some(k);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    /// The tagged bound, or the largest absolute entry when untagged.
    pub fn effective_bound(&self) -> BigInt {
        match self.bound {
            Some(k) => BigInt::from(k),
            None => self
                .entries
                .iter()
                .map(|e| e.abs().to_big())
                .max()
                .unwrap_or_default(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `self - shift * I`. The result carries no bound tag.
    pub fn shifted(&self, shift: &T) -> Self {
        let mut out = self.clone();
        out.bound = None;
        for i in 0..self.n {
            let idx = i * self.n + i;
            out.entries[idx] = out.entries[idx].clone() - shift.clone();
        }
        out
    }

    /// Deletes row `i` and column `j` (0-based). Requires `n >= 2`.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Result<Self, LinalgError> {
        self.check_index(i, j)?;
        if self.n < 2 {
            return Err(LinalgError::Dimension {
                op: "minor",
                n: self.n,
                required: ">= 2",
            });
        }
        Ok(self.without(&[i], &[j]))
    }

    /// Deletes the listed rows and columns. Panics if nothing would remain.
    pub(crate) fn without(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries: Vec<T> = (0..self.n)
            .filter(|r| !rows.contains(r))
            .flat_map(|r| {
                (0..self.n)
                    .filter(|c| !cols.contains(c))
                    .map(move |c| self.get(r, c).clone())
            })
            .collect();
        let m = self.n - rows.len();
        IntMatrix {
            n: m,
            entries,
            bound: self.bound,
        }
    }

    pub(crate) fn check_index(&self, i: usize, j: usize) -> Result<(), LinalgError> {
        if i >= self.n || j >= self.n {
            return Err(LinalgError::IndexOutOfRange { i, j, n: self.n });
        }
        Ok(())
    }

    /// Exact product. Fails with [`LinalgError::Overflow`] if an entry does
    /// not fit in `T`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for l in 0..n {
                    let term = self
                        .get(i, l)
                        .checked_mul(other.get(l, j))
                        .ok_or(LinalgError::Overflow)?;
                    acc = acc.checked_add(&term).ok_or(LinalgError::Overflow)?;
                }
                entries.push(acc);
            }
        }
        Ok(IntMatrix {
            n,
            entries,
            bound: None,
        })
    }

    pub fn to_big(&self) -> IntMatrix<BigInt> {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.to_big()).collect(),
            bound: self.bound,
        }
    }

    /// Converts every entry to another exact type, `None` if one does not fit.
    pub fn try_convert<U: ExactInt>(&self) -> Option<IntMatrix<U>> {
        let entries = self
            .entries
            .iter()
            .map(|e| U::from_big(&e.to_big()))
            .collect::<Option<Vec<U>>>()?;
        Some(IntMatrix {
            n: self.n,
            entries,
            bound: self.bound,
        })
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [T] {
        &mut self.entries
    }

    pub(crate) fn from_parts(n: usize, entries: Vec<T>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        IntMatrix {
            n,
            entries,
            bound: None,
        }
    }
}

impl<T: ExactInt> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_entry_count() {
        assert_eq!(
            IntMatrix::<i64>::new(2, vec![1, 2, 3]),
            Err(LinalgError::EntryCount { n: 2, got: 3 })
        );
        assert_eq!(IntMatrix::<i64>::new(0, vec![]), Err(LinalgError::EmptyMatrix));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(IntMatrix::with_bound(2, vec![1i64, -2, 0, 2], 2).is_ok());
        assert!(matches!(
            IntMatrix::with_bound(2, vec![1i64, -3, 0, 2], 2),
            Err(LinalgError::EntryOutOfBound { bound: 2, .. })
        ));
    }

    #[test]
    fn effective_bound_falls_back_to_max_entry() {
        let m = IntMatrix::from_rows(vec![vec![1i64, -7], vec![3, 2]]).unwrap();
        assert_eq!(m.effective_bound(), BigInt::from(7));
        let tagged = IntMatrix::with_bound(2, vec![1i64, -7, 3, 2], 9).unwrap();
        assert_eq!(tagged.effective_bound(), BigInt::from(9));
    }

    #[test]
    fn minor_deletes_row_and_column() {
        let m = IntMatrix::from_rows(vec![vec![1i64, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let minor = m.minor_matrix(0, 1).unwrap();
        assert_eq!(minor.entries(), &[4, 6, 7, 9]);
        assert!(matches!(
            m.minor_matrix(3, 0),
            Err(LinalgError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn product_overflow_is_reported() {
        let m = IntMatrix::filled(2, i64::MAX / 2);
        assert_eq!(m.try_mul(&m), Err(LinalgError::Overflow));
        let ok = m.to_big().try_mul(&m.to_big()).unwrap();
        assert_eq!(ok.get(0, 0), &(BigInt::from(i64::MAX / 2).pow(2) * 2));
    }

    #[test]
    fn display_is_nested_rows() {
        let m = IntMatrix::from_rows(vec![vec![1i64, -2], vec![0, 3]]).unwrap();
        assert_eq!(m.to_string(), "[[1, -2], [0, 3]]");
    }
}
