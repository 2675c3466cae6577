//! Symmetric matrices over exact and floating scalars.

use nalgebra::{DMatrix, SymmetricEigen};

use super::exact::ExactScalar;
use super::KernelError;

/// A square symmetric matrix stored densely in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

pub type ExactMatrix = SymMatrix<ExactScalar>;
pub type FloatMatrix = SymMatrix<f64>;

impl<T: Clone + PartialEq> SymMatrix<T> {
    /// Builds from rows; rejects ragged or non-symmetric input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, KernelError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(KernelError::NotSquare);
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(KernelError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds from a generator evaluated on the upper triangle (`i <= j`).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries: Vec<Option<T>> = vec![None; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[j * n + i] = Some(v.clone());
                entries[i * n + j] = Some(v);
            }
        }
        Self { n, entries: entries.into_iter().map(|e| e.expect("filled")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    /// Principal submatrix on the given (ordered) index list.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }
}

impl ExactMatrix {
    pub fn to_f64(&self) -> FloatMatrix {
        self.map(ExactScalar::to_f64)
    }

    /// Exact Sylvester test: every leading principal minor is positive.
    ///
    /// Runs Gaussian elimination without pivoting; the k-th pivot is the ratio
    /// of consecutive leading minors, so all pivots are positive iff all minors are.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.n;
        let mut a: Vec<ExactScalar> = self.entries.clone();
        for k in 0..n {
            let pivot = a[k * n + k].clone();
            if pivot.signum() <= 0 {
                return false;
            }
            let inv = pivot.inverse().expect("positive pivot");
            for i in (k + 1)..n {
                let factor = &a[i * n + k] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let delta = &factor * &a[k * n + j];
                    a[i * n + j] = &a[i * n + j] - &delta;
                }
            }
        }
        true
    }

    /// Exact determinant by elimination with row pivoting.
    pub fn determinant(&self) -> ExactScalar {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = ExactScalar::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return ExactScalar::zero();
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for i in (k + 1)..n {
                let factor = &a[i * n + k] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let delta = &factor * &a[k * n + j];
                    a[i * n + j] = &a[i * n + j] - &delta;
                }
            }
        }
        det
    }

    /// Exact rank via elimination with pivot search.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(rank * n + j, p * n + j);
            }
            let inv = a[rank * n + col].inverse().expect("nonzero pivot");
            for i in (rank + 1)..n {
                let factor = &a[i * n + col] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * &a[rank * n + j];
                    a[i * n + j] = &a[i * n + j] - &delta;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Eigenvalue sign counts of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.zero)
    }
}

impl FloatMatrix {
    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.entries)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.n == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_nalgebra()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Counts eigenvalues above `tol`, below `-tol`, and in between.
    pub fn signature(&self, tol: f64) -> Result<Signature, KernelError> {
        if !(tol > 0.0) {
            return Err(KernelError::NonPositiveTolerance(tol));
        }
        let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
        for e in self.eigenvalues() {
            if e > tol {
                sig.pos += 1;
            } else if e < -tol {
                sig.neg += 1;
            } else {
                sig.zero += 1;
            }
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(rows: &[&[i64]]) -> ExactMatrix {
        SymMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_signature() {
        let id = SymMatrix::from_fn(4, |i, j| if i == j { 1.0 } else { 0.0 });
        assert_eq!(id.signature(1e-9).unwrap(), Signature { pos: 4, neg: 0, zero: 0 });
    }

    #[test]
    fn tangent_pair_is_degenerate() {
        let m = SymMatrix::from_rows(vec![vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert_eq!(m.signature(1e-9).unwrap(), Signature { pos: 1, neg: 0, zero: 1 });
        let e = ex(&[&[1, -1], &[-1, 1]]);
        assert!(!e.is_positive_definite());
        assert!(e.determinant().is_zero());
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn rejects_asymmetric_and_bad_tolerance() {
        assert!(matches!(
            SymMatrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]]),
            Err(KernelError::NotSymmetric { row: 0, col: 1 })
        ));
        let m = SymMatrix::from_rows(vec![vec![1.0]]).unwrap();
        assert!(m.signature(0.0).is_err());
    }

    #[test]
    fn single_unit_entry_is_positive_definite() {
        assert!(ex(&[&[1]]).is_positive_definite());
        assert_eq!(ex(&[&[2, 1], &[1, 2]]).determinant(), ExactScalar::from_int(3));
    }
}
