//! Dense selection and permutation matrices acting on column-stacked
//! `m × m` matrices.
//!
//! `vec` stacks columns, so entry `(i, j)` sits at `j m + i`. `K` selects the
//! `M = m(m−1)/2` entries below the diagonal in column-major order and `P`
//! maps `vec(A)` to `vec(Aᵀ)`. Both are `O(m⁴)` in memory and only meant for
//! cross-checking the structured formulas, hence the dimension guard.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest dimension for which dense operators are built.
pub const MAX_DENSE_DIM: usize = 16;

/// Position of `(i, j)`, `i > j` (zero-based), in the strictly lower
/// column-major ordering.
pub fn lower_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i > j && i < m);
    j * m - j * (j + 1) / 2 + (i - j - 1)
}

/// The `(i, j)` pairs below the diagonal in the order used by `K`.
pub fn lower_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|j| ((j + 1)..m).map(move |i| (i, j)))
        .collect()
}

/// Entries below the diagonal, `K vec(A)`, without forming `K`.
pub fn lower_entries(a: &DMatrix<f64>) -> DVector<f64> {
    let pairs = lower_pairs(a.nrows());
    DVector::from_iterator(pairs.len(), pairs.iter().map(|&(i, j)| a[(i, j)]))
}

/// Column stacking.
pub fn vec(a: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(a.as_slice())
}

/// Inverse of [`vec`] for square matrices.
pub fn unvec(v: &DVector<f64>, m: usize) -> DMatrix<f64> {
    DMatrix::from_column_slice(m, m, v.as_slice())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VecOps {
    m: usize,
    k: DMatrix<f64>,
    p: DMatrix<f64>,
}

impl VecOps {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyDimension);
        }
        if m > MAX_DENSE_DIM {
            return Err(Error::SizeGuard {
                m,
                max: MAX_DENSE_DIM,
            });
        }
        let mm = m * m;
        let pairs = lower_pairs(m);
        let mut k = DMatrix::zeros(pairs.len(), mm);
        for (row, &(i, j)) in pairs.iter().enumerate() {
            k[(row, j * m + i)] = 1.0;
        }
        let mut p = DMatrix::zeros(mm, mm);
        for i in 0..m {
            for j in 0..m {
                p[(j * m + i, i * m + j)] = 1.0;
            }
        }
        Ok(Self { m, k, p })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// `M = m(m−1)/2`.
    pub fn lower_len(&self) -> usize {
        self.k.nrows()
    }

    /// Selection matrix, `M × m²`.
    pub fn k(&self) -> &DMatrix<f64> {
        &self.k
    }

    /// Transposition permutation, `m² × m²`.
    pub fn p(&self) -> &DMatrix<f64> {
        &self.p
    }

    /// `I − P`.
    pub fn antisymmetrizer(&self) -> DMatrix<f64> {
        let mm = self.m * self.m;
        DMatrix::identity(mm, mm) - &self.p
    }

    /// Skew-symmetric matrix with lower entries `a`: `unvec((I − P) Kᵀ a)`.
    pub fn skew_from_lower(&self, a: &DVector<f64>) -> DMatrix<f64> {
        unvec(&(self.antisymmetrizer() * self.k.transpose() * a), self.m)
    }

    /// `½ K (I − P)(B ⊗ I)(I − P) Kᵀ`.
    pub fn sandwich(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let ip = self.antisymmetrizer();
        let kron = b.kronecker(&DMatrix::<f64>::identity(self.m, self.m));
        (&self.k * &ip * kron * &ip * self.k.transpose()) * 0.5
    }

    /// Same as [`VecOps::sandwich`] with the Kronecker factors swapped,
    /// `½ K (I − P)(I ⊗ B)(I − P) Kᵀ`.
    pub fn sandwich_left(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let ip = self.antisymmetrizer();
        let kron = DMatrix::<f64>::identity(self.m, self.m).kronecker(b);
        (&self.k * &ip * kron * &ip * self.k.transpose()) * 0.5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_layout() {
        let ops = VecOps::new(2).unwrap();
        assert_eq!(ops.k(), &DMatrix::from_row_slice(1, 4, &[0.0, 1.0, 0.0, 0.0]));
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(vec(&a).as_slice(), &[1.0, 3.0, 2.0, 4.0]);
        assert_eq!((ops.p() * vec(&a)).as_slice(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn integer_identities() {
        for m in 1..=6 {
            let ops = VecOps::new(m).unwrap();
            let mm = m * m;
            let big = ops.lower_len();
            assert_eq!(ops.p() * ops.p(), DMatrix::identity(mm, mm));
            assert_eq!(ops.p().transpose(), *ops.p());
            assert_eq!(ops.k() * ops.k().transpose(), DMatrix::identity(big, big));
            let ip = ops.antisymmetrizer();
            assert_eq!(&ip * ops.k().transpose() * ops.k() * &ip, ip * 1.0);
            for (row, (i, j)) in lower_pairs(m).into_iter().enumerate() {
                assert_eq!(lower_index(m, i, j), row);
            }
        }
    }

    #[test]
    fn skew_reconstruction() {
        let m = 5;
        let ops = VecOps::new(m).unwrap();
        let s = DMatrix::from_fn(m, m, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0);
        let a = &s - s.transpose();
        let lower = ops.k() * vec(&a);
        assert_eq!(lower, lower_entries(&a));
        assert_eq!(ops.skew_from_lower(&lower), a);
    }

    #[test]
    fn kronecker_order_is_immaterial_between_antisymmetrizers() {
        let m = 4;
        let ops = VecOps::new(m).unwrap();
        let r = DMatrix::from_fn(m, m, |i, j| (i as f64 + 1.0).ln() * (j as f64 - 1.5));
        let b = &r * r.transpose();
        assert!((ops.sandwich(&b) - ops.sandwich_left(&b)).amax() <= 1e-12);
    }

    #[test]
    fn guard() {
        assert_eq!(
            VecOps::new(17),
            Err(Error::SizeGuard { m: 17, max: 16 })
        );
        assert_eq!(VecOps::new(0), Err(Error::EmptyDimension));
        assert_eq!(VecOps::new(1).unwrap().lower_len(), 0);
    }
}
