//! Tail covariance matrices of the lower-triangle vector of a Lévy-area
//! remainder, evaluated without forming Kronecker products.
//!
//! For symmetric `B` the matrix `½ K (I − P)(B ⊗ I)(I − P) Kᵀ` has entry
//! `½(δ_ac B_bd − δ_ad B_bc − δ_bc B_ad + δ_bd B_ac)` at the pairs
//! `(a, b)`, `(c, d)` with `a > b`, `c > d`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::oracle::vecops::lower_pairs;
use crate::types::StandardizedIncrement;

/// Relative eigenvalue floor applied before inverting a square root.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// `½ K (I − P)(B ⊗ I)(I − P) Kᵀ` for symmetric `B`.
pub fn structured_covariance(b: &DMatrix<f64>) -> DMatrix<f64> {
    let pairs = lower_pairs(b.nrows());
    let n = pairs.len();
    let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    DMatrix::from_fn(n, n, |r, s| {
        let (a, bb) = pairs[r];
        let (c, dd) = pairs[s];
        0.5 * (d(a, c) * b[(bb, dd)] - d(a, dd) * b[(bb, c)] - d(bb, c) * b[(a, dd)]
            + d(bb, dd) * b[(a, c)])
    })
}

/// `Σ^∞ = I + K (I − P)(W Wᵀ ⊗ I)(I − P) Kᵀ` for a unit-step increment.
pub fn sigma_inf(w: &StandardizedIncrement) -> DMatrix<f64> {
    let v = w.values();
    let outer = v * v.transpose();
    let mut s = structured_covariance(&outer) * 2.0;
    for i in 0..s.nrows() {
        s[(i, i)] += 1.0;
    }
    s
}

/// Closed-form square root `(Σ^∞ + t I) / (1 + t)`, `t = sqrt(1 + |W|²)`.
pub fn sqrt_sigma_inf(w: &StandardizedIncrement) -> DMatrix<f64> {
    let t = (1.0 + w.values().norm_squared()).sqrt();
    let mut s = sigma_inf(w);
    for i in 0..s.nrows() {
        s[(i, i)] += t;
    }
    s / (1.0 + t)
}

/// Symmetric positive-semidefinite covariance of a tail vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TailCovariance {
    matrix: DMatrix<f64>,
}

impl TailCovariance {
    pub fn new(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// `Σ^{-1/2}` with eigenvalues clamped at [`EIGEN_CLAMP`] times the
    /// largest one.
    pub fn inverse_sqrt(&self) -> Result<DMatrix<f64>> {
        inverse_sqrt(&self.matrix)
    }
}

/// Inverse square root of a symmetric matrix by eigendecomposition.
pub fn inverse_sqrt(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularCovariance);
    }
    let eig = SymmetricEigen::new(a.clone());
    let top = eig.eigenvalues.max();
    if !(top.is_finite() && top > 0.0) {
        return Err(Error::SingularCovariance);
    }
    let floor = EIGEN_CLAMP * top;
    let scale = eig.eigenvalues.map(|l| 1.0 / l.max(floor).sqrt());
    let q = &eig.eigenvectors;
    Ok(q * DMatrix::from_diagonal(&scale) * q.transpose())
}

/// Square root of a symmetric positive-semidefinite matrix by
/// eigendecomposition; negative rounding noise is set to zero.
pub fn eigen_sqrt(a: &DMatrix<f64>) -> DMatrix<f64> {
    if a.nrows() == 0 {
        return DMatrix::zeros(0, 0);
    }
    let eig = SymmetricEigen::new(a.clone());
    let root = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let q = &eig.eigenvectors;
    q * DMatrix::from_diagonal(&root) * q.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::vecops::VecOps;
    use crate::rng::{draw_matrix, GaussianSource};
    use nalgebra::DVector;

    fn unit(v: &[f64]) -> StandardizedIncrement {
        StandardizedIncrement::unit(DVector::from_column_slice(v)).unwrap()
    }

    #[test]
    fn structured_matches_dense() {
        let mut src = GaussianSource::new(12);
        for m in 1..=7 {
            let r = draw_matrix(&mut src, m, m + 2);
            let b = &r * r.transpose();
            let ops = VecOps::new(m).unwrap();
            assert!((structured_covariance(&b) - ops.sandwich(&b)).amax() <= 1e-12);
        }
    }

    #[test]
    fn sigma_inf_matches_dense() {
        let mut src = GaussianSource::new(13);
        for m in 2..=6 {
            let w = draw_matrix(&mut src, m, 1);
            let ops = VecOps::new(m).unwrap();
            let big = ops.lower_len();
            let dense = DMatrix::identity(big, big) + ops.sandwich(&(&w * w.transpose())) * 2.0;
            let got = sigma_inf(&unit(w.as_slice()));
            assert!((got - dense).amax() <= 1e-12);
        }
    }

    #[test]
    fn zero_increment_gives_identity() {
        let s = sqrt_sigma_inf(&unit(&[0.0; 4]));
        assert_eq!(s, DMatrix::identity(6, 6));
    }

    #[test]
    fn two_dimensional_root() {
        let s = sqrt_sigma_inf(&unit(&[1.0, 0.0]));
        assert_eq!(s.shape(), (1, 1));
        assert!((s[(0, 0)] - 2f64.sqrt()).abs() <= 1e-15);
        assert!((sigma_inf(&unit(&[1.0, 0.0]))[(0, 0)] - 2.0).abs() <= 1e-15);
    }

    #[test]
    fn root_squares_back() {
        let mut src = GaussianSource::new(14);
        for m in 2..=8 {
            for _ in 0..10 {
                let w = unit(draw_matrix(&mut src, m, 1).as_slice());
                let root = sqrt_sigma_inf(&w);
                let sig = sigma_inf(&w);
                assert!((&root * &root - &sig).amax() <= 1e-12);
                assert!((root - eigen_sqrt(&sig)).amax() <= 1e-12);
            }
        }
    }

    #[test]
    fn inverse_sqrt_whitens() {
        let mut src = GaussianSource::new(15);
        let r = draw_matrix(&mut src, 6, 9);
        let a = &r * r.transpose();
        let inv = inverse_sqrt(&a).unwrap();
        assert!((&inv * &a * &inv - DMatrix::<f64>::identity(6, 6)).amax() <= 1e-10);
        assert_eq!(
            inverse_sqrt(&DMatrix::zeros(3, 3)),
            Err(Error::SingularCovariance)
        );
        assert_eq!(inverse_sqrt(&DMatrix::zeros(0, 0)).unwrap().shape(), (0, 0));
    }
}
