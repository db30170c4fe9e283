//! Blocked evaluation of the truncated Fourier series
//! `S = Σ_{r=1}^{p} α_r (β_r − √2 W)ᵀ / r` for a unit-step increment `W`.
//!
//! The coefficient columns are processed in blocks of `n`: each block fills an
//! `m × n` slab of α and of `β̃_r = (β_r − √2 W) / r` and adds `α β̃ᵀ` to `S`
//! with one dense product.

use nalgebra::DMatrix;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::rng::{DrawRange, GaussianSource};
use crate::types::StandardizedIncrement;

/// Number of retained Fourier modes, `p ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncationParameter(usize);

impl TruncationParameter {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            Err(Error::InvalidTruncation)
        } else {
            Ok(Self(p))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl std::fmt::Display for TruncationParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Scratch sizing for the blocked product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesKernelConfig {
    /// Columns per partial product; `None` picks the largest block that fits
    /// `memory_cap`.
    pub block_size: Option<usize>,
    /// Upper bound on the number of scratch values (both slabs together).
    pub memory_cap: usize,
}

pub const DEFAULT_MEMORY_CAP: usize = 1 << 26;

impl Default for SeriesKernelConfig {
    fn default() -> Self {
        Self {
            block_size: None,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl SeriesKernelConfig {
    pub fn with_block_size(block_size: usize) -> Self {
        Self {
            block_size: Some(block_size),
            ..Self::default()
        }
    }

    /// Block width actually used for dimension `m` and `p` modes.
    pub fn effective_block(&self, m: usize, p: usize) -> Result<usize> {
        let fit = self.memory_cap / (2 * m.max(1));
        if fit == 0 {
            return Err(Error::ResourceLimit {
                required: 2 * m,
                cap: self.memory_cap,
            });
        }
        let wanted = self.block_size.unwrap_or(p).max(1);
        Ok(wanted.min(p).min(fit).max(1))
    }
}

/// Read-only view of externally supplied coefficients, `m × p` column-major.
#[derive(Debug, Clone, Copy)]
pub struct Coefficients<'a> {
    m: usize,
    p: usize,
    alpha: &'a [f64],
    beta: &'a [f64],
}

impl<'a> Coefficients<'a> {
    /// The first `p` columns of `alpha` and `beta`.
    pub fn leading(alpha: &'a DMatrix<f64>, beta: &'a DMatrix<f64>, p: usize) -> Result<Self> {
        let m = alpha.nrows();
        if beta.nrows() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: beta.nrows(),
            });
        }
        let cols = alpha.ncols().min(beta.ncols());
        if p == 0 {
            return Err(Error::InvalidTruncation);
        }
        if p > cols {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: cols,
            });
        }
        Ok(Self {
            m,
            p,
            alpha: &alpha.as_slice()[..m * p],
            beta: &beta.as_slice()[..m * p],
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn truncation(&self) -> usize {
        self.p
    }
}

enum Feed<'a> {
    Draws {
        src: &'a GaussianSource,
        alpha: DrawRange,
        beta: DrawRange,
    },
    Stored(Coefficients<'a>),
}

impl Feed<'_> {
    fn alpha(&self, offset: usize, out: &mut [f64]) {
        match self {
            Feed::Draws { src, alpha, .. } => src.fill_range(*alpha, offset as u64, out),
            Feed::Stored(c) => out.copy_from_slice(&c.alpha[offset..offset + out.len()]),
        }
    }

    fn beta(&self, offset: usize, out: &mut [f64]) {
        match self {
            Feed::Draws { src, beta, .. } => src.fill_range(*beta, offset as u64, out),
            Feed::Stored(c) => out.copy_from_slice(&c.beta[offset..offset + out.len()]),
        }
    }
}

/// Draws `2pm` normals from `src` (all α columns, then all β columns) and
/// returns `S`.
pub fn truncated_series(
    w: &StandardizedIncrement,
    p: TruncationParameter,
    cfg: &SeriesKernelConfig,
    src: &mut GaussianSource,
) -> Result<DMatrix<f64>> {
    let m = w.dim();
    let p = p.get();
    let block = cfg.effective_block(m, p)?;
    let len = (m * p) as u64;
    let alpha = src.claim(len);
    let beta = src.claim(len);
    let feed = Feed::Draws {
        src: &*src,
        alpha,
        beta,
    };
    Ok(accumulate(w, p, block, &feed))
}

/// `S` from injected coefficients; draws nothing.
pub fn truncated_series_from_coefficients(
    w: &StandardizedIncrement,
    coeffs: Coefficients<'_>,
    cfg: &SeriesKernelConfig,
) -> Result<DMatrix<f64>> {
    let m = w.dim();
    if coeffs.m != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: coeffs.m,
        });
    }
    let block = cfg.effective_block(m, coeffs.p)?;
    Ok(accumulate(w, coeffs.p, block, &Feed::Stored(coeffs)))
}

fn accumulate(w: &StandardizedIncrement, p: usize, block: usize, feed: &Feed<'_>) -> DMatrix<f64> {
    let m = w.dim();
    let shift: Vec<f64> = w.as_slice().iter().map(|x| SQRT_2 * x).collect();
    let mut s = DMatrix::<f64>::zeros(m, m);
    let mut a = vec![0.0; m * block];
    let mut b = vec![0.0; m * block];

    let mut r0 = 0;
    while r0 < p {
        let n = block.min(p - r0);
        let (a, b) = (&mut a[..m * n], &mut b[..m * n]);
        feed.alpha(r0 * m, a);
        feed.beta(r0 * m, b);
        for (k, col) in b.chunks_exact_mut(m).enumerate() {
            let inv_r = 1.0 / (r0 + k + 1) as f64;
            for (x, d) in col.iter_mut().zip(&shift) {
                *x = (*x - d) * inv_r;
            }
        }
        add_outer(&mut s, a, b, m, n);
        r0 += n;
    }
    s
}

/// `C (m×m) += A (m×n) · Bᵀ (n×m)` for column-major `A`, `B`.
pub(crate) fn add_outer(c: &mut DMatrix<f64>, a: &[f64], b: &[f64], m: usize, n: usize) {
    assert!(c.shape() == (m, m) && a.len() >= m * n && b.len() >= m * n);
    if m == 0 || n == 0 {
        return;
    }
    // SAFETY: the assertion above keeps every access inside the buffers.
    unsafe {
        matrixmultiply::dgemm(
            m,
            n,
            m,
            1.0,
            a.as_ptr(),
            1,
            m as isize,
            b.as_ptr(),
            m as isize,
            1,
            1.0,
            c.as_mut_ptr(),
            1,
            m as isize,
        );
    }
}
