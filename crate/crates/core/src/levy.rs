//! The four Lévy-area generators for a unit-step increment.
//!
//! All of them evaluate the truncated series `S` and return
//! `A = (S − Sᵀ) / 2π`. The higher variants add a Gaussian approximation of
//! the discarded tail before taking the skew part, scaled by
//! `a = sqrt(2 ψ₁(p+1))`:
//!
//! * Milstein: `S += a W γ₁ᵀ`
//! * Wiktorsson: `G = a Γ`, `S += (G − Gᵀ) W Wᵀ / (1 + sqrt(1 + |W|²)) + G`
//! * MronRoe: `S += a (W γ₁ᵀ + Γ₂)`
//!
//! `γ₁` has `m` entries and `Γ`, `Γ₂` are strictly lower triangular with
//! `m(m−1)/2` entries. Draws are taken in the order α, β, γ₁, Γ.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::rng::{draw_strict_lower, GaussianSource};
use crate::series::{
    truncated_series, truncated_series_from_coefficients, Coefficients, SeriesKernelConfig,
    TruncationParameter,
};
use crate::trigamma::trigamma_tail;
use crate::types::{AlgorithmId, LevyArea, StandardizedIncrement};

/// Externally supplied tail variables. Missing entries count as zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TailInputs {
    /// `γ₁`, length `m` (Milstein, MronRoe).
    pub gamma1: Option<DVector<f64>>,
    /// Strictly lower triangular `Γ` or `Γ₂`, `m × m` (Wiktorsson, MronRoe).
    pub gamma_lower: Option<DMatrix<f64>>,
}

impl TailInputs {
    pub fn zero() -> Self {
        Self::default()
    }
}

/// Number of normals drawn by `alg` at dimension `m` and truncation `p`.
pub fn draw_count(alg: AlgorithmId, m: u64, p: u64) -> u64 {
    let series = 2 * p * m;
    let lower = m * m.saturating_sub(1) / 2;
    match alg {
        AlgorithmId::Fourier => series,
        AlgorithmId::Milstein => series + m,
        AlgorithmId::Wiktorsson => series + lower,
        AlgorithmId::MronRoe => series + lower + m,
    }
}

/// A configured Lévy-area generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyGenerator {
    pub algorithm: AlgorithmId,
    pub truncation: TruncationParameter,
    pub kernel: SeriesKernelConfig,
}

impl LevyGenerator {
    pub fn new(algorithm: AlgorithmId, truncation: TruncationParameter) -> Self {
        Self {
            algorithm,
            truncation,
            kernel: SeriesKernelConfig::default(),
        }
    }

    pub fn with_kernel(mut self, kernel: SeriesKernelConfig) -> Self {
        self.kernel = kernel;
        self
    }

    /// Simulates `A` drawing all randomness from `src`.
    pub fn generate(&self, w: &StandardizedIncrement, src: &mut GaussianSource) -> Result<LevyArea> {
        let m = w.dim();
        let mut s = truncated_series(w, self.truncation, &self.kernel, src)?;
        let alg = self.algorithm;
        let gamma1 = match alg {
            AlgorithmId::Milstein | AlgorithmId::MronRoe => {
                let mut g = DVector::zeros(m);
                src.fill(g.as_mut_slice());
                Some(g)
            }
            _ => None,
        };
        let gamma_lower = match alg {
            AlgorithmId::Wiktorsson | AlgorithmId::MronRoe => Some(draw_strict_lower(src, m)),
            _ => None,
        };
        let tail = TailInputs {
            gamma1,
            gamma_lower,
        };
        self.add_tail(&mut s, w, &tail)?;
        Ok(LevyArea::skew_part(&s, 1.0 / (2.0 * PI)))
    }

    /// Evaluates `A` from injected coefficients and tail variables; draws
    /// nothing.
    pub fn generate_with(
        &self,
        w: &StandardizedIncrement,
        coeffs: Coefficients<'_>,
        tail: &TailInputs,
    ) -> Result<LevyArea> {
        if coeffs.truncation() != self.truncation.get() {
            return Err(Error::DimensionMismatch {
                expected: self.truncation.get(),
                found: coeffs.truncation(),
            });
        }
        let mut s = truncated_series_from_coefficients(w, coeffs, &self.kernel)?;
        self.add_tail(&mut s, w, tail)?;
        Ok(LevyArea::skew_part(&s, 1.0 / (2.0 * PI)))
    }

    fn add_tail(&self, s: &mut DMatrix<f64>, w: &StandardizedIncrement, tail: &TailInputs) -> Result<()> {
        let m = w.dim();
        if let Some(g) = &tail.gamma1 {
            if g.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: g.len(),
                });
            }
        }
        if let Some(g) = &tail.gamma_lower {
            if g.shape() != (m, m) {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: g.nrows(),
                });
            }
        }
        if self.algorithm == AlgorithmId::Fourier {
            return Ok(());
        }
        let a = (2.0 * trigamma_tail(self.truncation.get() as u64)).sqrt();
        let wv = w.values();
        match self.algorithm {
            AlgorithmId::Fourier => {}
            AlgorithmId::Milstein => {
                if let Some(g) = &tail.gamma1 {
                    s.ger(a, wv, g, 1.0);
                }
            }
            AlgorithmId::Wiktorsson => {
                if let Some(gamma) = &tail.gamma_lower {
                    let g = gamma * a;
                    let skew = &g - g.transpose();
                    let v = &skew * wv;
                    let denom = 1.0 + (1.0 + wv.norm_squared()).sqrt();
                    s.ger(1.0 / denom, &v, wv, 1.0);
                    *s += g;
                }
            }
            AlgorithmId::MronRoe => {
                if let Some(g) = &tail.gamma1 {
                    s.ger(a, wv, g, 1.0);
                }
                if let Some(gamma) = &tail.gamma_lower {
                    *s += gamma * a;
                }
            }
        }
        Ok(())
    }
}

fn run(
    alg: AlgorithmId,
    w: &StandardizedIncrement,
    p: TruncationParameter,
    cfg: &SeriesKernelConfig,
    src: &mut GaussianSource,
) -> Result<LevyArea> {
    LevyGenerator::new(alg, p).with_kernel(*cfg).generate(w, src)
}

/// Truncated series only.
pub fn fourier_levy_area(
    w: &StandardizedIncrement,
    p: TruncationParameter,
    cfg: &SeriesKernelConfig,
    src: &mut GaussianSource,
) -> Result<LevyArea> {
    run(AlgorithmId::Fourier, w, p, cfg, src)
}

/// Series plus the exactly simulable part of the tail.
pub fn milstein_levy_area(
    w: &StandardizedIncrement,
    p: TruncationParameter,
    cfg: &SeriesKernelConfig,
    src: &mut GaussianSource,
) -> Result<LevyArea> {
    run(AlgorithmId::Milstein, w, p, cfg, src)
}

/// Series plus a Gaussian tail matched to the conditional covariance.
pub fn wiktorsson_levy_area(
    w: &StandardizedIncrement,
    p: TruncationParameter,
    cfg: &SeriesKernelConfig,
    src: &mut GaussianSource,
) -> Result<LevyArea> {
    run(AlgorithmId::Wiktorsson, w, p, cfg, src)
}

/// Series plus the simulable tail part and a Gaussian approximation of the
/// remainder with identity limit covariance.
pub fn mronroe_levy_area(
    w: &StandardizedIncrement,
    p: TruncationParameter,
    cfg: &SeriesKernelConfig,
    src: &mut GaussianSource,
) -> Result<LevyArea> {
    run(AlgorithmId::MronRoe, w, p, cfg, src)
}
