//! Iterated integrals `I(h) = ½(W Wᵀ − h I) + h A_std` from a Lévy area
//! simulated at unit step, with precision-driven algorithm choice and
//! Q-Wiener scaling.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::levy::LevyGenerator;
use crate::rng::GaussianSource;
use crate::selection::{cutoff, optimal_algorithm, SelectionQuery};
use crate::series::{SeriesKernelConfig, TruncationParameter};
use crate::types::{AlgorithmId, ErrorNorm, IteratedIntegrals, LevyArea, WienerIncrement};

/// Combines the increment with a unit-step Lévy area of `W / √h`.
///
/// The symmetric part is computed from `W` directly so that
/// `I_ii = ½(W_i² − h)` holds exactly.
pub fn assemble(w: &WienerIncrement, a_std: &LevyArea) -> Result<IteratedIntegrals> {
    let m = w.dim();
    if a_std.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: a_std.dim(),
        });
    }
    let h = w.step();
    let v = w.values();
    let a = a_std.matrix();
    let entries = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            0.5 * (v[i] * v[i] - h)
        } else {
            0.5 * (v[i] * v[j]) + h * a[(i, j)]
        }
    });
    Ok(IteratedIntegrals::from_parts(entries, h))
}

/// How the algorithm is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlgorithmChoice {
    /// Cheapest algorithm for the requested precision.
    #[default]
    Auto,
    Fixed(AlgorithmId),
}

/// Options for [`simulate`] and [`simulate_qwiener`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SimulationOptions {
    /// Target precision; defaults to `h^{3/2}`.
    pub eps: Option<f64>,
    /// Error norm; defaults to max,L² for [`simulate`] and Frobenius for
    /// [`simulate_qwiener`].
    pub norm: Option<ErrorNorm>,
    pub algorithm: AlgorithmChoice,
    /// Fixed truncation. Bypasses the precision target.
    pub truncation: Option<TruncationParameter>,
    pub kernel: SeriesKernelConfig,
}

/// Result of a simulation together with the choices that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub integrals: IteratedIntegrals,
    pub algorithm: AlgorithmId,
    pub truncation: TruncationParameter,
    /// Normals drawn for the Lévy area.
    pub gaussians: u64,
    pub eps: f64,
    pub norm: ErrorNorm,
}

fn resolve_eps(eps: Option<f64>, h: f64) -> Result<f64> {
    let eps = eps.unwrap_or_else(|| h.powf(1.5));
    if eps.is_finite() && eps > 0.0 {
        Ok(eps)
    } else {
        Err(Error::InvalidTolerance(eps))
    }
}

/// Simulates `I(h)` for the given increment.
pub fn simulate(
    w: &WienerIncrement,
    opts: &SimulationOptions,
    src: &mut GaussianSource,
) -> Result<Simulation> {
    let norm = opts.norm.unwrap_or(ErrorNorm::MaxL2);
    simulate_with_norm(w, opts, norm, src)
}

fn simulate_with_norm(
    w: &WienerIncrement,
    opts: &SimulationOptions,
    norm: ErrorNorm,
    src: &mut GaussianSource,
) -> Result<Simulation> {
    let m = w.dim();
    let h = w.step();
    let eps = resolve_eps(opts.eps, h)?;
    let one = TruncationParameter::new(1)?;

    if m == 1 {
        let algorithm = match opts.algorithm {
            AlgorithmChoice::Auto => AlgorithmId::Fourier,
            AlgorithmChoice::Fixed(alg) => alg,
        };
        return Ok(Simulation {
            integrals: assemble(w, &LevyArea::zeros(1))?,
            algorithm,
            truncation: opts.truncation.unwrap_or(one),
            gaussians: 0,
            eps,
            norm,
        });
    }

    let query = SelectionQuery::new(m, h, eps, norm)?;
    let algorithm = match opts.algorithm {
        AlgorithmChoice::Auto => optimal_algorithm(&query).algorithm,
        AlgorithmChoice::Fixed(alg) => alg,
    };
    let truncation = opts
        .truncation
        .unwrap_or_else(|| cutoff(algorithm, &query));

    let before = src.draw_count();
    let a = LevyGenerator::new(algorithm, truncation)
        .with_kernel(opts.kernel)
        .generate(&w.standardize(), src)?;
    Ok(Simulation {
        integrals: assemble(w, &a)?,
        algorithm,
        truncation,
        gaussians: src.draw_count() - before,
        eps,
        norm,
    })
}

/// Square roots `√η_i` of the covariance eigenvalues of a Q-Wiener
/// projection.
#[derive(Debug, Clone, PartialEq)]
pub struct QWienerSpec {
    sqrt_eigenvalues: DVector<f64>,
}

impl QWienerSpec {
    pub fn new(sqrt_eigenvalues: DVector<f64>) -> Result<Self> {
        if sqrt_eigenvalues.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(i) = sqrt_eigenvalues
            .iter()
            .position(|s| !(s.is_finite() && *s > 0.0))
        {
            return Err(Error::DegenerateEigenvalue(i));
        }
        Ok(Self { sqrt_eigenvalues })
    }

    /// From the eigenvalues `η_i` themselves.
    pub fn from_eigenvalues(eta: &[f64]) -> Result<Self> {
        Self::new(DVector::from_iterator(eta.len(), eta.iter().map(|e| e.sqrt())))
    }

    pub fn dim(&self) -> usize {
        self.sqrt_eigenvalues.len()
    }

    pub fn sqrt_eigenvalues(&self) -> &DVector<f64> {
        &self.sqrt_eigenvalues
    }

    /// Divides component `i` of a Q-scaled increment by `√η_i`.
    pub fn unscale(&self, qw: &WienerIncrement) -> Result<WienerIncrement> {
        self.check_dim(qw.dim())?;
        WienerIncrement::new(qw.values().component_div(&self.sqrt_eigenvalues), qw.step())
    }

    /// `diag(√η) · I · diag(√η)`, entry `(i, j)` evaluated as `√η_i · I_ij · √η_j`.
    pub fn scale(&self, integrals: &IteratedIntegrals) -> Result<IteratedIntegrals> {
        self.check_dim(integrals.dim())?;
        let s = &self.sqrt_eigenvalues;
        let i = integrals.matrix();
        let m = s.len();
        let entries = DMatrix::from_fn(m, m, |r, c| s[r] * i[(r, c)] * s[c]);
        Ok(IteratedIntegrals::from_parts(entries, integrals.step()))
    }

    fn check_dim(&self, m: usize) -> Result<()> {
        if m == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m,
            })
        }
    }
}

/// Precision for the unscaled simulation such that the scaled result meets
/// `eps`.
///
/// Entry `(i, j)` of the scaled error is the unscaled one times `√(η_i η_j)`.
/// For max,L² the worst entry gives `eps / max η`; for Frobenius the mean of
/// `η_i η_j` over the off-diagonal entries gives
/// `eps / sqrt(Σ_{i≠j} η_i η_j / (m² − m))`.
pub fn qwiener_tolerance(eps: f64, spec: &QWienerSpec, norm: ErrorNorm) -> f64 {
    let eta: Vec<f64> = spec.sqrt_eigenvalues.iter().map(|s| s * s).collect();
    let m = eta.len();
    if m < 2 {
        return eps;
    }
    match norm {
        ErrorNorm::MaxL2 => eps / eta.iter().cloned().fold(f64::MIN, f64::max),
        ErrorNorm::FrobeniusL2 => {
            let total: f64 = eta.iter().sum();
            let squares: f64 = eta.iter().map(|e| e * e).sum();
            let off = (total * total - squares) / (m * m - m) as f64;
            eps / off.sqrt()
        }
    }
}

/// Simulates `I^Q(h)` for an increment of the Q-Wiener projection.
///
/// The reported `eps` is the caller's precision for the scaled result.
pub fn simulate_qwiener(
    qw: &WienerIncrement,
    spec: &QWienerSpec,
    opts: &SimulationOptions,
    src: &mut GaussianSource,
) -> Result<Simulation> {
    let norm = opts.norm.unwrap_or(ErrorNorm::FrobeniusL2);
    let w = spec.unscale(qw)?;
    let eps = resolve_eps(opts.eps, qw.step())?;
    let inner = SimulationOptions {
        eps: Some(qwiener_tolerance(eps, spec, norm)),
        ..*opts
    };
    let sim = simulate_with_norm(&w, &inner, norm, src)?;
    Ok(Simulation {
        integrals: spec.scale(&sim.integrals)?,
        eps,
        ..sim
    })
}
