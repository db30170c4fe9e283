//! Coupled convergence studies at unit step.
//!
//! A [`StoredPath`] keeps the increment and `p_ref` Fourier coefficient
//! pairs. Its Fourier approximation at `p_ref` serves as the reference; an
//! approximation at `p < p_ref` uses the leading `p` columns and tail
//! variables extracted from columns `p+1 ..= p_ref`, so both live on the same
//! realization.
//!
//! The extracted vectors are whitened with the finite tail sum
//! `c = Σ_{r=p+1}^{p_ref} r^{-2}` and are therefore exactly standard normal;
//! the generators still scale them with `ψ₁(p+1)`, which exceeds `c` by
//! `ψ₁(p_ref+1)`.

use nalgebra::{DMatrix, DVector};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::exec::ExecutionPolicy;
use crate::integrals::assemble;
use crate::levy::{LevyGenerator, TailInputs};
use crate::oracle::covariance::{structured_covariance, TailCovariance};
use crate::oracle::vecops::lower_pairs;
use crate::rng::{strict_lower_from, GaussianSource};
use crate::selection::{cost, error_bound};
use crate::series::{add_outer, Coefficients, TruncationParameter};
use crate::trigamma::trigamma_tail;
use crate::types::{
    AlgorithmId, ErrorNorm, IteratedIntegrals, LevyArea, StandardizedIncrement, WienerIncrement,
};

/// Columns per product when accumulating tail sums.
const TAIL_CHUNK: usize = 4096;
/// Repetitions per reduction chunk; fixed so results do not depend on the
/// execution policy.
const REP_CHUNK: usize = 64;

/// Unit-step increment with its first `p_ref` Fourier coefficient pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredPath {
    w_std: StandardizedIncrement,
    alpha: DMatrix<f64>,
    beta: DMatrix<f64>,
}

impl StoredPath {
    /// Draws `W` (m values), then α (`m p_ref`), then β (`m p_ref`).
    pub fn simulate(m: usize, p_ref: usize, src: &mut GaussianSource) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyDimension);
        }
        if p_ref == 0 {
            return Err(Error::InvalidTruncation);
        }
        let mut w = DVector::zeros(m);
        src.fill(w.as_mut_slice());
        let mut alpha = DMatrix::zeros(m, p_ref);
        src.fill(alpha.as_mut_slice());
        let mut beta = DMatrix::zeros(m, p_ref);
        src.fill(beta.as_mut_slice());
        Self::from_parts(StandardizedIncrement::unit(w)?, alpha, beta)
    }

    pub fn from_parts(
        w_std: StandardizedIncrement,
        alpha: DMatrix<f64>,
        beta: DMatrix<f64>,
    ) -> Result<Self> {
        let m = w_std.dim();
        for x in [&alpha, &beta] {
            if x.nrows() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: x.nrows(),
                });
            }
        }
        if alpha.ncols() != beta.ncols() {
            return Err(Error::DimensionMismatch {
                expected: alpha.ncols(),
                found: beta.ncols(),
            });
        }
        if alpha.ncols() == 0 {
            return Err(Error::InvalidTruncation);
        }
        Ok(Self { w_std, alpha, beta })
    }

    pub fn dim(&self) -> usize {
        self.w_std.dim()
    }

    pub fn p_ref(&self) -> usize {
        self.alpha.ncols()
    }

    pub fn increment(&self) -> &StandardizedIncrement {
        &self.w_std
    }

    pub fn alpha(&self) -> &DMatrix<f64> {
        &self.alpha
    }

    pub fn beta(&self) -> &DMatrix<f64> {
        &self.beta
    }

    fn coefficients(&self, p: usize) -> Result<Coefficients<'_>> {
        Coefficients::leading(&self.alpha, &self.beta, p)
    }

    fn check_tail(&self, p: usize) -> Result<()> {
        if p == 0 {
            return Err(Error::InvalidTruncation);
        }
        if p >= self.p_ref() {
            return Err(Error::EmptyTail {
                p,
                p_ref: self.p_ref(),
            });
        }
        Ok(())
    }
}

/// Sums over the tail columns `r = p+1 ..= p_ref`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailStats {
    pub p: usize,
    /// `Σ 1/r²`.
    pub c: f64,
    /// `Σ α_r / r`.
    pub a: DVector<f64>,
    /// `Σ α_r β_rᵀ / r`.
    pub u: DMatrix<f64>,
    /// `Σ α_r α_rᵀ / r²`.
    pub a_alpha: DMatrix<f64>,
    /// `Σ β̃_r β̃_rᵀ / r²` with `β̃_r = β_r − √2 W`.
    pub b_tilde: DMatrix<f64>,
}

impl TailStats {
    fn zero(m: usize, p: usize) -> Self {
        Self {
            p,
            c: 0.0,
            a: DVector::zeros(m),
            u: DMatrix::zeros(m, m),
            a_alpha: DMatrix::zeros(m, m),
            b_tilde: DMatrix::zeros(m, m),
        }
    }

    /// Adds columns `lo+1 ..= hi` (one-based) of the path.
    fn add_segment(&mut self, path: &StoredPath, lo: usize, hi: usize) {
        let m = path.dim();
        let shift: Vec<f64> = path.w_std.as_slice().iter().map(|x| SQRT_2 * x).collect();
        let width = TAIL_CHUNK.min(hi.saturating_sub(lo)).max(1);
        let mut sa = vec![0.0; m * width];
        let mut sb = vec![0.0; m * width];
        let mut sbt = vec![0.0; m * width];
        // add small terms first
        let mut end = hi;
        while end > lo {
            let start = end.saturating_sub(width).max(lo);
            let n = end - start;
            let alpha = &path.alpha.as_slice()[start * m..end * m];
            let beta = &path.beta.as_slice()[start * m..end * m];
            for k in 0..n {
                let inv = 1.0 / (start + k + 1) as f64;
                for (i, s) in shift.iter().enumerate() {
                    let idx = k * m + i;
                    sa[idx] = alpha[idx] * inv;
                    sb[idx] = beta[idx];
                    sbt[idx] = (beta[idx] - s) * inv;
                }
            }
            for k in (0..n).rev() {
                let r = (start + k + 1) as f64;
                self.c += 1.0 / (r * r);
            }
            for k in 0..n {
                for i in 0..m {
                    self.a[i] += sa[k * m + i];
                }
            }
            add_outer(&mut self.u, &sa, &sb, m, n);
            add_outer(&mut self.a_alpha, &sa, &sa, m, n);
            add_outer(&mut self.b_tilde, &sbt, &sbt, m, n);
            end = start;
        }
    }

    fn add(&mut self, other: &TailStats) {
        self.c += other.c;
        self.a += &other.a;
        self.u += &other.u;
        self.a_alpha += &other.a_alpha;
        self.b_tilde += &other.b_tilde;
    }

    /// `Σ^{(p)}` and `Σ₂^{(p)}` normalized by the finite tail sum.
    pub fn covariances(&self) -> Result<(TailCovariance, TailCovariance)> {
        if self.c <= 0.0 {
            return Err(Error::EmptyTail {
                p: self.p,
                p_ref: self.p,
            });
        }
        Ok((
            TailCovariance::new(structured_covariance(&(&self.b_tilde / self.c))),
            TailCovariance::new(structured_covariance(&(&self.a_alpha / self.c))),
        ))
    }

    /// Whitened tail vectors for the coupled generators.
    pub fn gammas(&self, w: &StandardizedIncrement) -> Result<CoupledGammas> {
        let (sigma, sigma2) = self.covariances()?;
        let norm = (2.0 * self.c).sqrt().recip();
        let wv = w.values();
        let s_tilde = &self.u - (&self.a * wv.transpose()) * SQRT_2;
        let pairs = lower_pairs(w.dim());
        let skew_lower = |s: &DMatrix<f64>| {
            DVector::from_iterator(
                pairs.len(),
                pairs.iter().map(|&(i, j)| s[(i, j)] - s[(j, i)]),
            )
        };
        let x = skew_lower(&s_tilde);
        let x2 = skew_lower(&self.u);
        Ok(CoupledGammas {
            gamma1: &self.a / self.c.sqrt(),
            gamma: sigma.inverse_sqrt()? * x * norm,
            gamma2: sigma2.inverse_sqrt()? * x2 * norm,
        })
    }
}

/// `γ₁` (length `m`), `γ` and `γ₂` (length `m(m−1)/2`, strictly lower
/// column-major order).
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledGammas {
    pub gamma1: DVector<f64>,
    pub gamma: DVector<f64>,
    pub gamma2: DVector<f64>,
}

impl CoupledGammas {
    /// Tail inputs for `alg`.
    pub fn tail_inputs(&self, alg: AlgorithmId) -> TailInputs {
        let m = self.gamma1.len();
        match alg {
            AlgorithmId::Fourier => TailInputs::zero(),
            AlgorithmId::Milstein => TailInputs {
                gamma1: Some(self.gamma1.clone()),
                gamma_lower: None,
            },
            AlgorithmId::Wiktorsson => TailInputs {
                gamma1: None,
                gamma_lower: Some(strict_lower_from(m, self.gamma.as_slice())),
            },
            AlgorithmId::MronRoe => TailInputs {
                gamma1: Some(self.gamma1.clone()),
                gamma_lower: Some(strict_lower_from(m, self.gamma2.as_slice())),
            },
        }
    }
}

/// Tail sums for `p`.
pub fn tail_stats(path: &StoredPath, p: usize) -> Result<TailStats> {
    path.check_tail(p)?;
    let mut stats = TailStats::zero(path.dim(), p);
    stats.add_segment(path, p, path.p_ref());
    Ok(stats)
}

/// Tail sums for each `p` in an ascending grid (entries equal to `p_ref` get
/// empty sums), accumulated from the end so every column is visited once.
fn tail_stats_grid(path: &StoredPath, grid: &[usize]) -> Vec<TailStats> {
    let m = path.dim();
    let mut out: Vec<TailStats> = Vec::with_capacity(grid.len());
    let mut running = TailStats::zero(m, path.p_ref());
    let mut upper = path.p_ref();
    for &p in grid.iter().rev() {
        let mut seg = TailStats::zero(m, p);
        seg.add_segment(path, p, upper);
        // the segment holds the smaller terms
        seg.add(&running);
        running = seg;
        upper = p;
        out.push(running.clone());
    }
    out.reverse();
    out
}

/// `(Σ^{(p)}, Σ₂^{(p)})` over the finite tail.
pub fn tail_covariances(path: &StoredPath, p: usize) -> Result<(TailCovariance, TailCovariance)> {
    tail_stats(path, p)?.covariances()
}

/// Tail vectors coupling the generators at `p` to the reference.
pub fn extract_gammas(path: &StoredPath, p: usize) -> Result<CoupledGammas> {
    tail_stats(path, p)?.gammas(&path.w_std)
}

/// Fourier Lévy area at `p_ref` from the stored coefficients.
pub fn reference_levy_area(path: &StoredPath) -> Result<LevyArea> {
    let p = TruncationParameter::new(path.p_ref())?;
    LevyGenerator::new(AlgorithmId::Fourier, p).generate_with(
        &path.w_std,
        path.coefficients(path.p_ref())?,
        &TailInputs::zero(),
    )
}

/// Reference iterated integrals at unit step; draws nothing.
pub fn reference_integrals(path: &StoredPath) -> Result<IteratedIntegrals> {
    let w = WienerIncrement::new(path.w_std.values().clone(), 1.0)?;
    assemble(&w, &reference_levy_area(path)?)
}

fn coupled_with(
    alg: AlgorithmId,
    path: &StoredPath,
    p: usize,
    gammas: Option<&CoupledGammas>,
) -> Result<LevyArea> {
    let tail = match gammas {
        Some(g) => g.tail_inputs(alg),
        None => TailInputs::zero(),
    };
    LevyGenerator::new(alg, TruncationParameter::new(p)?).generate_with(
        &path.w_std,
        path.coefficients(p)?,
        &tail,
    )
}

/// Approximation by `alg` at `p` coupled to the reference of `path`.
///
/// Fourier needs no tail and accepts `p = p_ref`.
pub fn coupled_levy_area(alg: AlgorithmId, path: &StoredPath, p: usize) -> Result<LevyArea> {
    if alg == AlgorithmId::Fourier {
        if p > path.p_ref() {
            return Err(Error::EmptyTail {
                p,
                p_ref: path.p_ref(),
            });
        }
        return coupled_with(alg, path, p, None);
    }
    let gammas = extract_gammas(path, p)?;
    coupled_with(alg, path, p, Some(&gammas))
}

/// Monte-Carlo error estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// One `(algorithm, p)` cell of a study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyCell {
    pub algorithm: AlgorithmId,
    pub p: usize,
    /// Random numbers the algorithm would draw on its own.
    pub cost: u64,
    pub error: McEstimate,
    /// Closed-form error bound at `p`.
    pub bound: f64,
    /// Relative excess of `ψ₁(p+1)` over the finite tail sum used for
    /// whitening.
    pub whitening_gap: f64,
}

/// Error study over an algorithm × truncation grid with one shared path per
/// repetition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceStudy {
    pub m: usize,
    pub p_ref: usize,
    pub reps: usize,
    pub norm: ErrorNorm,
    pub seed: u64,
    pub policy: ExecutionPolicy,
}

#[derive(Debug, Clone)]
struct CellAcc {
    sq: DMatrix<f64>,
    quad: DMatrix<f64>,
    fro: f64,
    fro2: f64,
}

impl CellAcc {
    fn new(m: usize) -> Self {
        Self {
            sq: DMatrix::zeros(m, m),
            quad: DMatrix::zeros(m, m),
            fro: 0.0,
            fro2: 0.0,
        }
    }

    fn push(&mut self, delta: &DMatrix<f64>) {
        let mut f = 0.0;
        for (k, d) in delta.iter().enumerate() {
            let d2 = d * d;
            self.sq[k] += d2;
            self.quad[k] += d2 * d2;
            f += d2;
        }
        self.fro += f;
        self.fro2 += f * f;
    }

    fn merge(&mut self, other: &CellAcc) {
        self.sq += &other.sq;
        self.quad += &other.quad;
        self.fro += other.fro;
        self.fro2 += other.fro2;
    }

    fn estimate(&self, n: usize, norm: ErrorNorm) -> McEstimate {
        let nf = n as f64;
        let (sum, sum2) = match norm {
            ErrorNorm::FrobeniusL2 => (self.fro, self.fro2),
            ErrorNorm::MaxL2 => {
                let m = self.sq.nrows();
                let mut best = (0.0, 0.0);
                for j in 0..m {
                    for i in 0..m {
                        if i != j && self.sq[(i, j)] > best.0 {
                            best = (self.sq[(i, j)], self.quad[(i, j)]);
                        }
                    }
                }
                best
            }
        };
        let mean = sum / nf;
        if mean <= 0.0 {
            return McEstimate {
                estimate: 0.0,
                std_error: 0.0,
            };
        }
        let var = ((sum2 - nf * mean * mean) / (nf - 1.0)).max(0.0);
        let estimate = mean.sqrt();
        McEstimate {
            estimate,
            std_error: (var / nf).sqrt() / (2.0 * estimate),
        }
    }
}

impl ConvergenceStudy {
    pub fn new(m: usize, p_ref: usize, reps: usize, norm: ErrorNorm, seed: u64) -> Self {
        Self {
            m,
            p_ref,
            reps,
            norm,
            seed,
            policy: ExecutionPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: ExecutionPolicy) -> Self {
        self.policy = policy;
        self
    }

    fn validate(&self, algorithms: &[AlgorithmId], grid: &[usize]) -> Result<()> {
        if self.m == 0 {
            return Err(Error::EmptyDimension);
        }
        if self.p_ref == 0 {
            return Err(Error::InvalidTruncation);
        }
        if self.reps < 2 {
            return Err(Error::TooFewRepetitions {
                min: 2,
                found: self.reps,
            });
        }
        for &p in grid {
            if p == 0 {
                return Err(Error::InvalidTruncation);
            }
            let needs_tail = algorithms.iter().any(|&a| a != AlgorithmId::Fourier);
            if p > self.p_ref || (needs_tail && p == self.p_ref) {
                return Err(Error::EmptyTail {
                    p,
                    p_ref: self.p_ref,
                });
            }
        }
        Ok(())
    }

    /// Runs the study; cells are ordered by algorithm, then ascending `p`.
    pub fn run(&self, algorithms: &[AlgorithmId], p_grid: &[usize]) -> Result<Vec<StudyCell>> {
        let mut grid = p_grid.to_vec();
        grid.sort_unstable();
        grid.dedup();
        self.validate(algorithms, &grid)?;
        let cells = algorithms.len() * grid.len();
        let chunks = self.reps.div_ceil(REP_CHUNK);

        let partial = self.policy.map_indexed(chunks, |chunk| {
            let mut acc = vec![CellAcc::new(self.m); cells];
            let lo = chunk * REP_CHUNK;
            let hi = (lo + REP_CHUNK).min(self.reps);
            for rep in lo..hi {
                self.repetition(rep, algorithms, &grid, &mut acc)?;
            }
            Ok::<_, Error>(acc)
        });
        let mut total = vec![CellAcc::new(self.m); cells];
        for acc in partial {
            for (t, a) in total.iter_mut().zip(acc?) {
                t.merge(&a);
            }
        }

        let tail_ref = trigamma_tail(self.p_ref as u64);
        let mut out = Vec::with_capacity(cells);
        for (ai, &alg) in algorithms.iter().enumerate() {
            for (pi, &p) in grid.iter().enumerate() {
                let acc = &total[ai * grid.len() + pi];
                let finite = trigamma_tail(p as u64) - tail_ref;
                out.push(StudyCell {
                    algorithm: alg,
                    p,
                    cost: cost(alg, self.m, TruncationParameter::new(p)?),
                    error: acc.estimate(self.reps, self.norm),
                    bound: error_bound(alg, self.m, 1.0, p, self.norm),
                    whitening_gap: if finite > 0.0 {
                        tail_ref / finite
                    } else {
                        0.0
                    },
                });
            }
        }
        Ok(out)
    }

    fn repetition(
        &self,
        rep: usize,
        algorithms: &[AlgorithmId],
        grid: &[usize],
        acc: &mut [CellAcc],
    ) -> Result<()> {
        let mut src =
            GaussianSource::stream(self.seed, rep as u64).with_policy(ExecutionPolicy::Sequential);
        let path = StoredPath::simulate(self.m, self.p_ref, &mut src)?;
        let reference = reference_levy_area(&path)?;
        let needs_tail = algorithms.iter().any(|&a| a != AlgorithmId::Fourier);
        let stats = if needs_tail {
            tail_stats_grid(&path, grid)
        } else {
            Vec::new()
        };
        for (pi, &p) in grid.iter().enumerate() {
            let gammas = if needs_tail {
                Some(stats[pi].gammas(&path.w_std)?)
            } else {
                None
            };
            for (ai, &alg) in algorithms.iter().enumerate() {
                let approx = coupled_with(alg, &path, p, gammas.as_ref())?;
                let delta = reference.matrix() - approx.matrix();
                acc[ai * grid.len() + pi].push(&delta);
            }
        }
        Ok(())
    }
}

/// Error of `alg` at `p` against a Fourier reference at `p_ref`, estimated
/// from `reps` coupled realizations.
pub fn mc_error(
    alg: AlgorithmId,
    m: usize,
    p: usize,
    p_ref: usize,
    reps: usize,
    norm: ErrorNorm,
    seed: u64,
) -> Result<McEstimate> {
    let cells = ConvergenceStudy::new(m, p_ref, reps, norm, seed).run(&[alg], &[p])?;
    Ok(cells[0].error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::vecops::VecOps;

    fn path(m: usize, p_ref: usize, seed: u64) -> StoredPath {
        StoredPath::simulate(m, p_ref, &mut GaussianSource::new(seed)).unwrap()
    }

    /// Tail vectors by the dense Kronecker formulas.
    fn dense_gammas(path: &StoredPath, p: usize) -> (DVector<f64>, DVector<f64>) {
        let m = path.dim();
        let ops = VecOps::new(m).unwrap();
        let mm = m * m;
        let w = path.w_std.values();
        let mut x = DVector::zeros(mm);
        let mut x2 = DVector::zeros(mm);
        let mut bt = DMatrix::zeros(m, m);
        let mut aa = DMatrix::zeros(m, m);
        let mut c = 0.0;
        for r in (p + 1)..=path.p_ref() {
            let rf = r as f64;
            let alpha = path.alpha.column(r - 1).into_owned();
            let beta = path.beta.column(r - 1).into_owned();
            let btil = &beta - w * SQRT_2;
            x += alpha.kronecker(&btil) / rf;
            x2 += alpha.kronecker(&beta) / rf;
            bt += &btil * btil.transpose() / (rf * rf);
            aa += &alpha * alpha.transpose() / (rf * rf);
            c += 1.0 / (rf * rf);
        }
        let pm = ops.p() - DMatrix::<f64>::identity(mm, mm);
        let sel = ops.k() * pm;
        let sig = ops.sandwich(&(bt / c));
        let sig2 = ops.sandwich_left(&(aa / c));
        let norm = (2.0 * c).sqrt().recip();
        let inv = crate::oracle::covariance::inverse_sqrt(&sig).unwrap();
        let inv2 = crate::oracle::covariance::inverse_sqrt(&sig2).unwrap();
        (inv * (&sel * x) * norm, inv2 * (&sel * x2) * norm)
    }

    #[test]
    fn structured_extraction_matches_dense() {
        for m in [2, 3, 5] {
            let path = path(m, 300, m as u64);
            let g = extract_gammas(&path, 17).unwrap();
            let (gamma, gamma2) = dense_gammas(&path, 17);
            assert!((&g.gamma - gamma).amax() <= 1e-9, "m={m}");
            assert!((&g.gamma2 - gamma2).amax() <= 1e-9, "m={m}");
        }
    }

    #[test]
    fn grid_accumulation_matches_direct() {
        let path = path(3, 500, 4);
        let grid = [1, 9, 64, 499];
        let stats = tail_stats_grid(&path, &grid);
        for (s, &p) in stats.iter().zip(&grid) {
            let direct = tail_stats(&path, p).unwrap();
            assert!((s.c - direct.c).abs() <= 1e-15);
            assert!((&s.u - &direct.u).amax() <= 1e-12);
            assert!((&s.b_tilde - &direct.b_tilde).amax() <= 1e-12);
        }
    }

    #[test]
    fn one_dimension() {
        let path = path(1, 20, 1);
        let g = extract_gammas(&path, 5).unwrap();
        assert_eq!((g.gamma1.len(), g.gamma.len(), g.gamma2.len()), (1, 0, 0));
        let (s, s2) = tail_covariances(&path, 5).unwrap();
        assert_eq!((s.matrix().shape(), s2.matrix().shape()), ((0, 0), (0, 0)));
        let w = path.w_std.values()[0];
        let i = reference_integrals(&path).unwrap();
        assert_eq!(i.matrix()[(0, 0)], 0.5 * (w * w - 1.0));
    }

    #[test]
    fn zero_tail_gives_zero_covariance() {
        let w = StandardizedIncrement::unit(DVector::zeros(3)).unwrap();
        let alpha = DMatrix::from_element(3, 6, 1.0);
        let beta = DMatrix::zeros(3, 6);
        let path = StoredPath::from_parts(w, alpha, beta).unwrap();
        let (s, _) = tail_covariances(&path, 2).unwrap();
        assert_eq!(s.matrix(), &DMatrix::zeros(3, 3));
        assert_eq!(
            extract_gammas(&path, 2),
            Err(Error::SingularCovariance)
        );
    }

    #[test]
    fn empty_tail_is_rejected() {
        let path = path(2, 10, 2);
        assert_eq!(
            extract_gammas(&path, 10),
            Err(Error::EmptyTail { p: 10, p_ref: 10 })
        );
        assert!(coupled_levy_area(AlgorithmId::Fourier, &path, 10).is_ok());
        assert!(coupled_levy_area(AlgorithmId::Milstein, &path, 10).is_err());
    }

    #[test]
    fn reference_is_deterministic() {
        let path = path(3, 50, 3);
        assert_eq!(
            reference_integrals(&path).unwrap(),
            reference_integrals(&path).unwrap()
        );
    }

    #[test]
    fn fourier_at_reference_has_no_error() {
        let e = mc_error(AlgorithmId::Fourier, 3, 40, 40, 5, ErrorNorm::MaxL2, 1).unwrap();
        assert_eq!((e.estimate, e.std_error), (0.0, 0.0));
    }

    #[test]
    fn policies_agree() {
        let base = ConvergenceStudy::new(3, 200, 150, ErrorNorm::MaxL2, 9);
        let algs = AlgorithmId::ALL;
        let seq = base
            .with_policy(ExecutionPolicy::Sequential)
            .run(&algs, &[4, 16])
            .unwrap();
        let par = base
            .with_policy(ExecutionPolicy::Parallel)
            .run(&algs, &[16, 4])
            .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn too_few_reps() {
        assert_eq!(
            mc_error(AlgorithmId::Fourier, 2, 1, 10, 1, ErrorNorm::MaxL2, 0),
            Err(Error::TooFewRepetitions { min: 2, found: 1 })
        );
    }
}
