//! Cut-off, cost, and achievable-error formulas, and the cost-minimizing
//! algorithm chooser.
//!
//! Error bounds in the max,L² norm for unit-free constants `c`:
//!
//! | algorithm  | bound at `p`              | random numbers          |
//! |------------|---------------------------|-------------------------|
//! | Fourier    | `sqrt(3/(2π²)) h / √p`    | `2pm`                   |
//! | Milstein   | `sqrt(1/(2π²)) h / √p`    | `2pm + m`               |
//! | Wiktorsson | `sqrt(5m/(12π²)) h / p`   | `2pm + (m²−m)/2`        |
//! | MronRoe    | `sqrt(m/(12π²)) h / p`    | `2pm + (m²−m)/2 + m`    |
//!
//! The Frobenius variants multiply each bound by `sqrt(m² − m)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::levy::draw_count;
use crate::norms::norm_factor;
use crate::series::TruncationParameter;
use crate::types::{AlgorithmId, ErrorNorm};

/// Arguments of a precision-driven selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionQuery {
    pub m: usize,
    pub h: f64,
    pub eps: f64,
    pub norm: ErrorNorm,
}

impl SelectionQuery {
    pub fn new(m: usize, h: f64, eps: f64, norm: ErrorNorm) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyDimension);
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidStepSize(h));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidTolerance(eps));
        }
        Ok(Self { m, h, eps, norm })
    }

    /// Query with the default precision `eps = h^{3/2}`.
    pub fn with_default_eps(m: usize, h: f64, norm: ErrorNorm) -> Result<Self> {
        Self::new(m, h, h.powf(1.5), norm)
    }

    /// Tolerance expressed in the max,L² norm.
    fn max_eps(&self) -> f64 {
        match self.norm {
            ErrorNorm::MaxL2 => self.eps,
            ErrorNorm::FrobeniusL2 => self.eps / ((self.m * self.m - self.m) as f64).sqrt(),
        }
    }
}

/// Selected algorithm, truncation, and number of random numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostReport {
    pub algorithm: AlgorithmId,
    pub p: TruncationParameter,
    pub gaussians: u64,
}

/// Closed-form mean-square error bound of `alg` at truncation `p`.
pub fn error_bound(alg: AlgorithmId, m: usize, h: f64, p: usize, norm: ErrorNorm) -> f64 {
    let pf = p as f64;
    let mf = m as f64;
    let max = match alg {
        AlgorithmId::Fourier => (3.0 / (2.0 * PI * PI)).sqrt() * h / pf.sqrt(),
        AlgorithmId::Milstein => (1.0 / (2.0 * PI * PI)).sqrt() * h / pf.sqrt(),
        AlgorithmId::Wiktorsson => (5.0 * mf / (12.0 * PI * PI)).sqrt() * h / pf,
        AlgorithmId::MronRoe => (mf / (12.0 * PI * PI)).sqrt() * h / pf,
    };
    match norm {
        ErrorNorm::MaxL2 => max,
        ErrorNorm::FrobeniusL2 => max * ((m * m - m) as f64).sqrt(),
    }
}

/// Real-valued lower bound on `p` that meets the query tolerance.
pub fn cutoff_real(alg: AlgorithmId, q: &SelectionQuery) -> f64 {
    let (h, eps, m) = (q.h, q.max_eps(), q.m as f64);
    match alg {
        AlgorithmId::Fourier => 3.0 * h * h / (2.0 * PI * PI * eps * eps),
        AlgorithmId::Milstein => h * h / (2.0 * PI * PI * eps * eps),
        AlgorithmId::Wiktorsson => 5f64.sqrt() * h * m.sqrt() / (12f64.sqrt() * PI * eps),
        AlgorithmId::MronRoe => h * m.sqrt() / (12f64.sqrt() * PI * eps),
    }
}

/// Smallest `p ≥ 1` whose error bound does not exceed the tolerance.
///
/// For `m = 1` there is no Lévy area and the result is `p = 1`.
pub fn cutoff(alg: AlgorithmId, q: &SelectionQuery) -> TruncationParameter {
    if q.m == 1 {
        return TruncationParameter::new(1).unwrap();
    }
    let x = cutoff_real(alg, q);
    let mut p = if x.is_finite() && x > 1.0 {
        x.ceil() as usize
    } else {
        1
    };
    // guard the ceiling against rounding in either direction
    while error_bound(alg, q.m, q.h, p, q.norm) > q.eps {
        p += 1;
    }
    while p > 1 && error_bound(alg, q.m, q.h, p - 1, q.norm) <= q.eps {
        p -= 1;
    }
    TruncationParameter::new(p).unwrap()
}

/// Random numbers needed by `alg` at dimension `m` and truncation `p`.
pub fn cost(alg: AlgorithmId, m: usize, p: TruncationParameter) -> u64 {
    draw_count(alg, m as u64, p.get() as u64)
}

/// Random numbers spent independently of `p`.
pub fn overhead(alg: AlgorithmId, m: usize) -> u64 {
    let m = m as u64;
    match alg {
        AlgorithmId::Fourier => 0,
        AlgorithmId::Milstein => m,
        AlgorithmId::Wiktorsson => (m * m - m) / 2,
        AlgorithmId::MronRoe => (m * m + m) / 2,
    }
}

/// Cost evaluated at the real-valued cut-off, `2 m x + overhead`.
pub fn smooth_cost(alg: AlgorithmId, q: &SelectionQuery) -> f64 {
    2.0 * q.m as f64 * cutoff_real(alg, q) + overhead(alg, q.m) as f64
}

/// Smallest error bound reachable with `budget` random numbers.
pub fn achievable_error(
    alg: AlgorithmId,
    m: usize,
    h: f64,
    budget: u64,
    norm: ErrorNorm,
) -> Result<f64> {
    if m == 0 {
        return Err(Error::EmptyDimension);
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidStepSize(h));
    }
    let fixed = overhead(alg, m);
    if budget <= fixed {
        return Err(Error::BudgetExhausted {
            budget,
            overhead: fixed,
        });
    }
    let (mf, c) = (m as f64, budget as f64);
    let s3 = 3f64.sqrt();
    let max = match alg {
        AlgorithmId::Fourier => s3 * h * mf.sqrt() / (PI * c.sqrt()),
        AlgorithmId::Milstein => h * mf.sqrt() / (PI * (c - mf).sqrt()),
        AlgorithmId::Wiktorsson => {
            2.0 * 5f64.sqrt() / (s3 * PI) * h * mf.powf(1.5) / (2.0 * c - mf * mf + mf)
        }
        AlgorithmId::MronRoe => 2.0 / (s3 * PI) * h * mf.powf(1.5) / (2.0 * c - mf * mf - mf),
    };
    Ok(max * norm_factor(m, ErrorNorm::MaxL2, norm)?)
}

/// Preference on equal cost: smaller error constant first.
const TIE_ORDER: [AlgorithmId; 4] = [
    AlgorithmId::MronRoe,
    AlgorithmId::Milstein,
    AlgorithmId::Fourier,
    AlgorithmId::Wiktorsson,
];

/// Cheapest algorithm for the query.
///
/// Algorithms are ranked by [`smooth_cost`]; the report carries the integer
/// cut-off and the exact number of random numbers at that cut-off. For
/// `m = 1` no random numbers are needed and Fourier with `p = 1` is returned.
pub fn optimal_algorithm(q: &SelectionQuery) -> CostReport {
    let one = TruncationParameter::new(1).unwrap();
    if q.m == 1 {
        return CostReport {
            algorithm: AlgorithmId::Fourier,
            p: one,
            gaussians: 0,
        };
    }
    let mut best = TIE_ORDER[0];
    let mut best_cost = smooth_cost(best, q);
    for &alg in &TIE_ORDER[1..] {
        let c = smooth_cost(alg, q);
        if c < best_cost {
            best = alg;
            best_cost = c;
        }
    }
    let p = cutoff(best, q);
    CostReport {
        algorithm: best,
        p,
        gaussians: cost(best, q.m, p),
    }
}
