//! Domain types shared by all modules.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Increment `W_h` of an `m`-dimensional Wiener process over a step `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct WienerIncrement {
    values: DVector<f64>,
    step: f64,
}

impl WienerIncrement {
    pub fn new(values: DVector<f64>, step: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidStepSize(step));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { values, step })
    }

    pub fn from_slice(values: &[f64], step: f64) -> Result<Self> {
        Self::new(DVector::from_column_slice(values), step)
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    /// `W_h / sqrt(h)`, the increment of the time-rescaled process on `[0, 1]`.
    pub fn standardize(&self) -> StandardizedIncrement {
        let scale = self.step.sqrt().recip();
        StandardizedIncrement {
            values: &self.values * scale,
        }
    }
}

/// Wiener increment for unit step size.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedIncrement {
    values: DVector<f64>,
}

impl StandardizedIncrement {
    /// Wraps a unit-step increment directly. Used by the convergence oracle,
    /// which always works with `h = 1`.
    pub fn unit(values: DVector<f64>) -> Result<Self> {
        WienerIncrement::new(values, 1.0).map(|w| w.standardize())
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn as_slice(&self) -> &[f64] {
        self.values.as_slice()
    }
}

/// Skew-symmetric matrix of Lévy areas.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyArea {
    entries: DMatrix<f64>,
}

impl LevyArea {
    /// Checks exact skew-symmetry (`A == -Aᵀ` entrywise, zero diagonal).
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSkewSymmetric);
        }
        let m = entries.nrows();
        for j in 0..m {
            for i in j..m {
                if entries[(i, j)] != -entries[(j, i)] {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            entries: DMatrix::zeros(m, m),
        }
    }

    /// `(S - Sᵀ) * scale`, with the lower triangle written as the exact
    /// negation of the upper one.
    pub fn skew_part(s: &DMatrix<f64>, scale: f64) -> Self {
        let m = s.nrows();
        let mut entries = DMatrix::zeros(m, m);
        for j in 0..m {
            for i in (j + 1)..m {
                let v = (s[(i, j)] - s[(j, i)]) * scale;
                entries[(i, j)] = v;
                entries[(j, i)] = -v;
            }
        }
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }
}

/// Matrix of twofold iterated Itô integrals `I_(i,j)(h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedIntegrals {
    entries: DMatrix<f64>,
    step: f64,
}

impl IteratedIntegrals {
    pub(crate) fn from_parts(entries: DMatrix<f64>, step: f64) -> Self {
        Self { entries, step }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// Skew-symmetric part `(I - Iᵀ) / 2`.
    pub fn levy_area(&self) -> LevyArea {
        LevyArea::skew_part(&self.entries, 0.5)
    }
}

/// The four Lévy-area algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Fourier,
    Milstein,
    Wiktorsson,
    MronRoe,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 4] = [
        AlgorithmId::Fourier,
        AlgorithmId::Milstein,
        AlgorithmId::Wiktorsson,
        AlgorithmId::MronRoe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Fourier => "fourier",
            AlgorithmId::Milstein => "milstein",
            AlgorithmId::Wiktorsson => "wiktorsson",
            AlgorithmId::MronRoe => "mronroe",
        }
    }

    /// Whether the algorithm approximates the tail with a correction of
    /// order `1/p` (as opposed to `1/sqrt(p)`).
    pub fn has_higher_order(self) -> bool {
        matches!(self, AlgorithmId::Wiktorsson | AlgorithmId::MronRoe)
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseNameError(pub String);

impl fmt::Display for ParseNameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unrecognized name '{}'", self.0)
    }
}

impl std::error::Error for ParseNameError {}

impl FromStr for AlgorithmId {
    type Err = ParseNameError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fourier" => Ok(AlgorithmId::Fourier),
            "milstein" => Ok(AlgorithmId::Milstein),
            "wiktorsson" => Ok(AlgorithmId::Wiktorsson),
            "mronroe" => Ok(AlgorithmId::MronRoe),
            _ => Err(ParseNameError(s.to_string())),
        }
    }
}

/// Mean-square error criteria for random matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ErrorNorm {
    /// `max_{i,j} ||M_ij||_{L²(Ω)}`.
    #[default]
    MaxL2,
    /// `E[||M||_F²]^{1/2}`.
    FrobeniusL2,
}

impl ErrorNorm {
    pub fn name(self) -> &'static str {
        match self {
            ErrorNorm::MaxL2 => "maxl2",
            ErrorNorm::FrobeniusL2 => "frobeniusl2",
        }
    }
}

impl fmt::Display for ErrorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ErrorNorm {
    type Err = ParseNameError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "maxl2" | "max" => Ok(ErrorNorm::MaxL2),
            "frobeniusl2" | "frobenius" | "l2f" => Ok(ErrorNorm::FrobeniusL2),
            _ => Err(ParseNameError(s.to_string())),
        }
    }
}
