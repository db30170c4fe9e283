//! Reference machinery for measuring the strong error of the generators:
//! dense vec operators, tail covariances, coupled tail extraction, and
//! Monte-Carlo error estimation.

pub mod covariance;
pub mod study;
pub mod vecops;

pub use covariance::{
    eigen_sqrt, inverse_sqrt, sigma_inf, sqrt_sigma_inf, structured_covariance, TailCovariance,
};
pub use study::{
    coupled_levy_area, extract_gammas, mc_error, reference_integrals, reference_levy_area,
    tail_covariances, tail_stats, ConvergenceStudy, CoupledGammas, McEstimate, StoredPath,
    StudyCell, TailStats,
};
pub use vecops::VecOps;
