//! Simulation of twofold iterated Itô integrals and Lévy areas of an
//! `m`-dimensional Wiener process by truncated Fourier series with optional
//! tail approximations.

pub mod error;
pub mod exec;
pub mod integrals;
pub mod levy;
pub mod norms;
pub mod oracle;
pub mod rng;
pub mod selection;
pub mod series;
pub mod trigamma;
pub mod types;

pub use error::{Error, Result};
pub use exec::ExecutionPolicy;
pub use levy::{
    fourier_levy_area, milstein_levy_area, mronroe_levy_area, wiktorsson_levy_area,
    LevyGenerator, TailInputs,
};
pub use integrals::{
    assemble, qwiener_tolerance, simulate, simulate_qwiener, AlgorithmChoice, QWienerSpec,
    Simulation, SimulationOptions,
};
pub use norms::norm_factor;
pub use rng::{draw_matrix, draw_strict_lower, GaussianSource};
pub use selection::{
    achievable_error, cost, cutoff, cutoff_real, error_bound, optimal_algorithm, overhead,
    smooth_cost, CostReport, SelectionQuery,
};
pub use series::{
    truncated_series, truncated_series_from_coefficients, Coefficients, SeriesKernelConfig,
    TruncationParameter,
};
pub use trigamma::{trigamma, trigamma_tail};
pub use types::{
    AlgorithmId, ErrorNorm, IteratedIntegrals, LevyArea, ParseNameError, StandardizedIncrement,
    WienerIncrement,
};
