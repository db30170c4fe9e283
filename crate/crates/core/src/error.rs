use thiserror::Error;

/// Errors reported by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("step size must be positive and finite, got {0}")]
    InvalidStepSize(f64),
    #[error("input contains non-finite values")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate dimension: conversion undefined for m = {0}")]
    DegenerateDimension(usize),
    #[error("truncation parameter must be at least 1")]
    InvalidTruncation,
    #[error("precision must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("scratch of {required} values exceeds memory cap of {cap}")]
    ResourceLimit { required: usize, cap: usize },
    #[error("budget {budget} exhausted by fixed overhead {overhead}")]
    BudgetExhausted { budget: u64, overhead: u64 },
    #[error("degenerate eigenvalue at index {0}: square roots must be positive and finite")]
    DegenerateEigenvalue(usize),
    #[error("dense vec operators limited to m <= {max}, got {m}")]
    SizeGuard { m: usize, max: usize },
    #[error("empty tail: p = {p} must be below p_ref = {p_ref}")]
    EmptyTail { p: usize, p_ref: usize },
    #[error("tail covariance is numerically singular")]
    SingularCovariance,
    #[error("at least {min} repetitions required, got {found}")]
    TooFewRepetitions { min: usize, found: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
}

pub type Result<T> = std::result::Result<T, Error>;
