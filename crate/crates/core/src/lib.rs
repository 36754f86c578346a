//! Exact information bottleneck (IB) solving on finite alphabets.
//!
//! The crate is organised around one idea: when the conditional of the
//! relevance variable `C` given the source `T` factors through a statistic
//! `Z = phi(T)`, the IB problem for `(T, C)` collapses to the IB problem for
//! `(Z, C)` with nothing lost — same curve, same Lagrangian value at every
//! trade-off `beta`, and minimisers that pull back through `phi`. Solving on
//! the reduced joint is then just Blahut–Arimoto on a small table, whatever
//! the ambient dimension of `T` was.
//!
//! Modules:
//!
//! - [`dist`]: validated probability containers (joint tables, kernels,
//!   three-way tables with a deterministic statistic coordinate).
//! - [`info`]: plug-in information functionals in nats.
//! - [`ba`]: the Blahut–Arimoto fixed-point solver, curve tracing over a
//!   `beta` grid, Legendre reconstruction, and critical-`beta` detection.
//! - [`reduction`]: building reduced joints, pulling encoders back and
//!   marginalising them down, and the equivalence-verification harness.
//! - [`gaussian`]: the jointly Gaussian specialisation — linear sufficient
//!   statistic, canonical-correlation spectrum, closed-form curve, and a
//!   quantised discrete oracle.
//! - [`synth`]: the labelled mixture benchmark generator and its exact
//!   Bayes statistic.

pub mod ba;
pub mod dist;
pub mod gaussian;
pub mod info;
pub mod reduction;
pub mod synth;

use thiserror::Error;

/// Errors for construction and operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("non-finite entry at index {index}")]
    NonFiniteEntry { index: usize },

    #[error("total mass {sum} is not 1 within 1e-12")]
    MassNotOne { sum: f64 },

    #[error("row {row} sums to {sum}, not 1 within 1e-12")]
    RowNotNormalized { row: usize, sum: f64 },

    #[error("empty table: rows and cols must be >= 1")]
    EmptyTable,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("absolute continuity violated: q[{index}] = 0 but p[{index}] = {p_value} > 0")]
    AbsoluteContinuity { index: usize, p_value: f64 },

    #[error("statistic coordinate is not deterministic: source symbol {symbol} has mass on {count} statistic symbols")]
    NondeterministicStatistic { symbol: usize, count: usize },

    #[error("statistic undefined for zero-mass source symbol {symbol}")]
    ZeroMassSource { symbol: usize },

    #[error("fiber map value {value} at index {index} outside codomain of size {codomain}")]
    FiberOutOfRange {
        index: usize,
        value: usize,
        codomain: usize,
    },

    #[error("fiber map domain must be at least the codomain: {domain} < {codomain}")]
    DomainSmallerThanCodomain { domain: usize, codomain: usize },

    #[error("statistic is not sufficient: residual I(C;T|Z) = {residual} >= 1e-9")]
    InsufficientStatistic { residual: f64 },

    #[error("covariance block {block} is not symmetric positive definite")]
    NotPositiveDefinite { block: &'static str },

    #[error("covariance block {block} is not symmetric")]
    NotSymmetric { block: &'static str },

    #[error("full joint covariance is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("degenerate Gaussian pair: a canonical correlation is 1, mutual information unbounded")]
    DegenerateGaussian,

    #[error("operation requires scalar T and C, got dim_t = {dim_t}, dim_c = {dim_c}; use the closed form instead")]
    NonScalarGaussian { dim_t: usize, dim_c: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("non-finite coordinate in input point")]
    NonFinitePoint,
}

pub type Result<T> = std::result::Result<T, Error>;
