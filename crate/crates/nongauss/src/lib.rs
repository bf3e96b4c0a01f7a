//! # nongauss
//!
//! Simulation and validation toolkit for non-Gaussian translation processes:
//! Brownian motion pushed through a percentile-matching transform so that its
//! time-t marginal follows a user-specified standardized law F, namely
//! `Z_t = sqrt(t) * F^{-1}(Phi(B_t / sqrt(t)))`.
//!
//! The crate provides
//!
//! - [`specfun`]: the self-contained special-function kernel (normal
//!   CDF/quantile, log-gamma, digamma/trigamma, incomplete beta),
//! - [`dist`]: standardized (mean 0, variance 1) marginal laws — Gaussian,
//!   Student t, asymmetric Laplace, EGB2,
//! - [`translation`]: the pointwise transform, the diffusion modulator, the
//!   Ito drift correction and the Cornish–Fisher machinery,
//! - [`sde`]: Brownian drivers, the exact-transform / drift-corrected /
//!   drift-free / binary-increment path schemes, general SDE stepping and
//!   reproducible ensembles,
//! - [`stats`]: moment estimators, Kolmogorov–Smirnov checks, increment
//!   covariance, error-growth and Ito-isometry measurements,
//! - [`config`], [`output`], [`checks`], [`commands`], [`cli`]: the
//!   experiment-runner layer behind the `nongauss` binary.
//!
//! Every simulation is deterministic given its seed: random streams are keyed
//! by (seed, step index), so ensembles are identical regardless of thread
//! count or execution order.

// reference constants keep all their digits, and `!(x > 0.0)`
// style comparisons deliberately catch NaN arguments
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::type_complexity)]

pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod dist;
mod error;
pub mod output;
mod quad;
pub mod sde;
pub mod specfun;
pub mod stats;
pub mod translation;

pub use config::{OutputKind, SimulationSpec};
pub use dist::{Family, StandardizedDistribution};
pub use error::{Error, Result};
pub use sde::{CoefficientSpec, DiffusionSpec, DriftSpec, Ensemble, Path, Scheme, TimeGrid};
pub use stats::{ErrorGrowthReport, KsResult, MomentSummary};
pub use translation::{CornishFisherCoeffs, ItoPartials};
