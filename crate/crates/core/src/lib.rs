//! Numerical laboratory for the weakly coupled 2D stochastic heat equation
//! and its Edwards-Wilkinson fluctuation limit.
//!
//! The crate is organised around five subsystems:
//!
//! * [`kernels`] — deterministic mathematical kernels: the mollifier, its
//!   self-convolution `R`, the heat kernel, the effective variance and the
//!   limiting variance of smoothed height fluctuations.
//! * [`brownian`] — Brownian path/bridge sampling and the occupation-time
//!   estimators (intersection functionals, the Kallianpur-Robbins statistic,
//!   exponential moments).
//! * [`noise`] — discrete spacetime white noise on a periodic torus and its
//!   mollification into the driving field.
//! * [`solver`] — spectral splitting solver for the Itô stochastic heat
//!   equation, ensemble observables and moment estimators.
//! * [`limit`] — the deterministic covariance PDE for `F`, its mild-form
//!   residual and the variance prediction it implies.
//!
//! [`stats`] carries the statistics toolkit (mean/stderr reductions,
//! Kolmogorov-Smirnov and Anderson-Darling tests) shared by the estimators
//! and by the experiment harness built on top of this crate.

pub mod brownian;
pub mod error;
pub mod fft;
pub mod grid;
pub mod interp;
pub mod kernels;
pub mod limit;
pub mod noise;
pub mod quad;
pub mod report;
pub mod rng;
pub mod solver;
pub mod stats;

pub use error::{Error, Result};
pub use grid::TorusGrid;
pub use report::EstimateReport;
pub use rng::SeedStream;
