//! Exact solver for Legendre's equation `a x^2 + b y^2 + c z^2 = 0` over the
//! Gaussian integers.
//!
//! The pipeline is: [`normform::normalize`] the coefficients, decide
//! solvability with [`solvecheck::samet_solvable`], seed with
//! [`solvecheck::brute_force_search`], shrink the seed with
//! [`descent::holzer_reduce`] until `N(z)^2 <= (3 + 2*sqrt(2)) N(a) N(b)`,
//! and map the result back with [`normform::pull_back`].

pub mod descent;
pub mod error;
pub mod factor;
pub mod gaussint;
pub mod normform;
pub mod solvecheck;

pub use descent::{bound_test, holzer_reduce, DescentCase, DescentStep, DescentTrace};
pub use error::{Error, Result};
pub use factor::{factorize, Factorization, DEFAULT_FACTOR_CEILING};
pub use gaussint::{GaussianInt, GaussianRational};
pub use normform::{normalize, LegendreEquation, NormalizationTrace, Reduction, Solution};
pub use solvecheck::{brute_force_search, check_solution, samet_solvable, SolvabilityReport};
