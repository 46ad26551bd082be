//! Analysis toolkit for chemical reaction networks with power-law kinetics,
//! built around a family of carbon-cycle models (direct ocean capture, direct
//! air capture, and their integration).
//!
//! The crate is organized as:
//!
//! - [`exact`] — arbitrary-precision rational linear algebra (RREF, kernels,
//!   inverses, determinants).
//! - [`poly`] — sparse multivariate polynomials over rational coefficients.
//! - [`network`] — the reaction-network DSL, stoichiometric/kinetic matrices,
//!   network numbers, structural flags, and ODE right-hand sides.
//! - [`decomp`] — finest independent decompositions and T̂-independence.
//! - [`steady`] — network translation, tree constants, and monomial
//!   steady-state parametrizations (per part and merged).
//! - [`analysis`] — kinetic regime classification, kinetic subspaces and sign
//!   tests, injectivity determinants, absolute concentration robustness, and
//!   positive-root counting per stoichiometric class.
//! - [`sim`] — Runge–Kutta integration, robustness/multistationarity
//!   experiments, and carbon-reduction region checks.
//! - [`models`] — the built-in carbon-cycle models and named presets.

pub mod analysis;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod models;
pub mod network;
pub mod poly;
pub mod sim;
pub mod steady;

pub use error::{CrnError, Result};
