//! Qualitative analysis: kinetic regimes, sign-vector conditions,
//! injectivity, absolute concentration robustness, and positive-root counts
//! per stoichiometric class.

pub mod acr;
pub mod injectivity;
pub mod regime;
pub mod roots;
pub mod subspace;
pub mod verdict;

pub use acr::{acr_from_parametrization, acr_hyperplane, AcrReport};
pub use injectivity::{injectivity, InjectivityReport, InjectivityVerdict};
pub use regime::{classify_regime, Regime, RegimeClass};
pub use roots::{count_roots, RootBranch, RootRecord, RootReport, RootTerm};
pub use subspace::{
    kinetic_flux_subspace, sign_condition, stoichiometric_subspace, SignCondition, SubspaceReport,
};
pub use verdict::{monostationarity_verdict, MonoVerdict, Multiplicity};
