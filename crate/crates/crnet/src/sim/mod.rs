//! ODE integration, dynamical validation experiments, and the
//! carbon-reduction sufficient conditions.

pub mod experiments;
pub mod integrate;
pub mod reduction;

pub use experiments::{
    acr_experiment, multistationarity_experiment, standard_initial_sets, AcrExperiment, AcrRun,
    MultiExperiment, PerturbOutcome, RootCheck, NON_ROBUST_SPREAD, ROBUST_SPREAD,
};
pub use integrate::{integrate, integrate_rk4, SimSettings, StopReason, Trajectory};
pub use reduction::{
    box_max_sum, box_min_coord, reduction_check_dac, reduction_check_doc, DacReduction,
    DocReduction, ReductionBranch, RegionSpec,
};
