//! Dynamical validation experiments.
//!
//! `acr_experiment` integrates a model from several initial conditions
//! (typically with different conservation totals) and measures the spread of
//! the steady values per species; a species whose steady value is the same
//! across stoichiometric classes is robust in experiment, and the verdict is
//! cross-checked against the structural ACR criterion.
//!
//! `multistationarity_experiment` counts the positive steady states in a
//! stoichiometric class via the class equation, samples the class function
//! for plotting, and verifies each root dynamically: the full steady state is
//! reconstructed from the parametrization, its residual is measured, and a
//! small in-class perturbation is integrated to probe whether the state
//! attracts.

use super::integrate::{integrate, SimSettings, StopReason};
use crate::analysis::{acr_hyperplane, count_roots, RegimeClass, RootReport};
use crate::error::{CrnError, Result};
use crate::exact::{rat_to_f64, Rat};
use crate::network::{ode_rhs, Bindings, Network};
use crate::steady::Parametrization;

/// Relative spread below which a species counts as robust in experiment.
pub const ROBUST_SPREAD: f64 = 1e-4;
/// Relative spread above which a species is demonstrably non-robust.
pub const NON_ROBUST_SPREAD: f64 = 1e-2;

/// One integration run of the ACR experiment.
#[derive(Clone, Debug)]
pub struct AcrRun {
    pub initial: Vec<f64>,
    pub total: f64,
    /// Steady state reached, or the failure recorded for this run.
    pub outcome: std::result::Result<Vec<f64>, String>,
}

#[derive(Clone, Debug)]
pub struct AcrExperiment {
    pub species: Vec<String>,
    pub runs: Vec<AcrRun>,
    /// Per-species relative spread (max − min)/mean over successful runs.
    pub spreads: Vec<f64>,
    /// Species with spread below [`ROBUST_SPREAD`].
    pub robust: Vec<usize>,
    /// Species with spread above [`NON_ROBUST_SPREAD`].
    pub non_robust: Vec<usize>,
    /// Species predicted robust by the structural hyperplane criterion.
    pub predicted: Vec<usize>,
    /// Experimental robust set equals the predicted set.
    pub agrees: bool,
}

/// The initial-condition sets used by the reference robustness figures for
/// the five-species models: P-null uses one trio, the other regimes another.
/// Totals differ across the sets on purpose, so robustness is probed across
/// stoichiometric classes.
pub fn standard_initial_sets(class: RegimeClass) -> Vec<Vec<f64>> {
    match class {
        RegimeClass::PNull => vec![
            vec![1.0, 0.8, 0.3, 0.9, 0.6],
            vec![0.5, 1.0, 0.5, 1.0, 1.0],
            vec![0.9, 0.9, 0.9, 0.9, 0.9],
        ],
        _ => vec![
            vec![1.0, 0.9, 0.7, 0.4, 0.2],
            vec![0.5, 0.4, 0.6, 0.1, 0.7],
            vec![0.4, 0.4, 0.4, 0.4, 0.4],
        ],
    }
}

/// Integrate every initial set to steady state and compare the spread of the
/// steady values with the structural ACR prediction.
///
/// Runs that fail (integration error, or horizon reached while still moving)
/// are recorded and skipped; at least two runs must succeed.
pub fn acr_experiment(
    net: &Network,
    bindings: &Bindings,
    initial_sets: &[Vec<f64>],
    settings: &SimSettings,
) -> Result<AcrExperiment> {
    if initial_sets.len() < 2 {
        return Err(CrnError::Invalid(
            "the ACR experiment needs at least two initial-condition sets".into(),
        ));
    }
    let m = net.num_species();
    let mut runs = Vec::with_capacity(initial_sets.len());
    for x0 in initial_sets {
        let outcome = match integrate(net, bindings, x0, settings) {
            Ok(traj) if traj.stop == StopReason::SteadyState => {
                Ok(traj.final_state().to_vec())
            }
            Ok(traj) => Err(format!(
                "no steady state within t = {} (final ‖rhs‖∞ = {:.3e})",
                settings.t_end, traj.final_rhs_norm
            )),
            Err(e) => Err(e.to_string()),
        };
        runs.push(AcrRun {
            initial: x0.clone(),
            total: x0.iter().sum(),
            outcome,
        });
    }

    let finals: Vec<&Vec<f64>> = runs.iter().filter_map(|r| r.outcome.as_ref().ok()).collect();
    if finals.len() < 2 {
        return Err(CrnError::Numerical(format!(
            "only {} of {} runs reached a steady state; cannot measure spreads",
            finals.len(),
            runs.len()
        )));
    }

    let mut spreads = Vec::with_capacity(m);
    for j in 0..m {
        let vals: Vec<f64> = finals.iter().map(|s| s[j]).collect();
        let max = vals.iter().cloned().fold(f64::MIN, f64::max);
        let min = vals.iter().cloned().fold(f64::MAX, f64::min);
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        spreads.push((max - min) / mean);
    }
    let robust: Vec<usize> = (0..m).filter(|&j| spreads[j] < ROBUST_SPREAD).collect();
    let non_robust: Vec<usize> = (0..m).filter(|&j| spreads[j] > NON_ROBUST_SPREAD).collect();

    let predicted = acr_hyperplane(net, bindings)?.species;
    let agrees = robust == predicted;

    Ok(AcrExperiment {
        species: net.species.clone(),
        runs,
        spreads,
        robust,
        non_robust,
        predicted,
        agrees,
    })
}

/// Dynamical probe of one steady state found by the class equation.
#[derive(Clone, Debug)]
pub struct RootCheck {
    /// Free-parameter value of the root (after any exponent rescale).
    pub tau: f64,
    /// Full steady state in network species order.
    pub state: Vec<f64>,
    /// ‖dx/dt‖∞ at the reconstructed state.
    pub rhs_norm: f64,
    /// Result of integrating from a small in-class perturbation: the final
    /// distance to the root state, or the failure recorded for this probe.
    pub perturbation: std::result::Result<PerturbOutcome, String>,
}

#[derive(Clone, Debug)]
pub struct PerturbOutcome {
    pub initial: Vec<f64>,
    /// ‖x(t_final) − x*‖∞.
    pub distance: f64,
    /// The perturbed trajectory settled back onto the root state.
    pub returned: bool,
}

#[derive(Clone, Debug)]
pub struct MultiExperiment {
    /// Class-equation analysis (terms, sign-change bound, isolated roots).
    pub report: RootReport,
    /// Samples (τ, g(τ) − T) of the class function on a geometric grid;
    /// roots of the class equation are the zero crossings.
    pub curve: Vec<(f64, f64)>,
    pub checks: Vec<RootCheck>,
}

/// Distance below which a perturbed trajectory counts as having returned.
const RETURN_TOL: f64 = 1e-4;

/// Count the steady states in the class Σx = `total`, sample the class
/// function, and verify each root by perturbed integration.
pub fn multistationarity_experiment(
    net: &Network,
    bindings: &Bindings,
    param: &Parametrization,
    total: &Rat,
    settings: &SimSettings,
    curve_points: usize,
) -> Result<MultiExperiment> {
    let report = count_roots(param, bindings, total)?;
    let m = net.num_species();

    // Reconstructing full states needs every species covered.
    let scaled = &report.param;
    let mut row_of = vec![None; m];
    for (row, &sp) in scaled.species.iter().enumerate() {
        row_of[sp] = Some(row);
    }
    if let Some(missing) = row_of.iter().position(Option::is_none) {
        return Err(CrnError::Invalid(format!(
            "parametrization does not cover species {}",
            net.species[missing]
        )));
    }

    // Geometric τ grid wide enough to show every crossing.
    let (mut lo, mut hi) = (1e-3f64, 1e3f64);
    for r in &report.roots {
        lo = lo.min(r.tau / 10.0);
        hi = hi.max(r.tau * 10.0);
    }
    let n = curve_points.max(2);
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    let mut curve = Vec::with_capacity(n);
    let mut tau = lo;
    for _ in 0..n {
        curve.push((tau, report.eval(tau)));
        tau *= ratio;
    }

    // In-class perturbation direction: the first reaction vector.
    let direction: Vec<f64> = net
        .stoichiometric_matrix()
        .col_vec(0)
        .iter()
        .map(rat_to_f64)
        .collect();

    let mut checks = Vec::with_capacity(report.roots.len());
    for root in &report.roots {
        let mut state = vec![0.0; m];
        for (row, &sp) in scaled.species.iter().enumerate() {
            state[sp] = root.state[row];
        }
        let rhs = ode_rhs(net, bindings, &state)?;
        let rhs_norm = rhs.iter().fold(0.0f64, |a, &v| a.max(v.abs()));

        // Shrink the kick until the perturbed point is strictly positive.
        let mut delta = 0.01;
        let perturbed_initial = loop {
            let x0: Vec<f64> = state
                .iter()
                .zip(&direction)
                .map(|(x, d)| x + delta * d)
                .collect();
            if x0.iter().all(|&v| v > settings.positivity_floor) {
                break x0;
            }
            delta /= 2.0;
            if delta < 1e-10 {
                break state.clone();
            }
        };

        let perturbation = match integrate(net, bindings, &perturbed_initial, settings) {
            Ok(traj) => {
                let distance = traj
                    .final_state()
                    .iter()
                    .zip(&state)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                Ok(PerturbOutcome {
                    initial: perturbed_initial,
                    distance,
                    returned: distance < RETURN_TOL,
                })
            }
            Err(e) => Err(e.to_string()),
        };

        checks.push(RootCheck {
            tau: root.tau,
            state,
            rhs_norm,
            perturbation,
        });
    }

    Ok(MultiExperiment {
        report,
        curve,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::models;
    use crate::steady::solve_builtin;

    fn doc_bindings(preset: &str) -> (Network, Bindings) {
        let model = models::builtin("doc").unwrap();
        let bindings = model
            .default_rate_bindings()
            .merged_with(&models::order_preset(preset).unwrap());
        (model.network(), bindings)
    }

    #[test]
    fn p_null_robust_set_matches_the_prediction() {
        let (net, bindings) = doc_bindings("acr-p-null");
        let sets = standard_initial_sets(RegimeClass::PNull);
        let exp = acr_experiment(&net, &bindings, &sets, &SimSettings::default()).unwrap();
        assert!(exp.runs.iter().all(|r| r.outcome.is_ok()));
        // Robust in everything except A1.
        assert_eq!(exp.robust, vec![1, 2, 3, 4]);
        assert_eq!(exp.non_robust, vec![0]);
        assert!(exp.agrees);
    }

    #[test]
    fn too_few_initial_sets_is_invalid() {
        let (net, bindings) = doc_bindings("acr-p-null");
        let err = acr_experiment(
            &net,
            &bindings,
            &[vec![0.9; 5]],
            &SimSettings::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CrnError::Invalid(_)));
    }

    #[test]
    fn positive_regime_roots_verify_dynamically() {
        let (net, bindings) = doc_bindings("positive");
        let model = models::builtin("doc").unwrap();
        let sol = solve_builtin(model, &bindings).unwrap();
        let exp = multistationarity_experiment(
            &net,
            &bindings,
            sol.primary(),
            &rat_int(5),
            &SimSettings::default(),
            64,
        )
        .unwrap();
        assert_eq!(exp.report.roots.len(), 2);
        assert_eq!(exp.curve.len(), 64);
        for check in &exp.checks {
            assert!(check.rhs_norm < 1e-9, "residual {}", check.rhs_norm);
            let total: f64 = check.state.iter().sum();
            assert!((total - 5.0).abs() < 1e-8);
        }
        // The two crossings bracket a sign change on the curve.
        let signs: Vec<bool> = exp.curve.iter().map(|&(_, v)| v > 0.0).collect();
        assert!(signs.windows(2).any(|w| w[0] != w[1]));
        // At least one of the two steady states attracts its perturbation.
        assert!(exp
            .checks
            .iter()
            .any(|c| matches!(&c.perturbation, Ok(p) if p.returned)));
    }
}
