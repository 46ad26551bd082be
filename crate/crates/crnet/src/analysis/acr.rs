//! Absolute concentration robustness (ACR): species whose steady-state value
//! is the same in every positive steady state, for all stoichiometric
//! classes compatible with the rate constants.
//!
//! Two criteria are implemented and should agree when both apply:
//!
//! * hyperplane criterion — species i is robust when the i-th coordinate
//!   vanishes in every basis vector of (S̃)⊥, i.e. the coordinate hyperplane
//!   {x_i = const} contains the kinetic-flux-compatible steady-state
//!   directions;
//! * parametrization criterion — species i is robust when its exponent row
//!   in a positive-steady-state parametrization is identically zero, so the
//!   monomial for x_i does not move with the free parameters.

use crate::error::Result;
use crate::network::{Bindings, Network};
use crate::steady::Parametrization;
use num::Zero;

use super::subspace::kinetic_flux_subspace;

/// Species found to be absolutely robust.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcrReport {
    /// Indices into the network's species list.
    pub species: Vec<usize>,
    pub names: Vec<String>,
}

impl AcrReport {
    pub fn is_empty(&self) -> bool {
        self.species.is_empty()
    }
}

/// Hyperplane criterion from the orthogonal complement of the kinetic-flux
/// subspace. With an empty complement every coordinate vanishes vacuously;
/// callers should treat that (full-rank) case separately.
pub fn acr_hyperplane(net: &Network, bindings: &Bindings) -> Result<AcrReport> {
    let sub = kinetic_flux_subspace(net, bindings)?;
    let m = net.num_species();
    let mut species = Vec::new();
    for i in 0..m {
        if sub.s_tilde_perp_basis.iter().all(|v| v[i].is_zero()) {
            species.push(i);
        }
    }
    let names = species.iter().map(|&i| net.species[i].clone()).collect();
    Ok(AcrReport { species, names })
}

/// Parametrization criterion: zero exponent rows. Only species covered by
/// the parametrization are eligible.
pub fn acr_from_parametrization(param: &Parametrization) -> AcrReport {
    let mut species = Vec::new();
    let mut names = Vec::new();
    for (row, (&sp, name)) in param
        .exps
        .iter()
        .zip(param.species.iter().zip(param.species_names.iter()))
    {
        if row.iter().all(|e| e.is_zero()) {
            species.push(sp);
            names.push(name.clone());
        }
    }
    AcrReport { species, names }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::steady::solve_builtin;

    fn acr_names(preset: &str) -> (Vec<String>, Vec<String>) {
        let model = models::builtin("doc").unwrap();
        let net = model.network();
        let bindings = model
            .default_rate_bindings()
            .merged_with(&models::order_preset(preset).unwrap());
        let hyper = acr_hyperplane(&net, &bindings).unwrap();
        let sol = solve_builtin(model, &bindings).unwrap();
        let param = acr_from_parametrization(sol.primary());
        (hyper.names, param.names)
    }

    #[test]
    fn generic_orders_have_no_robust_species() {
        let (h, p) = acr_names("acr-generic");
        assert!(h.is_empty());
        assert!(p.is_empty());
    }

    #[test]
    fn p_null_orders_fix_everything_but_a1() {
        let (h, p) = acr_names("acr-p-null");
        assert_eq!(h, vec!["A2", "A3", "A4", "A17"]);
        assert_eq!(p, h);
    }

    #[test]
    fn q_null_orders_fix_a1() {
        let (h, p) = acr_names("acr-q-null");
        assert_eq!(h, vec!["A1"]);
        assert_eq!(p, h);
    }
}
