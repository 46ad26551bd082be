//! Structural flags: weak reversibility, conservativity, positive
//! dependency (each with an exact certificate when it holds), linkage-class
//! independence, maximal closure, and reactant diversity.

use super::numbers::{weakly_reversible, ComplexGraph};
use super::Network;
use crate::exact::{positive_combination, ExactMatrix, Rat};

/// Three-valued answer for properties whose check may be out of scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    /// The property is not decided by this toolkit.
    Unsupported,
}

/// Structural properties of a network.
#[derive(Clone, Debug)]
pub struct StructuralFlags {
    /// Every reaction lies in a directed cycle of complexes.
    pub weakly_reversible: bool,
    /// A strictly positive vector in the left null space of N exists.
    pub conservative: bool,
    /// Certificate: strictly positive `w` with `wᵀN = 0` (entries ≥ 1).
    pub conservation_certificate: Option<Vec<Rat>>,
    /// A strictly positive vector in the null space of N exists.
    pub positively_dependent: bool,
    /// Certificate: strictly positive `α` with `Nα = 0` (entries ≥ 1).
    pub dependency_certificate: Option<Vec<Rat>>,
    /// The linkage-class decomposition of the reactions is independent
    /// (the per-class stoichiometric ranks sum to the whole rank).
    pub independent_linkage_classes: bool,
    /// s = m − 1: the stoichiometric subspace has maximal dimension for a
    /// conservative network.
    pub maximally_closed: bool,
    /// n_r > s: more distinct reactant complexes than the rank.
    pub high_reactant_diversity: bool,
    /// Concordance is outside the supported fragment.
    pub concordant: TriState,
}

/// Compute the structural flags with exact certificates.
pub fn structural_flags(net: &Network) -> StructuralFlags {
    let n = net.stoichiometric_matrix();

    let left_basis = n.left_null_space_basis();
    let conservation = if left_basis.is_empty() {
        None
    } else {
        let cols = ExactMatrix::from_fn(net.num_species(), left_basis.len(), |i, j| {
            left_basis[j][i].clone()
        });
        positive_combination(&cols).map(|(w, _)| w)
    };

    let ker_basis = n.null_space_basis();
    let dependency = if ker_basis.is_empty() {
        None
    } else {
        let cols = ExactMatrix::from_fn(net.num_reactions(), ker_basis.len(), |i, j| {
            ker_basis[j][i].clone()
        });
        positive_combination(&cols).map(|(a, _)| a)
    };

    // Group reactions by the linkage class of their complexes (each
    // reaction's reactant and product lie in the same undirected component)
    // and check rank additivity over that partition.
    let graph = ComplexGraph::of(net);
    let component = graph.weak_components();
    let whole_rank = n.rank();
    let num_classes = component.iter().copied().max().map_or(0, |c| c + 1);
    let mut class_cols: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for rix in 0..net.num_reactions() {
        class_cols[component[net.reactant_complex_index(rix)]].push(rix);
    }
    let class_rank_sum: usize = class_cols
        .iter()
        .filter(|cols| !cols.is_empty())
        .map(|cols| n.select_columns(cols).rank())
        .sum();

    let reactants: std::collections::BTreeSet<usize> = (0..net.num_reactions())
        .map(|rix| net.reactant_complex_index(rix))
        .collect();

    StructuralFlags {
        weakly_reversible: weakly_reversible(net),
        conservative: conservation.is_some(),
        conservation_certificate: conservation,
        positively_dependent: dependency.is_some(),
        dependency_certificate: dependency,
        independent_linkage_classes: class_rank_sum == whole_rank,
        maximally_closed: whole_rank + 1 == net.num_species(),
        high_reactant_diversity: reactants.len() > whole_rank,
        concordant: TriState::Unsupported,
    }
}
