//! End-to-end steady-state solving: decompose the network, translate and
//! parametrize each independent part, then merge the per-part solutions into
//! monomial parametrizations of the whole network.

use crate::decomp::{finest_independent_decomposition, Decomposition};
use crate::error::Result;
use crate::models::BuiltinModel;
use crate::network::{Bindings, Network};
use crate::steady::param::{merge, parametrize, Parametrization, PartSolution};
use crate::steady::translate::{translate, SignedComplex};

/// Cap on merged branch combinations (pivot choices multiply across parts).
pub const MAX_BRANCHES: usize = 16;

/// Per-part parametrization: one solution per admissible pivot branch.
#[derive(Clone, Debug)]
pub struct PartBranches {
    /// Reaction labels of the part, in file order.
    pub labels: Vec<String>,
    pub solutions: Vec<PartSolution>,
}

/// One merged parametrization, tagged with the branch picked in each part.
#[derive(Clone, Debug)]
pub struct BranchChoice {
    pub choice: Vec<usize>,
    pub merged: Parametrization,
}

/// Full steady-state solution of a network.
#[derive(Clone, Debug)]
pub struct NetworkSolution {
    pub decomposition: Decomposition,
    pub parts: Vec<PartBranches>,
    pub branches: Vec<BranchChoice>,
    /// True when the branch product exceeded [`MAX_BRANCHES`] and was cut.
    pub truncated: bool,
}

impl NetworkSolution {
    /// The merged parametrization of the first branch combination.
    pub fn primary(&self) -> &Parametrization {
        &self.branches[0].merged
    }
}

/// Decompose, translate, parametrize, and merge.
///
/// `shifts` are positional over `net`'s reactions (the same shift is added to
/// both sides, so reaction vectors are preserved); `designated_free` lists
/// global species indices kept out of pivot sets when possible.
pub fn solve_network(
    net: &Network,
    bindings: &Bindings,
    shifts: &[SignedComplex],
    designated_free: &[usize],
) -> Result<NetworkSolution> {
    let decomposition = finest_independent_decomposition(net)?;

    let mut parts = Vec::with_capacity(decomposition.parts.len());
    for labels in &decomposition.parts {
        let sub = net.subnetwork(labels)?;
        let sub_shifts: Vec<SignedComplex> = sub
            .reactions
            .iter()
            .map(|r| {
                let ix = net
                    .reaction_index(&r.label)
                    .expect("subnetwork reaction exists in parent");
                shifts[ix].clone()
            })
            .collect();
        let tn = translate(&sub, bindings, &sub_shifts)?;
        let solutions = parametrize(&tn, designated_free)?;
        parts.push(PartBranches {
            labels: labels.clone(),
            solutions,
        });
    }

    // All branch combinations in lexicographic order, capped.
    let mut branches = Vec::new();
    let mut truncated = false;
    let mut choice = vec![0usize; parts.len()];
    loop {
        if branches.len() == MAX_BRANCHES {
            truncated = true;
            break;
        }
        let chosen: Vec<&Parametrization> = parts
            .iter()
            .zip(&choice)
            .map(|(p, &c)| &p.solutions[c].param)
            .collect();
        branches.push(BranchChoice {
            choice: choice.clone(),
            merged: merge(&chosen, &net.species)?,
        });
        // Odometer increment, last part fastest.
        let mut pos = parts.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < parts[pos].solutions.len() {
                break;
            }
            choice[pos] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            break;
        }
    }

    Ok(NetworkSolution {
        decomposition,
        parts,
        branches,
        truncated,
    })
}

/// [`solve_network`] for a built-in model: its registered translation shifts
/// and designated-free species are applied automatically. `bindings` must
/// bind the kinetic orders (and may rebind rates).
pub fn solve_builtin(model: &BuiltinModel, bindings: &Bindings) -> Result<NetworkSolution> {
    let net = model.network();
    let pairs: Vec<(&str, Vec<(String, crate::exact::Rat)>)> = net
        .reactions
        .iter()
        .map(|r| {
            let combo = model
                .shift_for(&r.label)
                .into_iter()
                .map(|(sp, c)| (sp.to_string(), c))
                .collect();
            (
                // Borrow the label from the model's static reaction list via
                // the network's own storage.
                r.label.as_str(),
                combo,
            )
        })
        .collect();
    let shifts = crate::steady::translate::shifts_from_pairs(&net, &pairs)?;
    let free: Vec<usize> = model
        .designated_free
        .iter()
        .filter_map(|name| net.species_index(name))
        .collect();
    solve_network(&net, bindings, &shifts, &free)
}
