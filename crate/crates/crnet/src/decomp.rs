//! Finest independent decomposition of a reaction network and
//! T̂-independence of a decomposition under power-law kinetics.
//!
//! The finest independent decomposition is computed with the dependency-graph
//! method: pick the lexicographically first basis of the reaction vectors (in
//! file order), write every remaining reaction vector in that basis, link
//! each dependent reaction to the basis reactions appearing with a nonzero
//! coordinate, and read the parts off the connected components.

use crate::error::{CrnError, Result};
use crate::exact::{ExactMatrix, Rat};
use crate::network::{Bindings, Network};
use num::Zero;
use std::collections::BTreeSet;

/// A decomposition of a network's reaction set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Parts as reaction labels, reactions in file order within each part;
    /// parts ordered by their earliest reaction.
    pub parts: Vec<Vec<String>>,
    /// Rank of each part's stoichiometric subspace.
    pub part_ranks: Vec<usize>,
    /// Rank of the whole network.
    pub whole_rank: usize,
    /// Σ part_ranks == whole_rank.
    pub independent: bool,
}

/// Compute the finest independent decomposition.
pub fn finest_independent_decomposition(net: &Network) -> Result<Decomposition> {
    let r = net.num_reactions();
    if r == 0 {
        return Err(CrnError::Invalid("network has no reactions".into()));
    }
    let n = net.stoichiometric_matrix();

    // Greedy leftmost basis among the reaction vectors (columns of N).
    let mut basis_cols: Vec<usize> = Vec::new();
    let mut current_rank = 0;
    for j in 0..r {
        let mut cols = basis_cols.clone();
        cols.push(j);
        let rank = n.select_columns(&cols).rank();
        if rank > current_rank {
            basis_cols.push(j);
            current_rank = rank;
        }
    }

    // Union–find over reactions.
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };

    let basis_matrix = n.select_columns(&basis_cols);
    for j in 0..r {
        if basis_cols.contains(&j) {
            continue;
        }
        let v = n.col_vec(j);
        let coords = basis_matrix.solve(&v).ok_or_else(|| {
            CrnError::Invalid("reaction vector outside basis span (internal)".into())
        })?;
        for (bi, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                union(&mut parent, basis_cols[bi], j);
            }
        }
    }

    // Collect components, ordered by earliest member.
    let mut roots: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for j in 0..r {
        let root = find(&mut parent, j);
        match roots.iter().position(|&x| x == root) {
            Some(k) => members[k].push(j),
            None => {
                roots.push(root);
                members.push(vec![j]);
            }
        }
    }

    let parts: Vec<Vec<String>> = members
        .iter()
        .map(|ms| ms.iter().map(|&j| net.reactions[j].label.clone()).collect())
        .collect();
    let part_ranks: Vec<usize> = members
        .iter()
        .map(|ms| n.select_columns(ms).rank())
        .collect();
    let whole_rank = current_rank;
    let independent = part_ranks.iter().sum::<usize>() == whole_rank;

    Ok(Decomposition {
        parts,
        part_ranks,
        whole_rank,
        independent,
    })
}

/// Report on a candidate decomposition's independence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub part_ranks: Vec<usize>,
    pub whole_rank: usize,
    pub independent: bool,
}

/// Validate that `partition` covers every reaction exactly once, then check
/// rank additivity.
pub fn verify_independence(net: &Network, partition: &[Vec<String>]) -> Result<IndependenceReport> {
    let indices = validate_partition(net, partition)?;
    let n = net.stoichiometric_matrix();
    let part_ranks: Vec<usize> = indices
        .iter()
        .map(|part| n.select_columns(part).rank())
        .collect();
    let whole_rank = n.rank();
    Ok(IndependenceReport {
        independent: part_ranks.iter().sum::<usize>() == whole_rank,
        part_ranks,
        whole_rank,
    })
}

fn validate_partition(net: &Network, partition: &[Vec<String>]) -> Result<Vec<Vec<usize>>> {
    if partition.is_empty() {
        return Err(CrnError::Invalid("empty partition".into()));
    }
    let mut seen = BTreeSet::new();
    let mut indices = Vec::with_capacity(partition.len());
    for part in partition {
        if part.is_empty() {
            return Err(CrnError::Invalid("partition contains an empty part".into()));
        }
        let mut ixs = Vec::with_capacity(part.len());
        for label in part {
            let ix = net
                .reaction_index(label)
                .ok_or_else(|| CrnError::Invalid(format!("unknown reaction label `{label}`")))?;
            if !seen.insert(ix) {
                return Err(CrnError::Invalid(format!(
                    "reaction `{label}` appears in more than one part"
                )));
            }
            ixs.push(ix);
        }
        indices.push(ixs);
    }
    if seen.len() != net.num_reactions() {
        return Err(CrnError::Invalid(
            "partition does not cover every reaction".into(),
        ));
    }
    Ok(indices)
}

/// The T̂ matrix of a partitioned network: one column per distinct
/// (reactant complex, kinetic-order row) pair within each part, carrying the
/// kinetic-order vector in the species rows, plus one indicator row per part
/// whose entry is 1 iff the complex is a reactant in that part.
pub fn that_matrix(
    net: &Network,
    partition: &[Vec<String>],
    bindings: &Bindings,
) -> Result<ExactMatrix> {
    Ok(that_data(net, partition, bindings)?.0)
}

/// Build the whole-network T̂ plus, per part, the column indices of the
/// reactant complexes of that part.
fn that_data(
    net: &Network,
    partition: &[Vec<String>],
    bindings: &Bindings,
) -> Result<(ExactMatrix, Vec<Vec<usize>>)> {
    let indices = validate_partition(net, partition)?;
    let m = net.num_species();
    let p = indices.len();

    // T̂ is well-defined only when every reactant complex carries a single
    // kinetic-order vector across the whole network.
    let mut order_of: std::collections::BTreeMap<usize, Vec<Rat>> = std::collections::BTreeMap::new();
    for rix in 0..net.num_reactions() {
        let key = net.reactant_complex_index(rix);
        let row = net.kinetic_order_row(rix, bindings)?;
        if let Some(prev) = order_of.get(&key) {
            if *prev != row {
                return Err(CrnError::Unsupported(format!(
                    "reactant complex of reaction `{}` carries conflicting kinetic-order vectors",
                    net.reactions[rix].label
                )));
            }
        } else {
            order_of.insert(key, row);
        }
    }

    // One column per distinct reactant complex, in complex order (first
    // appearance in the file).
    let keys: Vec<usize> = order_of.keys().copied().collect();
    let col_of: std::collections::BTreeMap<usize, usize> =
        keys.iter().enumerate().map(|(j, &k)| (k, j)).collect();
    let mut matrix = ExactMatrix::zeros(m + p, keys.len());
    for (j, key) in keys.iter().enumerate() {
        for (i, v) in order_of[key].iter().enumerate() {
            matrix.set(i, j, v.clone());
        }
    }
    let mut part_cols: Vec<Vec<usize>> = Vec::with_capacity(p);
    for (pix, part) in indices.iter().enumerate() {
        let cols: BTreeSet<usize> = part
            .iter()
            .map(|&rix| col_of[&net.reactant_complex_index(rix)])
            .collect();
        for &j in &cols {
            matrix.set(m + pix, j, num::One::one());
        }
        part_cols.push(cols.into_iter().collect());
    }
    Ok((matrix, part_cols))
}

/// Report on T̂-independence of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThatReport {
    /// Rank of the full T̂ matrix.
    pub t_hat: usize,
    /// Ranks of the per-part T̂ matrices.
    pub part_ranks: Vec<usize>,
    /// t_hat == Σ part_ranks.
    pub independent: bool,
}

/// Check T̂-independence: rank additivity of the T̂ matrix over the parts.
///
/// A part's T̂ keeps the species rows and its own indicator row, on the
/// columns of its reactant complexes.
pub fn verify_that_independence(
    net: &Network,
    partition: &[Vec<String>],
    bindings: &Bindings,
) -> Result<ThatReport> {
    let (full, part_cols) = that_data(net, partition, bindings)?;
    let m = net.num_species();
    let t_hat = full.rank();
    let part_ranks: Vec<usize> = part_cols
        .iter()
        .enumerate()
        .map(|(pix, cols)| {
            let mut rows: Vec<usize> = (0..m).collect();
            rows.push(m + pix);
            full.select_rows(&rows).select_columns(cols).rank()
        })
        .collect();
    let independent = part_ranks.iter().sum::<usize>() == t_hat;
    Ok(ThatReport {
        t_hat,
        part_ranks,
        independent,
    })
}
