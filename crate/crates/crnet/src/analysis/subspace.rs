//! Stoichiometric and kinetic-flux subspaces, and the sign-vector condition
//! for multistationarity.
//!
//! The kinetic-flux subspace is S̃ = Im(Ỹ·I_a), where Ỹ carries each source
//! complex's kinetic-order vector in place of its molecularity column. A
//! weakly reversible system admits more than one steady state in some
//! stoichiometric class when a nonzero sign pattern is realized by both the
//! stoichiometric subspace S and the orthogonal complement (S̃)⊥.
//!
//! All feasibility questions are decided exactly over the rationals: a sign
//! pattern σ is realizable in span(B) iff the system {x = Bᵀλ, x_j ≥ 1 for
//! σ_j = +, x_j ≤ −1 for σ_j = −, x_j = 0 for σ_j = 0} has a solution, which
//! Fourier–Motzkin elimination settles without floating point.

use crate::error::{CrnError, Result};
use crate::exact::{ExactMatrix, Rat};
use crate::network::{Bindings, Network};
use num::{Signed, Zero};

/// Exact bases of S, S̃, and (S̃)⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceReport {
    pub s_basis: Vec<Vec<Rat>>,
    pub s_tilde_basis: Vec<Vec<Rat>>,
    pub s_tilde_perp_basis: Vec<Vec<Rat>>,
}

fn rref_row_basis(rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j].clone());
    let r = m.rref();
    (0..r.pivots.len())
        .map(|i| (0..ncols).map(|j| r.matrix.at(i, j).clone()).collect())
        .collect()
}

/// Canonical (reduced-echelon) basis of the stoichiometric subspace.
pub fn stoichiometric_subspace(net: &Network) -> Vec<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = (0..net.num_reactions())
        .map(|i| net.reaction_vector(i))
        .collect();
    rref_row_basis(rows, net.num_species())
}

/// Bases of S, S̃ = Im(Ỹ·I_a), and (S̃)⊥.
///
/// Each source complex's Ỹ column is the kinetic-order vector shared by the
/// reactions leaving it (they must agree); complexes that never appear as a
/// reactant keep their molecularity column.
pub fn kinetic_flux_subspace(net: &Network, bindings: &Bindings) -> Result<SubspaceReport> {
    let m = net.num_species();
    let nc = net.num_complexes();

    let mut y_tilde: Vec<Option<Vec<Rat>>> = vec![None; nc];
    for rix in 0..net.num_reactions() {
        let c = net.reactant_complex_index(rix);
        let row = net.kinetic_order_row(rix, bindings)?;
        match &y_tilde[c] {
            None => y_tilde[c] = Some(row),
            Some(existing) if *existing == row => {}
            Some(_) => {
                return Err(CrnError::Unsupported(format!(
                    "reactions sharing source complex `{}` disagree in kinetic orders",
                    net.complexes()[c].display(&net.species)
                )))
            }
        }
    }
    let y_tilde: Vec<Vec<Rat>> = y_tilde
        .into_iter()
        .enumerate()
        .map(|(c, col)| {
            col.unwrap_or_else(|| (0..m).map(|sp| net.complexes()[c].coeff(sp)).collect())
        })
        .collect();

    // Columns of Ỹ·I_a: ỹ(product) − ỹ(reactant), one per reaction.
    let gen_rows: Vec<Vec<Rat>> = (0..net.num_reactions())
        .map(|rix| {
            let from = &y_tilde[net.reactant_complex_index(rix)];
            let to = &y_tilde[net.product_complex_index(rix)];
            (0..m).map(|j| &to[j] - &from[j]).collect()
        })
        .collect();

    let s_tilde_basis = rref_row_basis(gen_rows.clone(), m);
    let gen = ExactMatrix::from_fn(gen_rows.len(), m, |i, j| gen_rows[i][j].clone());
    let s_tilde_perp_basis = gen.null_space_basis();

    Ok(SubspaceReport {
        s_basis: stoichiometric_subspace(net),
        s_tilde_basis,
        s_tilde_perp_basis,
    })
}

/// Result of the sign-vector intersection test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCondition {
    /// A nonzero sign pattern (entries −1/0/+1, first nonzero positive)
    /// realized by both subspaces, if one exists.
    pub witness: Option<Vec<i8>>,
    /// Realizable patterns of the smaller space that were tested.
    pub patterns_tested: usize,
}

/// Exact feasibility of `rows·x ≥ rhs` (componentwise) by Fourier–Motzkin.
fn fm_feasible(mut rows: Vec<(Vec<Rat>, Rat)>, nvars: usize) -> bool {
    for v in 0..nvars {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            if row.0[v].is_positive() {
                pos.push(row);
            } else if row.0[v].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        for p in &pos {
            for n in &neg {
                // (−n_v)·p + p_v·n eliminates x_v; both multipliers positive.
                let a = &p.0[v];
                let b = &n.0[v]; // negative
                let mut coeffs = vec![Rat::zero(); p.0.len()];
                for (j, slot) in coeffs.iter_mut().enumerate() {
                    *slot = -(b.clone()) * &p.0[j] + a.clone() * &n.0[j];
                }
                coeffs[v] = Rat::zero();
                let rhs = -(b.clone()) * &p.1 + a.clone() * &n.1;
                rest.push((coeffs, rhs));
            }
        }
        rest.sort();
        rest.dedup();
        // A constraint 0 ≥ positive is already unsatisfiable.
        if rest
            .iter()
            .any(|(c, r)| c.iter().all(|x| x.is_zero()) && r.is_positive())
        {
            return false;
        }
        rows = rest;
    }
    rows.iter().all(|(_, r)| !r.is_positive())
}

/// Is the sign pattern realizable by a vector of span(basis)?  Entries of
/// `pattern` beyond `assigned` are unconstrained (used for prefix pruning).
fn pattern_feasible(basis: &[Vec<Rat>], pattern: &[i8], assigned: usize) -> bool {
    let d = basis.len();
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (j, &s) in pattern.iter().enumerate().take(assigned) {
        let coeffs: Vec<Rat> = (0..d).map(|b| basis[b][j].clone()).collect();
        match s {
            1 => rows.push((coeffs, Rat::from_integer(1.into()))),
            -1 => rows.push((coeffs.iter().map(|c| -c.clone()).collect(), Rat::from_integer(1.into()))),
            _ => {
                rows.push((coeffs.clone(), Rat::zero()));
                rows.push((coeffs.iter().map(|c| -c.clone()).collect(), Rat::zero()));
            }
        }
    }
    fm_feasible(rows, d)
}

fn sign_of(v: &Rat) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// All realizable nonzero sign patterns of span(basis), canonicalized so the
/// first nonzero entry is positive (σ and −σ are realizable together).
/// Patterns come out in the DFS order +, 0, − per coordinate.
fn realizable_patterns(basis: &[Vec<Rat>], m: usize) -> Result<Vec<Vec<i8>>> {
    if m > 14 {
        return Err(CrnError::Unsupported(format!(
            "sign-pattern enumeration over {m} species exceeds the bound of 14"
        )));
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    if basis.len() == 1 {
        let mut pat: Vec<i8> = basis[0].iter().map(sign_of).collect();
        if pat.iter().all(|&s| s == 0) {
            return Ok(Vec::new());
        }
        if pat.iter().find(|&&s| s != 0) == Some(&-1) {
            for s in pat.iter_mut() {
                *s = -*s;
            }
        }
        return Ok(vec![pat]);
    }

    let mut out = Vec::new();
    let mut pattern = vec![0i8; m];
    // `seen_nonzero`: canonicalization permits − only after the first +.
    fn dfs(
        basis: &[Vec<Rat>],
        pattern: &mut Vec<i8>,
        pos: usize,
        seen_nonzero: bool,
        out: &mut Vec<Vec<i8>>,
    ) {
        let m = pattern.len();
        if pos == m {
            if seen_nonzero {
                out.push(pattern.clone());
            }
            return;
        }
        let choices: &[i8] = if seen_nonzero { &[1, 0, -1] } else { &[1, 0] };
        for &s in choices {
            pattern[pos] = s;
            if pattern_feasible(basis, pattern, pos + 1) {
                dfs(basis, pattern, pos + 1, seen_nonzero || s != 0, out);
            }
        }
        pattern[pos] = 0;
    }
    dfs(basis, &mut pattern, 0, false, &mut out);
    Ok(out)
}

/// Sign-vector intersection test: find a nonzero pattern realized by both
/// span(`s_basis`) and span(`perp_basis`). Patterns of the perp space (the
/// lower-dimensional one for these models) are enumerated and each is tested
/// for realizability in S; the first hit is the witness.
pub fn sign_condition(s_basis: &[Vec<Rat>], perp_basis: &[Vec<Rat>]) -> Result<SignCondition> {
    let m = match (s_basis.first(), perp_basis.first()) {
        (Some(v), _) => v.len(),
        (None, Some(v)) => v.len(),
        (None, None) => 0,
    };
    let patterns = realizable_patterns(perp_basis, m)?;
    let patterns_tested = patterns.len();
    for pat in patterns {
        if pattern_feasible(s_basis, &pat, m) {
            return Ok(SignCondition {
                witness: Some(pat),
                patterns_tested,
            });
        }
    }
    Ok(SignCondition {
        witness: None,
        patterns_tested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_frac, rat_int};

    fn v(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn fourier_motzkin_feasibility() {
        // x ≥ 1 and −x ≥ 0 is infeasible.
        assert!(!fm_feasible(
            vec![(v(&[1]), rat_int(1)), (v(&[-1]), rat_int(0))],
            1
        ));
        // x + y ≥ 1, x − y ≥ 1 is feasible.
        assert!(fm_feasible(
            vec![(v(&[1, 1]), rat_int(1)), (v(&[1, -1]), rat_int(1))],
            2
        ));
        // Degenerate constant rows decide directly.
        assert!(!fm_feasible(vec![(v(&[0]), rat_frac(1, 2))], 1));
        assert!(fm_feasible(vec![(v(&[0]), rat_int(0))], 1));
    }

    #[test]
    fn rank_one_patterns_are_canonical() {
        let pats = realizable_patterns(&[v(&[-2, 1, 0, 3])], 4).unwrap();
        assert_eq!(pats, vec![vec![1, -1, 0, -1]]);
    }

    #[test]
    fn plane_patterns_enumerate() {
        // span{(1,0), (0,1)} realizes every pattern; canonical nonzero ones
        // with first nonzero positive: (+,*) for * in {+,0,−} and (0,+).
        let pats = realizable_patterns(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap();
        assert_eq!(
            pats,
            vec![
                vec![1, 1],
                vec![1, 0],
                vec![1, -1],
                vec![0, 1],
            ]
        );
    }

    #[test]
    fn witness_found_on_shared_line() {
        // S = span{(1,−1,0)}, perp = span{(2,−2,0)}: same line.
        let s = vec![v(&[1, -1, 0])];
        let p = vec![v(&[2, -2, 0])];
        let cond = sign_condition(&s, &p).unwrap();
        assert_eq!(cond.witness, Some(vec![1, -1, 0]));

        // Orthogonal lines share no nonzero sign pattern in 2D.
        let s = vec![v(&[1, 1])];
        let p = vec![v(&[1, -1])];
        let cond = sign_condition(&s, &p).unwrap();
        assert_eq!(cond.witness, None);
        assert_eq!(cond.patterns_tested, 1);
    }
}
