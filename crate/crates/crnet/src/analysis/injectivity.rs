//! Injectivity test for power-law systems via the symbolic Jacobian-type
//! determinant.
//!
//! Form M = N·diag(z)·F·diag(k) with one symbol z_e per reaction and one
//! symbol k_j per species, where N is the stoichiometric matrix and F the
//! kinetic-order matrix (one row per reaction). Rows of M indexed by a
//! reduced-echelon basis {w} of the left kernel of N are replaced by the
//! constant rows w (each at the first nonzero coordinate of its w), and the
//! determinant of the resulting matrix M* is expanded exactly. If every term
//! has the same sign over positive z and k, the system is injective on each
//! stoichiometric class, ruling out multiple steady states.

use crate::error::{CrnError, Result};
use crate::exact::Rat;
use crate::network::{Bindings, Network};
use crate::poly::{poly_det, Poly, VarTable};
use num::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjectivityVerdict {
    /// All determinant terms positive.
    InjectivePositive,
    /// All determinant terms negative.
    InjectiveNegative,
    /// Mixed signs or an identically zero determinant: the test is silent.
    Inconclusive,
}

impl std::fmt::Display for InjectivityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InjectivityVerdict::InjectivePositive => write!(f, "injective (+)"),
            InjectivityVerdict::InjectiveNegative => write!(f, "injective (-)"),
            InjectivityVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    /// Symbol table: z_1..z_r (reactions) then k_1..k_m (species).
    pub vars: VarTable,
    /// det(M*) expanded over the symbols.
    pub determinant: Poly,
    pub positive_terms: usize,
    pub negative_terms: usize,
    /// Every term has the same degree in the z-block and in the k-block.
    pub homogeneous: bool,
    pub z_degree: Option<u32>,
    pub k_degree: Option<u32>,
    pub verdict: InjectivityVerdict,
    /// Row indices of M replaced by conservation vectors.
    pub replaced_rows: Vec<usize>,
}

/// Build M* and classify the sign structure of its determinant.
pub fn injectivity(net: &Network, bindings: &Bindings) -> Result<InjectivityReport> {
    let m = net.num_species();
    let r = net.num_reactions();
    let nvars = r + m;

    let mut vars = VarTable::new();
    for e in 0..r {
        vars.intern(&format!("z{}", e + 1));
    }
    for j in 0..m {
        vars.intern(&format!("k{}", j + 1));
    }

    let n_mat = net.stoichiometric_matrix();
    let f_rows: Vec<Vec<_>> = (0..r)
        .map(|rix| net.kinetic_order_row(rix, bindings))
        .collect::<Result<_>>()?;

    // M[i][j] = Σ_e N[i][e]·F[e][j] · z_e·k_j.
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let mut entry = Poly::zero(nvars);
            for e in 0..r {
                let c = n_mat.at(i, e) * &f_rows[e][j];
                if !c.is_zero() {
                    let zk = Poly::var(nvars, e).mul(&Poly::var(nvars, r + j));
                    entry = entry.add(&zk.scale(&c));
                }
            }
            row.push(entry);
        }
        rows.push(row);
    }

    // Replace rows by the left-kernel basis of N (conservation laws), each at
    // the first nonzero coordinate of its basis vector.
    let kernel = n_mat.left_null_space_basis();
    let mut replaced_rows = Vec::new();
    for w in &kernel {
        let i = w
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| CrnError::Invalid("zero conservation vector".into()))?;
        if replaced_rows.contains(&i) {
            return Err(CrnError::Unsupported(
                "conservation vectors share a leading coordinate".into(),
            ));
        }
        replaced_rows.push(i);
        for j in 0..m {
            rows[i][j] = Poly::constant(nvars, w[j].clone());
        }
    }

    let determinant = poly_det(&rows);
    let (has_pos, has_neg) = determinant.coefficient_signs();
    let positive_terms = determinant
        .terms()
        .filter(|(_, c): &(_, &Rat)| c.is_positive())
        .count();
    let negative_terms = determinant.num_terms() - positive_terms;

    let homogeneous =
        determinant.homogeneous_over(0..r) && determinant.homogeneous_over(r..nvars);
    let (z_degree, k_degree) = match determinant.terms().next() {
        Some((e, _)) if homogeneous => (
            Some(e[..r].iter().sum::<u32>()),
            Some(e[r..].iter().sum::<u32>()),
        ),
        _ => (None, None),
    };

    let verdict = if determinant.is_zero() {
        InjectivityVerdict::Inconclusive
    } else if has_pos && !has_neg {
        InjectivityVerdict::InjectivePositive
    } else if has_neg && !has_pos {
        InjectivityVerdict::InjectiveNegative
    } else {
        InjectivityVerdict::Inconclusive
    };

    Ok(InjectivityReport {
        vars,
        determinant,
        positive_terms,
        negative_terms,
        homogeneous,
        z_degree,
        k_degree,
        verdict,
        replaced_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn report_for(orders: &str) -> InjectivityReport {
        let model = models::builtin("doc").unwrap();
        let net = model.network();
        let bindings = model
            .default_rate_bindings()
            .merged_with(&crate::network::Bindings::parse(orders).unwrap());
        injectivity(&net, &bindings).unwrap()
    }

    #[test]
    fn conservation_row_replaces_first_row() {
        let rep = report_for("p1=1 q1=1 p2=2 q2=2");
        assert_eq!(rep.replaced_rows, vec![0]);
    }

    #[test]
    fn determinant_is_bihomogeneous() {
        let rep = report_for("p1=3/2 q1=1 p2=5/2 q2=3");
        assert!(rep.homogeneous);
        // One conservation row: degrees drop from 5 to 4.
        assert_eq!(rep.z_degree, Some(4));
        assert_eq!(rep.k_degree, Some(4));
    }

    #[test]
    fn orientation_flips_with_orders() {
        let plus = report_for("p1=-1 q1=1 p2=1 q2=-1");
        assert_eq!(plus.verdict, InjectivityVerdict::InjectivePositive);
        let minus = report_for("p1=1 q1=-1 p2=-1 q2=1");
        assert_eq!(minus.verdict, InjectivityVerdict::InjectiveNegative);
    }
}
