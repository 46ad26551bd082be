//! Tree constants of a weakly reversible translated network.
//!
//! `K_i` is the sum over spanning in-trees of node `i`'s linkage class,
//! directed toward `i`, of the product of edge rates. Two implementations are
//! provided: direct enumeration of in-trees, and the determinant of the
//! reduced out-degree Laplacian (matrix–tree), used to cross-check.

use crate::error::{CrnError, Result};
use crate::network::{ComplexGraph, SymExpr};
use crate::poly::{poly_det, Poly, VarTable};
use crate::steady::translate::TranslatedNetwork;

/// Tree constants, one polynomial per translated node, over the ring of
/// symbolic edge rates.
#[derive(Clone, Debug)]
pub struct TreeConstants {
    pub vars: VarTable,
    /// `constants[i]` = K_i for node i.
    pub constants: Vec<Poly>,
    /// Edge rate as a polynomial (symbols become variables, numeric rates
    /// constants), in edge order.
    pub edge_weights: Vec<Poly>,
}

/// Polynomial ring over the symbolic rates of `tn`, interned in edge order.
fn rate_ring(tn: &TranslatedNetwork) -> (VarTable, Vec<Poly>) {
    let mut vars = VarTable::new();
    for e in &tn.edges {
        if let SymExpr::Sym(s) = &e.rate {
            vars.intern(s);
        }
    }
    let nv = vars.len();
    let weights = tn
        .edges
        .iter()
        .map(|e| match &e.rate {
            SymExpr::Sym(s) => Poly::var(nv, vars.lookup(s).expect("interned above")),
            SymExpr::Num(v) => Poly::constant(nv, v.clone()),
        })
        .collect();
    (vars, weights)
}

/// Compute tree constants by enumerating spanning in-trees.
pub fn tree_constants(tn: &TranslatedNetwork) -> Result<TreeConstants> {
    let (vars, edge_weights) = rate_ring(tn);
    let nv = vars.len();
    let n = tn.nodes.len();
    let comp = ComplexGraph::from_edges(n, tn.edges.iter().map(|e| (e.from, e.to)).collect())
        .weak_components();

    let mut constants = Vec::with_capacity(n);
    for root in 0..n {
        let others: Vec<usize> = (0..n)
            .filter(|&u| comp[u] == comp[root] && u != root)
            .collect();
        if others.is_empty() {
            constants.push(Poly::one(nv));
            continue;
        }
        // Candidate out-edges per non-root node.
        let mut out_edges: Vec<Vec<usize>> = Vec::with_capacity(others.len());
        for &u in &others {
            let es: Vec<usize> = tn
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.from == u)
                .map(|(i, _)| i)
                .collect();
            if es.is_empty() {
                return Err(CrnError::Unsupported(format!(
                    "translated node `{}` has no outgoing edge",
                    tn.nodes[u].complex.display(&tn.species)
                )));
            }
            out_edges.push(es);
        }

        // Walk the Cartesian product of out-edge choices; keep assignments
        // whose chosen edges form an in-tree toward `root` (every non-root
        // node's chase reaches the root without revisiting).
        let pos_of = |u: usize| others.iter().position(|&x| x == u);
        let mut total = Poly::zero(nv);
        let mut choice = vec![0usize; others.len()];
        'assignments: loop {
            let mut ok = true;
            'validate: for start in 0..others.len() {
                let mut seen = vec![false; others.len()];
                let mut at = start;
                loop {
                    if seen[at] {
                        ok = false;
                        break 'validate;
                    }
                    seen[at] = true;
                    let next = tn.edges[out_edges[at][choice[at]]].to;
                    if next == root {
                        break;
                    }
                    match pos_of(next) {
                        Some(p) => at = p,
                        None => unreachable!("edges stay within the linkage class"),
                    }
                }
            }
            if ok {
                let mut prod = Poly::one(nv);
                for (i, &c) in choice.iter().enumerate() {
                    prod = prod.mul(&edge_weights[out_edges[i][c]]);
                }
                total = total.add(&prod);
            }
            // Next assignment (odometer increment).
            let mut i = 0;
            loop {
                choice[i] += 1;
                if choice[i] < out_edges[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
                if i == others.len() {
                    break 'assignments;
                }
            }
        }
        if total.is_zero() {
            return Err(CrnError::Unsupported(format!(
                "no spanning in-tree toward node `{}`",
                tn.nodes[root].complex.display(&tn.species)
            )));
        }
        constants.push(total);
    }

    Ok(TreeConstants {
        vars,
        constants,
        edge_weights,
    })
}

/// Tree constants via the matrix–tree theorem: K_i is the determinant of the
/// linkage class's out-degree Laplacian with node i's row and column removed.
pub fn tree_constants_matrix_tree(tn: &TranslatedNetwork) -> Result<Vec<Poly>> {
    let (vars, edge_weights) = rate_ring(tn);
    let nv = vars.len();
    let n = tn.nodes.len();
    let comp = ComplexGraph::from_edges(n, tn.edges.iter().map(|e| (e.from, e.to)).collect())
        .weak_components();

    let mut constants = Vec::with_capacity(n);
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&u| comp[u] == comp[root]).collect();
        let others: Vec<usize> = members.iter().copied().filter(|&u| u != root).collect();
        if others.is_empty() {
            constants.push(Poly::one(nv));
            continue;
        }
        let pos = |u: usize| others.iter().position(|&x| x == u);
        let mut lap = vec![vec![Poly::zero(nv); others.len()]; others.len()];
        for (eix, e) in tn.edges.iter().enumerate() {
            if comp[e.from] != comp[root] {
                continue;
            }
            let w = &edge_weights[eix];
            if let Some(i) = pos(e.from) {
                lap[i][i] = lap[i][i].add(w);
                if let Some(j) = pos(e.to) {
                    lap[i][j] = lap[i][j].sub(w);
                }
            }
        }
        constants.push(poly_det(&lap));
    }
    Ok(constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{parse_network, Bindings};
    use crate::steady::translate::{translate, SignedComplex};

    #[test]
    fn two_cycle_constants() {
        let net = parse_network(
            "network cycle\n\
             species X Y\n\
             reaction R1: X -> Y rate k1\n\
             reaction R2: Y -> X rate k2\n",
        )
        .unwrap();
        let tn = translate(
            &net,
            &Bindings::new(),
            &[SignedComplex::new(), SignedComplex::new()],
        )
        .unwrap();
        let tc = tree_constants(&tn).unwrap();
        // Toward X: edge Y->X (k2); toward Y: edge X->Y (k1).
        assert_eq!(
            format!("{}", tc.constants[0].display(&tc.vars)),
            "k2"
        );
        assert_eq!(
            format!("{}", tc.constants[1].display(&tc.vars)),
            "k1"
        );
        assert_eq!(tree_constants_matrix_tree(&tn).unwrap(), tc.constants);
    }

    #[test]
    fn three_cycle_with_chord() {
        // 1 -> 2 -> 3 -> 1 plus chord 2 -> 1: two in-trees toward node 1.
        let net = parse_network(
            "network chord\n\
             species X Y Z\n\
             reaction R1: X -> Y rate a\n\
             reaction R2: Y -> Z rate b\n\
             reaction R3: Z -> X rate c\n\
             reaction R4: Y -> X rate d\n",
        )
        .unwrap();
        let tn = translate(
            &net,
            &Bindings::new(),
            &vec![SignedComplex::new(); 4],
        )
        .unwrap();
        let tc = tree_constants(&tn).unwrap();
        // K_X = b*c (Y->Z->X) + c*d (Y->X with Z->X); term order follows the
        // exponent-vector ordering of the ring (a, b, c, d).
        assert_eq!(
            format!("{}", tc.constants[0].display(&tc.vars)),
            "c*d + b*c"
        );
        assert_eq!(tree_constants_matrix_tree(&tn).unwrap(), tc.constants);
    }
}
