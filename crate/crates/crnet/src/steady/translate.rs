//! Network translation: shift each reaction's reactant and product by the
//! same signed species combination. Reaction vectors are preserved by
//! construction; the payoff is a translated reaction graph that can be weakly
//! reversible with deficiency zero even when the original is not, while each
//! node keeps the kinetics of the original reactant complexes mapped onto it.

use crate::error::{CrnError, Result};
use crate::exact::Rat;
use crate::network::{Bindings, Complex, ComplexGraph, Network, SymExpr};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// A species combination with arbitrary rational coefficients
/// (translation shifts may be negative).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SignedComplex {
    coeffs: BTreeMap<usize, Rat>,
}

impl SignedComplex {
    pub fn new() -> Self {
        SignedComplex::default()
    }

    pub fn from_complex(c: &Complex) -> Self {
        let mut s = SignedComplex::new();
        for (sp, v) in c.iter() {
            s.add_species(sp, v.clone());
        }
        s
    }

    pub fn add_species(&mut self, sp: usize, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let e = self.coeffs.entry(sp).or_insert_with(Rat::zero);
        *e += coeff;
        if e.is_zero() {
            self.coeffs.remove(&sp);
        }
    }

    pub fn plus(&self, other: &SignedComplex) -> SignedComplex {
        let mut out = self.clone();
        for (sp, v) in &other.coeffs {
            out.add_species(*sp, v.clone());
        }
        out
    }

    pub fn coeff(&self, sp: usize) -> Rat {
        self.coeffs.get(&sp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Render with species names, e.g. `A1 - A2 + 2 A3`; the empty
    /// combination renders as `0`.
    pub fn display(&self, species: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (sp, v)) in self.coeffs.iter().enumerate() {
            let mag = if v < &Rat::zero() { -v.clone() } else { v.clone() };
            if i == 0 {
                if v < &Rat::zero() {
                    out.push('-');
                }
            } else {
                out.push_str(if v < &Rat::zero() { " - " } else { " + " });
            }
            if !mag.is_integer() || mag != Rat::from_integer(1.into()) {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&species[*sp]);
        }
        out
    }
}

/// One node of a translated network.
#[derive(Clone, Debug)]
pub struct TranslatedNode {
    /// The (possibly signed) translated complex.
    pub complex: SignedComplex,
    /// Kinetic-order vector (length = number of species of the source
    /// network) shared by every reaction leaving this node.
    pub kinetic: Vec<Rat>,
}

/// One edge of a translated network (a source reaction).
#[derive(Clone, Debug)]
pub struct TranslatedEdge {
    /// Index of the reaction in the source network.
    pub reaction: usize,
    pub label: String,
    pub rate: SymExpr,
    pub from: usize,
    pub to: usize,
}

/// A weakly reversible, deficiency-zero translation of a network.
#[derive(Clone, Debug)]
pub struct TranslatedNetwork {
    /// Species names of the source network (full list).
    pub species: Vec<String>,
    /// Species indices that actually occur in stoichiometry, kinetics, or
    /// translated complexes, ascending.
    pub support: Vec<usize>,
    pub nodes: Vec<TranslatedNode>,
    pub edges: Vec<TranslatedEdge>,
    /// Linkage classes of the translated graph.
    pub num_linkage: usize,
    /// Rank of the (preserved) stoichiometric subspace.
    pub rank: usize,
}

/// Translate `net` by adding `shifts[i]` to both sides of reaction `i`.
///
/// Because one shift is applied to both complexes, reaction vectors are
/// preserved identically. Fails unless the translated graph is weakly
/// reversible with deficiency zero and every reaction leaving a common
/// translated node carries the same kinetic-order vector.
pub fn translate(
    net: &Network,
    bindings: &Bindings,
    shifts: &[SignedComplex],
) -> Result<TranslatedNetwork> {
    let r = net.num_reactions();
    if shifts.len() != r {
        return Err(CrnError::Invalid(format!(
            "expected {r} translation shifts, got {}",
            shifts.len()
        )));
    }

    // Build translated node set in first-appearance order.
    let mut nodes: Vec<SignedComplex> = Vec::new();
    let index_of = |c: SignedComplex, nodes: &mut Vec<SignedComplex>| -> usize {
        if let Some(i) = nodes.iter().position(|x| *x == c) {
            i
        } else {
            nodes.push(c);
            nodes.len() - 1
        }
    };
    let mut edges = Vec::with_capacity(r);
    for (i, reaction) in net.reactions.iter().enumerate() {
        let from_c = SignedComplex::from_complex(&reaction.reactant).plus(&shifts[i]);
        let to_c = SignedComplex::from_complex(&reaction.product).plus(&shifts[i]);
        if from_c == to_c {
            return Err(CrnError::Invalid(format!(
                "translation collapses reaction `{}` to a self-loop",
                reaction.label
            )));
        }
        let from = index_of(from_c, &mut nodes);
        let to = index_of(to_c, &mut nodes);
        edges.push(TranslatedEdge {
            reaction: i,
            label: reaction.label.clone(),
            rate: reaction.rate.clone(),
            from,
            to,
        });
    }

    // Each node takes its kinetics from the reactions it is the source of;
    // these must agree.
    let mut kinetics: Vec<Option<Vec<Rat>>> = vec![None; nodes.len()];
    for e in &edges {
        let row = net.kinetic_order_row(e.reaction, bindings)?;
        match &kinetics[e.from] {
            None => kinetics[e.from] = Some(row),
            Some(existing) if *existing == row => {}
            Some(_) => {
                return Err(CrnError::Unsupported(format!(
                    "reactions translated onto node `{}` disagree in kinetic orders",
                    nodes[e.from].display(&net.species)
                )));
            }
        }
    }

    // Structure: weak reversibility and deficiency zero of the translation.
    let graph = ComplexGraph::from_edges(
        nodes.len(),
        edges.iter().map(|e| (e.from, e.to)).collect(),
    );
    let strong = graph.strong_components();
    if !graph.edges.iter().all(|&(a, b)| strong[a] == strong[b]) {
        return Err(CrnError::Unsupported(
            "translated network is not weakly reversible".into(),
        ));
    }
    let weak = graph.weak_components();
    let num_linkage = weak.iter().copied().collect::<BTreeSet<_>>().len();
    let rank = net.stoichiometric_matrix().rank();
    let deficiency = nodes.len() as i64 - num_linkage as i64 - rank as i64;
    if deficiency != 0 {
        return Err(CrnError::Unsupported(format!(
            "translated network has deficiency {deficiency}, need 0"
        )));
    }

    // Weak reversibility guarantees every node has an outgoing edge, hence a
    // kinetic vector.
    let kinetics: Vec<Vec<Rat>> = kinetics
        .into_iter()
        .map(|k| k.expect("weak reversibility leaves no source-free node"))
        .collect();

    // Support: species touched by stoichiometry, kinetics, or complexes.
    let mut support: BTreeSet<usize> = BTreeSet::new();
    for i in 0..r {
        support.extend(net.reaction_support(i));
    }
    for c in &nodes {
        support.extend(c.support());
    }
    for k in &kinetics {
        for (sp, v) in k.iter().enumerate() {
            if !v.is_zero() {
                support.insert(sp);
            }
        }
    }

    Ok(TranslatedNetwork {
        species: net.species.clone(),
        support: support.into_iter().collect(),
        nodes: nodes
            .into_iter()
            .zip(kinetics)
            .map(|(complex, kinetic)| TranslatedNode { complex, kinetic })
            .collect(),
        edges,
        num_linkage,
        rank,
    })
}

/// Convenience: build shifts from `(reaction label, [(species, coeff)])`
/// pairs; unlisted reactions get the zero shift.
pub fn shifts_from_pairs(
    net: &Network,
    pairs: &[(&str, Vec<(String, Rat)>)],
) -> Result<Vec<SignedComplex>> {
    let mut shifts = vec![SignedComplex::new(); net.num_reactions()];
    for (label, terms) in pairs {
        let ix = net
            .reaction_index(label)
            .ok_or_else(|| CrnError::Invalid(format!("unknown reaction label `{label}`")))?;
        let mut c = SignedComplex::new();
        for (sp, v) in terms {
            let s = net
                .species_index(sp)
                .ok_or_else(|| CrnError::Invalid(format!("unknown species `{sp}`")))?;
            c.add_species(s, v.clone());
        }
        shifts[ix] = c;
    }
    Ok(shifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::network::parse_network;

    fn two_cycle() -> Network {
        parse_network(
            "network cycle\n\
             species X Y\n\
             reaction R1: X -> Y rate k1\n\
             reaction R2: Y -> X rate k2\n",
        )
        .unwrap()
    }

    #[test]
    fn identity_translation_of_a_cycle() {
        let net = two_cycle();
        let shifts = vec![SignedComplex::new(), SignedComplex::new()];
        let tn = translate(&net, &Bindings::new(), &shifts).unwrap();
        assert_eq!(tn.nodes.len(), 2);
        assert_eq!(tn.num_linkage, 1);
        assert_eq!(tn.rank, 1);
        // Mass-action kinetics on the untranslated nodes.
        assert_eq!(tn.nodes[0].kinetic, vec![rat_int(1), rat_int(0)]);
        assert_eq!(tn.nodes[1].kinetic, vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn shift_merges_nodes_and_checks_kinetics() {
        // X+Y -> 2Y, Y -> X with shift -Y on the first reaction:
        // becomes X -> Y, Y -> X (weakly reversible, deficiency 0).
        let net = parse_network(
            "network shifted\n\
             species X Y\n\
             reaction R1: X + Y -> 2 Y rate k1\n\
             reaction R2: Y -> X rate k2\n",
        )
        .unwrap();
        let shifts = shifts_from_pairs(&net, &[("R1", vec![("Y".into(), -rat_int(1))])]).unwrap();
        let tn = translate(&net, &Bindings::new(), &shifts).unwrap();
        assert_eq!(tn.nodes.len(), 2);
        // Node `X` keeps the kinetics of the original reactant X+Y.
        assert_eq!(tn.nodes[0].kinetic, vec![rat_int(1), rat_int(1)]);
        assert_eq!(tn.nodes[0].complex.display(&net.species), "X");

        // Without the shift the graph X+Y -> 2Y, Y -> X is not weakly
        // reversible.
        let none = vec![SignedComplex::new(), SignedComplex::new()];
        assert!(matches!(
            translate(&net, &Bindings::new(), &none),
            Err(CrnError::Unsupported(_))
        ));
    }

    #[test]
    fn conflicting_kinetics_rejected() {
        // Two reactions translated onto the same node with different orders.
        let net = parse_network(
            "network conflict\n\
             species X Y\n\
             reaction R1: X -> Y rate k1 orders X=2\n\
             reaction R2: X -> Y rate k2 orders X=3\n",
        )
        .unwrap();
        // Self-edges aside, both leave node X with different kinetic rows.
        let shifts = vec![SignedComplex::new(), SignedComplex::new()];
        let err = translate(&net, &Bindings::new(), &shifts);
        assert!(matches!(err, Err(CrnError::Unsupported(_))));
    }
}
