//! Reaction-network model types, the text DSL, and structural matrices.
//!
//! A network is a list of species and labeled reactions between complexes
//! (nonnegative rational combinations of species). Each reaction carries a
//! rate expression (symbol or literal) and optional explicit kinetic orders;
//! absent orders default to mass action (reactant stoichiometry).

mod dsl;
mod flags;
mod numbers;
mod ode;

pub use dsl::parse_network;
pub use flags::{structural_flags, StructuralFlags, TriState};
pub use numbers::{network_numbers, NetworkNumbers};
pub(crate) use numbers::ComplexGraph;
pub use ode::{compile_ode, ode_rhs, ode_rhs_exact, CompiledOde};

use crate::error::{CrnError, Result};
use crate::exact::{ExactMatrix, Rat};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A complex: species index → positive stoichiometric coefficient.
/// The empty map is the zero complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Complex {
    coeffs: BTreeMap<usize, Rat>,
}

impl Complex {
    pub fn new() -> Self {
        Complex::default()
    }

    /// Add `coeff` of species `sp` (coefficients accumulate).
    pub fn add_species(&mut self, sp: usize, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let v = self.coeffs.entry(sp).or_insert_with(Rat::zero);
        *v += coeff;
        if v.is_zero() {
            self.coeffs.remove(&sp);
        }
    }

    pub fn coeff(&self, sp: usize) -> Rat {
        self.coeffs.get(&sp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    /// Render with species names, e.g. `A1 + 2 A2`; the zero complex is `0`.
    pub fn display<'a>(&'a self, species: &'a [String]) -> ComplexDisplay<'a> {
        ComplexDisplay { complex: self, species }
    }
}

/// Helper for rendering complexes with species names.
pub struct ComplexDisplay<'a> {
    complex: &'a Complex,
    species: &'a [String],
}

impl fmt::Display for ComplexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complex.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (sp, c) in self.complex.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", self.species[sp])?;
            } else {
                write!(f, "{} {}", c, self.species[sp])?;
            }
        }
        Ok(())
    }
}

/// A rate constant or kinetic order: either a named symbol to be bound
/// later, or a numeric literal fixed in the model text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymExpr {
    Sym(String),
    Num(Rat),
}

impl SymExpr {
    /// Resolve against bindings.
    pub fn value(&self, bindings: &Bindings) -> Result<Rat> {
        match self {
            SymExpr::Num(v) => Ok(v.clone()),
            SymExpr::Sym(name) => bindings
                .get(name)
                .cloned()
                .ok_or_else(|| CrnError::Unbound(name.clone())),
        }
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymExpr::Sym(s) => write!(f, "{s}"),
            SymExpr::Num(v) => write!(f, "{v}"),
        }
    }
}

/// A labeled reaction between two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    pub label: String,
    pub reactant: Complex,
    pub product: Complex,
    pub rate: SymExpr,
    /// Explicit kinetic orders (species index → order); species not listed
    /// default to their reactant stoichiometric coefficient.
    pub orders: BTreeMap<usize, SymExpr>,
}

/// Numeric values for rate and order symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    map: BTreeMap<String, Rat>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    /// Parse `name=value` pairs separated by whitespace and/or commas,
    /// e.g. `p1=3/2 q1=1, k1=0.5`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = Bindings::new();
        for tok in text.split([' ', '\t', ',']).filter(|t| !t.is_empty()) {
            let (name, value) = tok.split_once('=').ok_or_else(|| {
                CrnError::Invalid(format!("binding `{tok}` is not of the form name=value"))
            })?;
            let name = name.trim();
            if name.is_empty() {
                return Err(CrnError::Invalid(format!("empty name in binding `{tok}`")));
            }
            b.set(name, crate::exact::parse_rat(value)?);
        }
        Ok(b)
    }

    pub fn set(&mut self, name: &str, value: Rat) {
        self.map.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rat> {
        self.map.get(name)
    }

    /// Later bindings override earlier ones.
    pub fn merged_with(&self, other: &Bindings) -> Bindings {
        let mut map = self.map.clone();
        for (k, v) in &other.map {
            map.insert(k.clone(), v.clone());
        }
        Bindings { map }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A chemical reaction network with power-law kinetics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    pub name: String,
    pub species: Vec<String>,
    pub reactions: Vec<Reaction>,
    /// Distinct complexes in order of first appearance (reactant before
    /// product, reactions in file order).
    complexes: Vec<Complex>,
    /// Complex index of each reaction's reactant / product.
    reactant_ix: Vec<usize>,
    product_ix: Vec<usize>,
}

impl Network {
    /// Assemble and validate a network.
    pub fn from_parts(
        name: String,
        species: Vec<String>,
        reactions: Vec<Reaction>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &species {
            if !seen.insert(s.clone()) {
                return Err(CrnError::Invalid(format!("duplicate species `{s}`")));
            }
        }
        let mut labels = BTreeSet::new();
        for r in &reactions {
            if !labels.insert(r.label.clone()) {
                return Err(CrnError::Invalid(format!(
                    "duplicate reaction label `{}`",
                    r.label
                )));
            }
            if r.reactant == r.product {
                return Err(CrnError::Invalid(format!(
                    "reaction `{}` has identical reactant and product complexes",
                    r.label
                )));
            }
        }
        let mut complexes: Vec<Complex> = Vec::new();
        let index_of = |c: &Complex, complexes: &mut Vec<Complex>| -> usize {
            if let Some(i) = complexes.iter().position(|x| x == c) {
                i
            } else {
                complexes.push(c.clone());
                complexes.len() - 1
            }
        };
        let mut reactant_ix = Vec::with_capacity(reactions.len());
        let mut product_ix = Vec::with_capacity(reactions.len());
        for r in &reactions {
            reactant_ix.push(index_of(&r.reactant, &mut complexes));
            product_ix.push(index_of(&r.product, &mut complexes));
        }
        Ok(Network {
            name,
            species,
            reactions,
            complexes,
            reactant_ix,
            product_ix,
        })
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    pub fn num_complexes(&self) -> usize {
        self.complexes.len()
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn reactant_complex_index(&self, reaction: usize) -> usize {
        self.reactant_ix[reaction]
    }

    pub fn product_complex_index(&self, reaction: usize) -> usize {
        self.product_ix[reaction]
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    pub fn reaction_index(&self, label: &str) -> Option<usize> {
        self.reactions.iter().position(|r| r.label == label)
    }

    /// Molecularity matrix `Y` (species × complexes).
    pub fn molecularity_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.num_species(), self.num_complexes(), |i, j| {
            self.complexes[j].coeff(i)
        })
    }

    /// Incidence matrix `I_a` (complexes × reactions): −1 at the reactant
    /// complex, +1 at the product complex.
    pub fn incidence_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.num_complexes(), self.num_reactions());
        for (rix, _) in self.reactions.iter().enumerate() {
            m.set(self.reactant_ix[rix], rix, -Rat::one());
            m.set(self.product_ix[rix], rix, Rat::one());
        }
        m
    }

    /// Stoichiometric matrix `N = Y · I_a` (species × reactions).
    pub fn stoichiometric_matrix(&self) -> ExactMatrix {
        let n = self.molecularity_matrix().matmul(&self.incidence_matrix());
        debug_assert!({
            let direct = ExactMatrix::from_fn(self.num_species(), self.num_reactions(), |i, j| {
                self.reactions[j].product.coeff(i) - self.reactions[j].reactant.coeff(i)
            });
            direct == n
        });
        n
    }

    /// Reaction vector (product − reactant) of one reaction.
    pub fn reaction_vector(&self, reaction: usize) -> Vec<Rat> {
        let r = &self.reactions[reaction];
        (0..self.num_species())
            .map(|i| r.product.coeff(i) - r.reactant.coeff(i))
            .collect()
    }

    /// Kinetic-order row of one reaction: explicit orders where given,
    /// reactant stoichiometry elsewhere.
    pub fn kinetic_order_row(&self, reaction: usize, bindings: &Bindings) -> Result<Vec<Rat>> {
        let r = &self.reactions[reaction];
        (0..self.num_species())
            .map(|sp| match r.orders.get(&sp) {
                Some(expr) => expr.value(bindings),
                None => Ok(r.reactant.coeff(sp)),
            })
            .collect()
    }

    /// Kinetic-order matrix `F` (reactions × species).
    pub fn kinetic_order_matrix(&self, bindings: &Bindings) -> Result<ExactMatrix> {
        let mut rows = Vec::with_capacity(self.num_reactions());
        for i in 0..self.num_reactions() {
            rows.push(self.kinetic_order_row(i, bindings)?);
        }
        Ok(ExactMatrix::from_rows(rows))
    }

    /// Numeric rate constants in reaction order.
    pub fn numeric_rates(&self, bindings: &Bindings) -> Result<Vec<Rat>> {
        self.reactions.iter().map(|r| r.rate.value(bindings)).collect()
    }

    /// Species appearing in a reaction's stoichiometry or explicit orders.
    pub fn reaction_support(&self, reaction: usize) -> BTreeSet<usize> {
        let r = &self.reactions[reaction];
        let mut s: BTreeSet<usize> = r.reactant.support().collect();
        s.extend(r.product.support());
        s.extend(r.orders.keys().copied());
        s
    }

    /// The subnetwork consisting of the given reactions (by label), keeping
    /// the full species list so vector spaces stay comparable.
    pub fn subnetwork(&self, labels: &[String]) -> Result<Network> {
        let mut reactions = Vec::new();
        for l in labels {
            let ix = self
                .reaction_index(l)
                .ok_or_else(|| CrnError::Invalid(format!("unknown reaction label `{l}`")))?;
            reactions.push(self.reactions[ix].clone());
        }
        Network::from_parts(
            format!("{}::sub", self.name),
            self.species.clone(),
            reactions,
        )
    }

    /// Reversible-pair structure: for each reaction, the index of its
    /// antiparallel partner if one exists.
    pub fn reverse_partner(&self) -> Vec<Option<usize>> {
        let r = self.num_reactions();
        let mut out = vec![None; r];
        for i in 0..r {
            for j in 0..r {
                if i != j
                    && self.reactant_ix[i] == self.product_ix[j]
                    && self.product_ix[i] == self.reactant_ix[j]
                {
                    out[i] = Some(j);
                    break;
                }
            }
        }
        out
    }
}
