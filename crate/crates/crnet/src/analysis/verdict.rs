//! Combined multistationarity verdict per kinetic-order regime.

use super::injectivity::{InjectivityReport, InjectivityVerdict};
use super::regime::{Regime, RegimeClass};
use super::subspace::SignCondition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// At most one positive steady state in every stoichiometric class.
    Monostationary,
    /// Some stoichiometric class holds at least two positive steady states.
    Multistationary,
    /// The implemented criteria are silent.
    Inconclusive,
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Monostationary => write!(f, "monostationary"),
            Multiplicity::Multistationary => write!(f, "multistationary"),
            Multiplicity::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonoVerdict {
    pub class: RegimeClass,
    pub multiplicity: Multiplicity,
    /// The determinant test was conclusive.
    pub injective: bool,
    /// Common sign pattern of S and (S̃)⊥, when one exists.
    pub sign_witness: Option<Vec<i8>>,
    /// What existence looks like across stoichiometric classes.
    pub existence: String,
    pub reason: String,
}

/// Fold the regime classification, injectivity test, and sign-vector test
/// into one verdict. The per-regime structure of the class equation supplies
/// the uniqueness argument where the determinant test is silent.
pub fn monostationarity_verdict(
    regime: &Regime,
    inj: &InjectivityReport,
    sign: &SignCondition,
) -> MonoVerdict {
    let injective = matches!(
        inj.verdict,
        InjectivityVerdict::InjectivePositive | InjectivityVerdict::InjectiveNegative
    );
    let (multiplicity, existence, reason) = match regime.class {
        RegimeClass::Positive => (
            Multiplicity::Multistationary,
            "no positive steady state below the class-equation minimum, two above it".into(),
            match &sign.witness {
                Some(w) => format!(
                    "sign pattern ({}) is realized by both the stoichiometric subspace and \
                     the complement of the kinetic-flux subspace",
                    w.iter()
                        .map(|s| match s {
                            1 => "+",
                            -1 => "-",
                            _ => "0",
                        })
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => "class equation admits two sign changes".into(),
            },
        ),
        RegimeClass::Negative => (
            Multiplicity::Monostationary,
            "exactly one positive steady state in every stoichiometric class".into(),
            if injective {
                format!("determinant test: {}", inj.verdict)
            } else {
                "class equation has one sign change and diverges at both ends".into()
            },
        ),
        RegimeClass::PNull | RegimeClass::QNull => (
            Multiplicity::Monostationary,
            "one positive steady state when the conserved total exceeds the sum of the \
             robust values, none otherwise"
                .into(),
            if injective {
                format!("determinant test: {}", inj.verdict)
            } else {
                "class equation has at most one sign change".into()
            },
        ),
        RegimeClass::Degenerate => (
            Multiplicity::Inconclusive,
            "positive steady states exist only if k1 = k2 (the two power-law rates \
             share one monomial)"
                .into(),
            "degenerate orders: p1 = p2 and q1 = q2".into(),
        ),
    };
    MonoVerdict {
        class: regime.class,
        multiplicity,
        injective,
        sign_witness: sign.witness.clone(),
        existence,
        reason,
    }
}
