//! Built-in carbon-cycle models and named parameter presets.
//!
//! Three related networks are shipped:
//!
//! - `doc` — carbon cycle with direct ocean capture: a reversible power-law
//!   pair on land/ocean carbon plus a mass-action capture loop through
//!   atmosphere, vegetation-soil, and ocean sediment.
//! - `dac` — carbon cycle with direct air capture: same power-law pair, with
//!   the capture loop routed through a geological storage pool.
//! - `doc-dac` — the integrated model combining both capture pathways.
//!
//! Species naming: `A1` land carbon, `A2` ocean carbon, `A3` atmospheric
//! carbon, `A4` vegetation/soil carbon, `A5` geological storage, `A17` ocean
//! sediment storage.

use crate::error::{CrnError, Result};
use crate::exact::{rat_frac, Rat};
use crate::network::{parse_network, Bindings, Network};

const DOC_DSL: &str = "\
# Carbon cycle with direct ocean capture
network doc
species A1 A2 A3 A4 A17
reaction R1: A1 + 2 A2 -> 2 A1 + A2 rate k1 orders A1=p1 A2=q1
reaction R2: 2 A1 + A2 -> A1 + 2 A2 rate k2 orders A1=p2 A2=q2
reaction R3: A2 -> A3 rate k3
reaction R4: A3 -> A2 rate k4
reaction R5: A4 -> A2 rate k5
reaction R6: A17 -> A4 rate k6
reaction R7: A3 -> A17 rate k7
";

const DAC_DSL: &str = "\
# Carbon cycle with direct air capture
network dac
species A1 A2 A3 A4 A5
reaction R1: A1 + 2 A2 -> 2 A1 + A2 rate k1 orders A1=p1 A2=q1
reaction R2: 2 A1 + A2 -> A1 + 2 A2 rate k2 orders A1=p2 A2=q2
reaction R3: A2 -> A3 rate k3
reaction R4: A3 -> A2 rate k4
reaction R5: A4 -> A2 rate k5
reaction R6: A2 -> A5 rate k6
reaction R7: A5 -> A4 rate k7
";

const DOC_DAC_DSL: &str = "\
# Integrated carbon cycle with both capture pathways
network doc-dac
species A1 A2 A3 A4 A5 A17
reaction R1: A1 + 2 A2 -> 2 A1 + A2 rate k1 orders A1=p1 A2=q1
reaction R2: 2 A1 + A2 -> A1 + 2 A2 rate k2 orders A1=p2 A2=q2
reaction R3: A2 -> A3 rate k3
reaction R4: A3 -> A2 rate k4
reaction R5: A4 -> A2 rate k5
reaction R6: A17 -> A4 rate k6
reaction R7: A3 -> A17 rate k7
reaction R8: A2 -> A5 rate k8
reaction R9: A5 -> A4 rate k9
";

/// A built-in model: DSL text plus the hardcoded choices that make the
/// steady-state pipeline deterministic.
#[derive(Clone, Copy, Debug)]
pub struct BuiltinModel {
    pub id: &'static str,
    pub title: &'static str,
    pub dsl: &'static str,
    /// Translation shifts per reaction label (absent labels shift by zero):
    /// signed species combinations added to both sides of the reaction.
    pub shifts: &'static [(&'static str, &'static [(&'static str, i64)])],
    /// Species whose steady-state value is exposed as the free parameter of
    /// the mass-action part's parametrization.
    pub designated_free: &'static [&'static str],
    /// Default rate constants (`name`, numerator, denominator).
    pub default_rates: &'static [(&'static str, i64, i64)],
}

const POWER_PAIR_SHIFT: &[(&str, i64)] = &[("A1", -1), ("A2", -1)];

const DOC_MODEL: BuiltinModel = BuiltinModel {
    id: "doc",
    title: "carbon cycle with direct ocean capture",
    dsl: DOC_DSL,
    shifts: &[("R1", POWER_PAIR_SHIFT), ("R2", POWER_PAIR_SHIFT)],
    designated_free: &["A4"],
    default_rates: &[
        ("k1", 1, 2),
        ("k2", 4, 5),
        ("k3", 1, 2),
        ("k4", 7, 10),
        ("k5", 2, 5),
        ("k6", 3, 5),
        ("k7", 1, 5),
    ],
};

const DAC_MODEL: BuiltinModel = BuiltinModel {
    id: "dac",
    title: "carbon cycle with direct air capture",
    dsl: DAC_DSL,
    shifts: &[("R1", POWER_PAIR_SHIFT), ("R2", POWER_PAIR_SHIFT)],
    designated_free: &["A4"],
    default_rates: &[
        ("k1", 1, 2),
        ("k2", 4, 5),
        ("k3", 1, 2),
        ("k4", 7, 10),
        ("k5", 2, 5),
        ("k6", 3, 5),
        ("k7", 1, 5),
    ],
};

// k8/k9 are plumbing defaults for the integrated model (no published
// reference values exist for the cross-pathway rates).
const DOC_DAC_MODEL: BuiltinModel = BuiltinModel {
    id: "doc-dac",
    title: "integrated carbon cycle with both capture pathways",
    dsl: DOC_DAC_DSL,
    shifts: &[("R1", POWER_PAIR_SHIFT), ("R2", POWER_PAIR_SHIFT)],
    designated_free: &["A4"],
    default_rates: &[
        ("k1", 1, 2),
        ("k2", 4, 5),
        ("k3", 1, 2),
        ("k4", 7, 10),
        ("k5", 2, 5),
        ("k6", 3, 5),
        ("k7", 1, 5),
        ("k8", 3, 10),
        ("k9", 9, 20),
    ],
};

/// Kinetic-order quadruples (p1, q1, p2, q2) selectable by name.
pub const ORDER_PRESETS: &[(&str, [(i64, i64); 4])] = &[
    // One representative per kinetic regime of the power-law pair.
    ("positive", [(3, 2), (1, 1), (5, 2), (3, 1)]),
    ("negative", [(-1, 1), (3, 2), (1, 1), (-3, 2)]),
    ("p-null", [(1, 1), (1, 2), (1, 1), (5, 2)]),
    ("q-null", [(3, 1), (3, 2), (1, 1), (3, 2)]),
    // Quadruples used by the robustness (ACR) experiments.
    ("acr-generic", [(7, 10), (3, 2), (6, 5), (1, 2)]),
    ("acr-p-null", [(1, 1), (3, 2), (1, 1), (1, 2)]),
    ("acr-q-null", [(1, 2), (3, 2), (7, 5), (3, 2)]),
];

/// Identifiers of the built-in models.
pub fn builtin_ids() -> &'static [&'static str] {
    &["doc", "dac", "doc-dac"]
}

/// Look up a built-in model by id.
pub fn builtin(id: &str) -> Option<&'static BuiltinModel> {
    match id {
        "doc" => Some(&DOC_MODEL),
        "dac" => Some(&DAC_MODEL),
        "doc-dac" => Some(&DOC_DAC_MODEL),
        _ => None,
    }
}

/// Look up a built-in model, converting failure into an input error.
pub fn builtin_or_err(id: &str) -> Result<&'static BuiltinModel> {
    builtin(id).ok_or_else(|| {
        CrnError::Invalid(format!(
            "unknown builtin `{id}` (available: {})",
            builtin_ids().join(", ")
        ))
    })
}

impl BuiltinModel {
    /// Parse the model text (always succeeds for built-ins).
    pub fn network(&self) -> Network {
        parse_network(self.dsl).expect("builtin model text is valid")
    }

    /// Default rate-constant bindings.
    pub fn default_rate_bindings(&self) -> Bindings {
        let mut b = Bindings::new();
        for (name, num, den) in self.default_rates {
            b.set(name, rat_frac(*num, *den));
        }
        b
    }

    /// Bindings for a named preset: `default-rates` or an order preset.
    pub fn preset_bindings(&self, name: &str) -> Result<Bindings> {
        if name == "default-rates" {
            return Ok(self.default_rate_bindings());
        }
        order_preset(name).ok_or_else(|| {
            CrnError::Invalid(format!(
                "unknown preset `{name}` (available: default-rates, {})",
                ORDER_PRESETS
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })
    }

    /// Translation shift for a reaction label (zero if none is registered).
    pub fn shift_for(&self, label: &str) -> Vec<(&'static str, Rat)> {
        self.shifts
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, combo)| {
                combo
                    .iter()
                    .map(|(sp, c)| (*sp, rat_frac(*c, 1)))
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Bindings (p1, q1, p2, q2) for a named order preset.
pub fn order_preset(name: &str) -> Option<Bindings> {
    ORDER_PRESETS.iter().find(|(n, _)| *n == name).map(|(_, vals)| {
        let mut b = Bindings::new();
        for (sym, (num, den)) in ["p1", "q1", "p2", "q2"].iter().zip(vals) {
            b.set(sym, rat_frac(*num, *den));
        }
        b
    })
}
