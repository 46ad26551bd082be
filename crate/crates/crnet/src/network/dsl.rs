//! Text format for reaction networks.
//!
//! ```text
//! # comments run to end of line
//! network doc
//! species A1 A2 A3 A4 A17
//! reaction R1: A1 + 2 A2 -> 2 A1 + A2 rate k1 orders A1=p1 A2=q1
//! reaction R3: A2 -> A3 rate k3
//! ```
//!
//! Coefficients default to 1 and may be rationals (`3/2`) or decimals
//! (`1.5`), normalized exactly. `0` denotes the empty complex. Rates and
//! orders are symbols (bound later) or numeric literals.

use super::{Complex, Network, Reaction, SymExpr};
use crate::error::{CrnError, Result};
use crate::exact::parse_rat;
use std::collections::BTreeMap;

/// Parse a network from DSL text.
pub fn parse_network(text: &str) -> Result<Network> {
    let mut name: Option<String> = None;
    let mut species: Vec<String> = Vec::new();
    let mut reactions: Vec<Reaction> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| CrnError::Parse { line, msg };

        let (keyword, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match keyword {
            "network" => {
                if name.is_some() {
                    return Err(err("duplicate `network` line".into()));
                }
                if rest.is_empty() || rest.split_whitespace().count() != 1 {
                    return Err(err("expected `network <name>`".into()));
                }
                name = Some(rest.to_string());
            }
            "species" => {
                if rest.is_empty() {
                    return Err(err("`species` line lists no species".into()));
                }
                for s in rest.split_whitespace() {
                    if !is_identifier(s) {
                        return Err(err(format!("invalid species name `{s}`")));
                    }
                    if species.iter().any(|x| x == s) {
                        return Err(err(format!("duplicate species `{s}`")));
                    }
                    species.push(s.to_string());
                }
            }
            "reaction" => {
                let reaction = parse_reaction(rest, &species, line)?;
                if reactions.iter().any(|r| r.label == reaction.label) {
                    return Err(err(format!("duplicate reaction label `{}`", reaction.label)));
                }
                reactions.push(reaction);
            }
            other => {
                return Err(err(format!(
                    "unknown keyword `{other}` (expected network/species/reaction)"
                )));
            }
        }
    }

    let name = name.ok_or(CrnError::Parse {
        line: 1,
        msg: "missing `network <name>` line".into(),
    })?;
    if species.is_empty() {
        return Err(CrnError::Parse {
            line: 1,
            msg: "no species declared".into(),
        });
    }
    Network::from_parts(name, species, reactions).map_err(|e| match e {
        CrnError::Invalid(msg) => CrnError::Parse { line: 1, msg },
        other => other,
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_reaction(rest: &str, species: &[String], line: usize) -> Result<Reaction> {
    let err = |msg: String| CrnError::Parse { line, msg };

    let (label, body) = rest
        .split_once(':')
        .ok_or_else(|| err("expected `reaction LABEL: ...`".into()))?;
    let label = label.trim();
    if !is_identifier(label) {
        return Err(err(format!("invalid reaction label `{label}`")));
    }

    // Split the body at the `rate` keyword; orders (optional) follow the
    // rate expression.
    let body = body.trim();
    let (arrow_part, after_rate) = split_keyword(body, "rate")
        .ok_or_else(|| err(format!("reaction `{label}` is missing a `rate` clause")))?;
    let (rate_text, orders_text) = match split_keyword(after_rate, "orders") {
        Some((r, o)) => (r.trim(), Some(o.trim())),
        None => (after_rate.trim(), None),
    };
    if rate_text.is_empty() || rate_text.split_whitespace().count() != 1 {
        return Err(err(format!("reaction `{label}`: expected a single rate expression")));
    }
    let rate = parse_sym_expr(rate_text)
        .ok_or_else(|| err(format!("reaction `{label}`: invalid rate expression `{rate_text}`")))?;
    if let SymExpr::Num(v) = &rate {
        if !num::Signed::is_positive(v) {
            return Err(err(format!(
                "reaction `{label}`: rate must be positive, got `{rate_text}`"
            )));
        }
    }

    let (lhs, rhs) = arrow_part
        .split_once("->")
        .ok_or_else(|| err(format!("reaction `{label}` is missing `->`")))?;
    let reactant = parse_complex(lhs.trim(), species, label, line)?;
    let product = parse_complex(rhs.trim(), species, label, line)?;

    let mut orders = BTreeMap::new();
    if let Some(text) = orders_text {
        if text.is_empty() {
            return Err(err(format!("reaction `{label}`: empty `orders` clause")));
        }
        for pair in text.split_whitespace() {
            let (sp_name, expr) = pair.split_once('=').ok_or_else(|| {
                err(format!(
                    "reaction `{label}`: order `{pair}` is not of the form SPECIES=EXPR"
                ))
            })?;
            let sp = species.iter().position(|s| s == sp_name).ok_or_else(|| {
                err(format!("unknown species `{sp_name}` in orders of `{label}`"))
            })?;
            let value = parse_sym_expr(expr).ok_or_else(|| {
                err(format!(
                    "reaction `{label}`: invalid order expression `{expr}` for `{sp_name}`"
                ))
            })?;
            if orders.insert(sp, value).is_some() {
                return Err(err(format!(
                    "reaction `{label}`: duplicate order for species `{sp_name}`"
                )));
            }
        }
    }

    Ok(Reaction {
        label: label.to_string(),
        reactant,
        product,
        rate,
        orders,
    })
}

/// Split `text` at the first whitespace-delimited occurrence of `keyword`.
fn split_keyword<'a>(text: &'a str, keyword: &str) -> Option<(&'a str, &'a str)> {
    let mut search = 0;
    while let Some(rel) = text[search..].find(keyword) {
        let pos = search + rel;
        let before_ok = pos == 0
            || text[..pos]
                .chars()
                .next_back()
                .is_some_and(char::is_whitespace);
        let after = pos + keyword.len();
        let after_ok = after == text.len()
            || text[after..].chars().next().is_some_and(char::is_whitespace);
        if before_ok && after_ok {
            return Some((&text[..pos], &text[after..]));
        }
        search = pos + keyword.len();
    }
    None
}

fn parse_sym_expr(text: &str) -> Option<SymExpr> {
    let t = text.trim();
    if let Ok(v) = parse_rat(t) {
        return Some(SymExpr::Num(v));
    }
    if is_identifier(t) {
        return Some(SymExpr::Sym(t.to_string()));
    }
    None
}

fn parse_complex(text: &str, species: &[String], label: &str, line: usize) -> Result<Complex> {
    let err = |msg: String| CrnError::Parse { line, msg };
    let text = text.trim();
    if text.is_empty() {
        return Err(err(format!("reaction `{label}`: empty complex")));
    }
    let mut complex = Complex::new();
    if text == "0" {
        return Ok(complex);
    }
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err(format!("reaction `{label}`: empty term in complex")));
        }
        let parts: Vec<&str> = term.split_whitespace().collect();
        let (coeff, sp_name) = match parts.as_slice() {
            [sp] => (num::One::one(), *sp),
            [c, sp] => (
                parse_rat(c).map_err(|_| {
                    err(format!(
                        "reaction `{label}`: invalid coefficient `{c}` in complex"
                    ))
                })?,
                *sp,
            ),
            _ => {
                return Err(err(format!(
                    "reaction `{label}`: malformed term `{term}` in complex"
                )))
            }
        };
        if !num::Signed::is_positive(&coeff) {
            return Err(err(format!(
                "reaction `{label}`: nonpositive coefficient in complex"
            )));
        }
        let sp = species
            .iter()
            .position(|s| s == sp_name)
            .ok_or_else(|| err(format!("unknown species `{sp_name}` at line {line}")))?;
        complex.add_species(sp, coeff);
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_frac, rat_int};

    const TINY: &str = "\
# toy model
network toy
species A B
reaction R1: A -> B rate k1
reaction R2: B -> A rate 0.5
";

    #[test]
    fn parses_minimal_network() {
        let net = parse_network(TINY).unwrap();
        assert_eq!(net.name, "toy");
        assert_eq!(net.species, vec!["A", "B"]);
        assert_eq!(net.num_reactions(), 2);
        assert_eq!(net.num_complexes(), 2);
        assert_eq!(net.reactions[0].rate, SymExpr::Sym("k1".into()));
        assert_eq!(net.reactions[1].rate, SymExpr::Num(rat_frac(1, 2)));
    }

    #[test]
    fn coefficients_and_orders() {
        let text = "\
network t
species A1 A2
reaction R1: A1 + 2 A2 -> 2 A1 + A2 rate k1 orders A1=p1 A2=1.5
";
        let net = parse_network(text).unwrap();
        let r = &net.reactions[0];
        assert_eq!(r.reactant.coeff(0), rat_int(1));
        assert_eq!(r.reactant.coeff(1), rat_int(2));
        assert_eq!(r.product.coeff(0), rat_int(2));
        assert_eq!(r.orders[&0], SymExpr::Sym("p1".into()));
        assert_eq!(r.orders[&1], SymExpr::Num(rat_frac(3, 2)));
    }

    #[test]
    fn rational_coefficients_normalize() {
        let text = "\
network t
species A B
reaction R1: 3/2 A -> 1.5 B rate k
";
        let net = parse_network(text).unwrap();
        assert_eq!(net.reactions[0].reactant.coeff(0), rat_frac(3, 2));
        assert_eq!(net.reactions[0].product.coeff(1), rat_frac(3, 2));
    }

    #[test]
    fn zero_complex_supported() {
        let text = "\
network t
species A
reaction R1: 0 -> A rate k_in
reaction R2: A -> 0 rate k_out
";
        let net = parse_network(text).unwrap();
        assert!(net.reactions[0].reactant.is_empty());
        assert!(net.reactions[1].product.is_empty());
        assert_eq!(net.num_complexes(), 2);
    }

    #[test]
    fn error_lines_are_reported() {
        let text = "network t\nspecies A\nreaction R1: A -> Bz rate k\n";
        match parse_network(text) {
            Err(CrnError::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("unknown species `Bz`"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }

        let dup = "network t\nspecies A A\n";
        match parse_network(dup) {
            Err(CrnError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }

        let noname = "species A\n";
        assert!(matches!(parse_network(noname), Err(CrnError::Parse { .. })));

        let selfloop = "network t\nspecies A\nreaction R1: A -> A rate k\n";
        assert!(parse_network(selfloop).is_err());

        let norate = "network t\nspecies A B\nreaction R1: A -> B\n";
        match parse_network(norate) {
            Err(CrnError::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("rate"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "
# leading comment
network t   # trailing comment

species A B
reaction R1: A -> B rate k1 # mass action
";
        let net = parse_network(text).unwrap();
        assert_eq!(net.num_reactions(), 1);
    }
}
