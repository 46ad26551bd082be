//! Kinetic regime classification of the power-law pair.
//!
//! The two power-law reactions carry orders (p1, q1) and (p2, q2). The
//! difference ratios
//!
//! ```text
//! R = (p2 − p1)/(q2 − q1)    (defined when q1 ≠ q2)
//! Q = (q2 − q1)/(p2 − p1)    (defined when p1 ≠ p2)
//! ```
//!
//! split parameter space into five classes: Positive (R > 0), Negative
//! (R < 0), PNull (p1 = p2 with q1 ≠ q2, so R = 0), QNull (q1 = q2 with
//! p1 ≠ p2, so Q = 0), and Degenerate (both differences vanish).

use crate::error::{CrnError, Result};
use crate::exact::Rat;
use crate::network::Bindings;
use num::{Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeClass {
    Positive,
    Negative,
    PNull,
    QNull,
    Degenerate,
}

impl fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeClass::Positive => "positive",
            RegimeClass::Negative => "negative",
            RegimeClass::PNull => "P-null",
            RegimeClass::QNull => "Q-null",
            RegimeClass::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Classified kinetic orders with the difference ratios.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regime {
    pub p1: Rat,
    pub q1: Rat,
    pub p2: Rat,
    pub q2: Rat,
    /// (p2 − p1)/(q2 − q1); `None` when q1 = q2.
    pub r: Option<Rat>,
    /// (q2 − q1)/(p2 − p1); `None` when p1 = p2.
    pub q: Option<Rat>,
    pub class: RegimeClass,
}

impl Regime {
    pub fn p_diff(&self) -> Rat {
        &self.p1 - &self.p2
    }

    pub fn q_diff(&self) -> Rat {
        &self.q2 - &self.q1
    }
}

/// Classify bound kinetic orders. `bindings` must bind p1, q1, p2, q2.
pub fn classify_regime(bindings: &Bindings) -> Result<Regime> {
    let get = |name: &str| -> Result<Rat> {
        bindings
            .get(name)
            .cloned()
            .ok_or_else(|| CrnError::Unbound(format!("kinetic order `{name}` is unbound")))
    };
    let p1 = get("p1")?;
    let q1 = get("q1")?;
    let p2 = get("p2")?;
    let q2 = get("q2")?;

    let dp = &p2 - &p1;
    let dq = &q2 - &q1;
    let r = (!dq.is_zero()).then(|| &dp / &dq);
    let q = (!dp.is_zero()).then(|| &dq / &dp);

    let class = match (&r, &q) {
        (None, None) => RegimeClass::Degenerate,
        (Some(r), _) if r.is_zero() => RegimeClass::PNull,
        (_, Some(q)) if q.is_zero() => RegimeClass::QNull,
        (Some(r), _) if r.is_positive() => RegimeClass::Positive,
        _ => RegimeClass::Negative,
    };

    Ok(Regime {
        p1,
        q1,
        p2,
        q2,
        r,
        q,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;

    fn orders(p1: (i64, i64), q1: (i64, i64), p2: (i64, i64), q2: (i64, i64)) -> Bindings {
        let mut b = Bindings::new();
        b.set("p1", rat_frac(p1.0, p1.1));
        b.set("q1", rat_frac(q1.0, q1.1));
        b.set("p2", rat_frac(p2.0, p2.1));
        b.set("q2", rat_frac(q2.0, q2.1));
        b
    }

    #[test]
    fn classification_table() {
        let r = classify_regime(&orders((3, 2), (1, 1), (5, 2), (3, 1))).unwrap();
        assert_eq!(r.class, RegimeClass::Positive);
        assert_eq!(r.r, Some(rat_frac(1, 2)));

        let r = classify_regime(&orders((1, 1), (1, 2), (1, 1), (5, 2))).unwrap();
        assert_eq!(r.class, RegimeClass::PNull);
        assert_eq!(r.r, Some(rat_frac(0, 1)));
        assert_eq!(r.q, None);

        let r = classify_regime(&orders((3, 1), (3, 2), (1, 1), (3, 2))).unwrap();
        assert_eq!(r.class, RegimeClass::QNull);
        assert_eq!(r.q, Some(rat_frac(0, 1)));

        let r = classify_regime(&orders((-1, 1), (3, 2), (1, 1), (-3, 2))).unwrap();
        assert_eq!(r.class, RegimeClass::Negative);

        let r = classify_regime(&orders((1, 1), (1, 1), (1, 1), (1, 1))).unwrap();
        assert_eq!(r.class, RegimeClass::Degenerate);
    }

    #[test]
    fn ratios_are_reciprocal() {
        let r = classify_regime(&orders((3, 2), (1, 1), (5, 2), (3, 1))).unwrap();
        let (rr, qq) = (r.r.unwrap(), r.q.unwrap());
        assert_eq!(rr * qq, rat_frac(1, 1));
    }

    #[test]
    fn unbound_orders_error() {
        let mut b = Bindings::new();
        b.set("p1", rat_frac(1, 1));
        assert!(matches!(
            classify_regime(&b),
            Err(CrnError::Unbound(_))
        ));
    }
}
