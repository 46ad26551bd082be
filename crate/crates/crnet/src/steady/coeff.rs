//! Multiplicative coefficients for monomial parametrizations.
//!
//! A [`Coefficient`] is a positive product `scalar · Π atomᵉ` where atoms are
//! rate symbols, canonical polynomials in rate symbols (e.g. `k4+k7` arising
//! from tree constants), or rational bases kept symbolic under fractional
//! exponents. The group operations (multiply, divide, rational power) are
//! exact; evaluation is exact when every power has an exact rational value,
//! with a float fallback otherwise.

use crate::error::{CrnError, Result};
use crate::exact::{rat_pow, rat_to_f64, Rat};
use crate::network::Bindings;
use crate::poly::{Poly, VarTable};
use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial over symbol names in a canonical, table-independent form:
/// integer coefficients with positive content-free leading term, terms sorted
/// by monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonPoly {
    /// (sorted monomial `[(symbol, exponent)]`, integer coefficient)
    pub terms: Vec<(Vec<(String, u32)>, BigInt)>,
}

impl CanonPoly {
    /// Canonicalize `poly` over `vars`; also returns the extracted positive
    /// rational content so `poly = content · canon`.
    pub fn extract(poly: &Poly, vars: &VarTable) -> (Rat, CanonPoly) {
        assert!(!poly.is_zero(), "cannot canonicalize the zero polynomial");
        let mut terms: Vec<(Vec<(String, u32)>, Rat)> = poly
            .terms()
            .map(|(exp, c)| {
                let mono: Vec<(String, u32)> = exp
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| (vars.name(i).to_string(), p))
                    .collect();
                (mono, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));

        let mut lcm = BigInt::one();
        for (_, c) in &terms {
            lcm = num::Integer::lcm(&lcm, c.denom());
        }
        let ints: Vec<BigInt> = terms
            .iter()
            .map(|(_, c)| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = num::Integer::gcd(&gcd, v);
        }
        let sign = if ints[0].is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let divisor = &gcd * &sign;
        let content = Rat::new(divisor.clone(), lcm);
        let canon = CanonPoly {
            terms: terms
                .into_iter()
                .zip(ints)
                .map(|((mono, _), i)| (mono, &i / &divisor))
                .collect(),
        };
        (content, canon)
    }

    pub fn eval_f64(&self, bindings: &Bindings) -> Result<f64> {
        let mut acc = 0.0;
        for (mono, c) in &self.terms {
            let mut t = c.to_f64().ok_or_else(|| {
                CrnError::Numerical("polynomial coefficient out of f64 range".into())
            })?;
            for (name, p) in mono {
                let v = bindings
                    .get(name)
                    .ok_or_else(|| CrnError::Unbound(name.clone()))?;
                t *= rat_to_f64(v).powi(*p as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_exact(&self, bindings: &Bindings) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (mono, c) in &self.terms {
            let mut t = Rat::from_integer(c.clone());
            for (name, p) in mono {
                let v = bindings
                    .get(name)
                    .ok_or_else(|| CrnError::Unbound(name.clone()))?;
                t *= num::pow::pow(v.clone(), *p as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl fmt::Display for CanonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || mono.is_empty() {
                factors.push(mag.to_string());
            }
            for (name, p) in mono {
                if *p == 1 {
                    factors.push(name.clone());
                } else {
                    factors.push(format!("{name}^{p}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Base of a coefficient factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// A rational base kept symbolic under a fractional exponent.
    Num(Rat),
    /// A rate symbol.
    Sym(String),
    /// A canonical polynomial in rate symbols.
    Poly(CanonPoly),
}

impl Atom {
    fn eval_f64(&self, bindings: &Bindings) -> Result<f64> {
        match self {
            Atom::Num(v) => Ok(rat_to_f64(v)),
            Atom::Sym(name) => bindings
                .get(name)
                .map(rat_to_f64)
                .ok_or_else(|| CrnError::Unbound(name.clone())),
            Atom::Poly(p) => p.eval_f64(bindings),
        }
    }

    fn eval_exact(&self, bindings: &Bindings) -> Result<Rat> {
        match self {
            Atom::Num(v) => Ok(v.clone()),
            Atom::Sym(name) => bindings
                .get(name)
                .cloned()
                .ok_or_else(|| CrnError::Unbound(name.clone())),
            Atom::Poly(p) => p.eval_exact(bindings),
        }
    }

    /// Rendering inside a product: polynomials and rationals that are not
    /// plain nonnegative integers get parentheses.
    fn product_str(&self) -> String {
        match self {
            Atom::Num(v) => {
                if v.is_integer() && !v.is_negative() {
                    v.to_string()
                } else {
                    format!("({v})")
                }
            }
            Atom::Sym(name) => name.clone(),
            Atom::Poly(p) => format!("({p})"),
        }
    }
}

/// Positive multiplicative coefficient `scalar · Π atom^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    scalar: Rat,
    factors: BTreeMap<Atom, Rat>,
}

impl Coefficient {
    pub fn one() -> Self {
        Coefficient {
            scalar: Rat::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_scalar(v: Rat) -> Self {
        assert!(v.is_positive(), "coefficients must be positive");
        Coefficient {
            scalar: v,
            factors: BTreeMap::new(),
        }
    }

    pub fn from_sym(name: &str) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert(Atom::Sym(name.to_string()), Rat::one());
        Coefficient {
            scalar: Rat::one(),
            factors,
        }
    }

    /// Coefficient from a polynomial: extracts rational content and
    /// per-symbol monomial factors; any genuinely multi-term remainder
    /// becomes a canonical polynomial atom.
    pub fn from_poly(poly: &Poly, vars: &VarTable) -> Self {
        assert!(!poly.is_zero(), "zero polynomial has no coefficient form");
        // Extract the per-variable minimum exponent (monomial content).
        let nv = poly.nvars();
        let mut min_exp = vec![u32::MAX; nv];
        for (exp, _) in poly.terms() {
            for (i, &p) in exp.iter().enumerate() {
                min_exp[i] = min_exp[i].min(p);
            }
        }
        let mut reduced = Poly::zero(nv);
        for (exp, c) in poly.terms() {
            let e: Vec<u32> = exp.iter().zip(&min_exp).map(|(p, m)| p - m).collect();
            let mono = {
                let mut t = Poly::constant(nv, c.clone());
                for (i, &p) in e.iter().enumerate() {
                    for _ in 0..p {
                        t = t.mul(&Poly::var(nv, i));
                    }
                }
                t
            };
            reduced = reduced.add(&mono);
        }
        let (content, canon) = CanonPoly::extract(&reduced, vars);
        let mut out = Coefficient::from_scalar(content);
        for (i, &p) in min_exp.iter().enumerate() {
            if p > 0 {
                out.insert(Atom::Sym(vars.name(i).to_string()), Rat::from_integer(p.into()));
            }
        }
        if canon.terms.len() > 1 {
            out.insert(Atom::Poly(canon), Rat::one());
        } else {
            // Single-term remainder: fold it into scalar and symbols.
            let (mono, c) = &canon.terms[0];
            out.scalar *= Rat::from_integer(c.clone());
            for (name, p) in mono {
                out.insert(Atom::Sym(name.clone()), Rat::from_integer((*p).into()));
            }
        }
        out
    }

    fn insert(&mut self, atom: Atom, exp: Rat) {
        if exp.is_zero() {
            return;
        }
        match self.factors.entry(atom) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += exp;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(exp);
            }
        }
    }

    /// Fold numeric atoms with integer exponents back into the scalar.
    fn normalize(&mut self) {
        let foldable: Vec<(Atom, Rat)> = self
            .factors
            .iter()
            .filter(|(a, e)| matches!(a, Atom::Num(_)) && e.is_integer())
            .map(|(a, e)| (a.clone(), e.clone()))
            .collect();
        for (a, e) in foldable {
            if let Atom::Num(base) = &a {
                self.scalar *= rat_pow(base, &e).expect("integer power is exact");
            }
            self.factors.remove(&a);
        }
    }

    pub fn mul(&self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out.scalar *= &rhs.scalar;
        for (a, e) in &rhs.factors {
            out.insert(a.clone(), e.clone());
        }
        out.normalize();
        out
    }

    pub fn div(&self, rhs: &Coefficient) -> Coefficient {
        self.mul(&rhs.pow(&-Rat::one()))
    }

    /// Raise to a rational power. A non-unit scalar under a fractional
    /// exponent becomes a numeric atom unless its exact root exists.
    pub fn pow(&self, exp: &Rat) -> Coefficient {
        if exp.is_zero() {
            return Coefficient::one();
        }
        let mut out = Coefficient::one();
        for (a, e) in &self.factors {
            out.insert(a.clone(), e * exp);
        }
        if !self.scalar.is_one() {
            match rat_pow(&self.scalar, exp) {
                Ok(v) => out.scalar = v,
                Err(_) => out.insert(Atom::Num(self.scalar.clone()), exp.clone()),
            }
        }
        out.normalize();
        out
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.factors.is_empty()
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Atom, &Rat)> {
        self.factors.iter()
    }

    pub fn eval_f64(&self, bindings: &Bindings) -> Result<f64> {
        let mut acc = rat_to_f64(&self.scalar);
        for (a, e) in &self.factors {
            let base = a.eval_f64(bindings)?;
            if base <= 0.0 && !e.is_integer() {
                return Err(CrnError::Numerical(format!(
                    "nonpositive base {base} under fractional exponent"
                )));
            }
            acc *= base.powf(rat_to_f64(e));
        }
        if !acc.is_finite() {
            return Err(CrnError::Numerical("coefficient overflow".into()));
        }
        Ok(acc)
    }

    /// Exact evaluation; errs when a power has no exact rational value.
    pub fn eval_exact(&self, bindings: &Bindings) -> Result<Rat> {
        let mut acc = self.scalar.clone();
        for (a, e) in &self.factors {
            let base = a.eval_exact(bindings)?;
            acc *= rat_pow(&base, e)?;
        }
        Ok(acc)
    }
}

fn exp_str(e: &Rat) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        if !self.scalar.is_one() {
            if self.scalar.is_integer() {
                num.push(self.scalar.to_string());
            } else if self.scalar.numer().is_one() {
                den.push(self.scalar.denom().to_string());
            } else {
                num.push(self.scalar.numer().to_string());
                den.push(self.scalar.denom().to_string());
            }
        }
        for (a, e) in &self.factors {
            if e.is_negative() {
                let mag = -e.clone();
                if mag.is_one() {
                    den.push(a.product_str());
                } else {
                    den.push(format!("{}^{}", a.product_str(), exp_str(&mag)));
                }
            } else if e.is_one() {
                num.push(a.product_str());
            } else {
                num.push(format!("{}^{}", a.product_str(), exp_str(e)));
            }
        }
        let num_str = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        if den.is_empty() {
            write!(f, "{num_str}")
        } else if den.len() == 1 && !den[0].contains('*') {
            write!(f, "{num_str}/{}", den[0])
        } else {
            write!(f, "{num_str}/({})", den.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_frac, rat_int};

    fn bind(pairs: &[(&str, (i64, i64))]) -> Bindings {
        let mut b = Bindings::new();
        for (k, (n, d)) in pairs {
            b.set(k, rat_frac(*n, *d));
        }
        b
    }

    #[test]
    fn group_operations() {
        let k1 = Coefficient::from_sym("k1");
        let k2 = Coefficient::from_sym("k2");
        let ratio = k1.div(&k2);
        let sqrt = ratio.pow(&rat_frac(1, 2));
        let back = sqrt.pow(&rat_int(2));
        assert_eq!(back, ratio);
        assert!(ratio.mul(&k2.div(&k1)).is_one());
    }

    #[test]
    fn scalar_fractional_powers_stay_exact() {
        // (9/4)^(1/2) has an exact root.
        let c = Coefficient::from_scalar(rat_frac(9, 4)).pow(&rat_frac(1, 2));
        assert_eq!(c, Coefficient::from_scalar(rat_frac(3, 2)));
        // (5/8)^(1/2) does not: kept as a numeric atom, exact square returns.
        let c2 = Coefficient::from_scalar(rat_frac(5, 8)).pow(&rat_frac(1, 2));
        assert!(!c2.factors.is_empty());
        assert_eq!(c2.pow(&rat_int(2)), Coefficient::from_scalar(rat_frac(5, 8)));
        let v = c2.eval_f64(&Bindings::new()).unwrap();
        assert!((v - (0.625f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn from_poly_extracts_content() {
        // 2*k3*k5*(k4 + k7)  given as  2*k3*k5*k4 + 2*k3*k5*k7.
        let mut vars = VarTable::new();
        let k3 = vars.intern("k3");
        let k4 = vars.intern("k4");
        let k5 = vars.intern("k5");
        let k7 = vars.intern("k7");
        let nv = 4;
        let term = |a: usize, b: usize, c: usize| {
            Poly::var(nv, a).mul(&Poly::var(nv, b)).mul(&Poly::var(nv, c))
        };
        let poly = term(k3, k5, k4).add(&term(k3, k5, k7)).scale(&rat_int(2));
        let c = Coefficient::from_poly(&poly, &vars);
        assert_eq!(c.scalar(), &rat_int(2));
        let atoms: Vec<String> = c.factors().map(|(a, e)| format!("{}^{e}", a.product_str())).collect();
        assert_eq!(atoms, vec!["k3^1", "k5^1", "(k4 + k7)^1"]);
        // Evaluation agrees with direct substitution.
        let b = bind(&[("k3", (1, 2)), ("k4", (7, 10)), ("k5", (2, 5)), ("k7", (1, 5))]);
        assert_eq!(
            c.eval_exact(&b).unwrap(),
            rat_frac(2 * 1 * 2 * 9, 2 * 5 * 10) // 2 * 1/2 * 2/5 * 9/10
        );
    }

    #[test]
    fn poly_atoms_cancel() {
        let mut vars = VarTable::new();
        let k4 = vars.intern("k4");
        let k7 = vars.intern("k7");
        let sum = Poly::var(2, k4).add(&Poly::var(2, k7));
        let c = Coefficient::from_poly(&sum, &vars);
        assert!(c.mul(&c.pow(&-Rat::one())).is_one());
    }

    #[test]
    fn display_forms() {
        let mut vars = VarTable::new();
        let k4 = vars.intern("k4");
        let k7 = vars.intern("k7");
        let sum = Poly::var(2, k4).add(&Poly::var(2, k7));
        let denom = Coefficient::from_poly(&sum, &vars);
        let k3 = Coefficient::from_sym("k3");
        let c = k3.div(&denom);
        assert_eq!(c.to_string(), "k3/(k4 + k7)");
        let half = Coefficient::from_scalar(rat_frac(5, 8));
        assert_eq!(half.to_string(), "5/8");
        assert_eq!(Coefficient::one().to_string(), "1");
        let root = Coefficient::from_sym("k1")
            .div(&Coefficient::from_sym("k2"))
            .pow(&rat_frac(1, 2));
        assert_eq!(root.to_string(), "k1^(1/2)/k2^(1/2)");
    }
}
