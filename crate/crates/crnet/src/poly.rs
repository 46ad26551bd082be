//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Used for spanning-tree constants (variables = rate symbols) and for the
//! symbolic injectivity determinant (variables = flux scalings `z_i` followed
//! by concentration scalings `k_j`). Exponents are nonnegative integers;
//! kinetic orders enter through the coefficients, never the exponents.

use crate::exact::{rat_to_f64, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Variable names for a polynomial ring (index = variable id).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new() -> Self {
        VarTable { names: Vec::new() }
    }

    /// Intern a name, returning its id.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Sparse polynomial: exponent vector (length = number of ring variables)
/// mapped to a nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    /// The monomial `var^1`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars);
        let mut exp = vec![0; nvars];
        exp[var] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exp, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms as (exponents, coefficient) in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(exp, ca * cb);
            }
        }
        out
    }

    /// Substitute numeric values for all variables (f64).
    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (v, &p) in values.iter().zip(e) {
                if p > 0 {
                    t *= v.powi(p as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute exact rational values for all variables.
    pub fn eval_rat(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &p) in values.iter().zip(e) {
                if p > 0 {
                    t *= num::pow::pow(v.clone(), p as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// True if every term has the same total degree over the variable range
    /// `vars` (used for homogeneity checks); vacuously true for zero.
    pub fn homogeneous_over(&self, vars: std::ops::Range<usize>) -> bool {
        let mut deg: Option<u32> = None;
        for e in self.terms.keys() {
            let d: u32 = e[vars.clone()].iter().sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return false,
                _ => {}
            }
        }
        true
    }

    /// Signs of the nonzero coefficients: (any positive, any negative).
    pub fn coefficient_signs(&self) -> (bool, bool) {
        let mut pos = false;
        let mut neg = false;
        for c in self.terms.values() {
            if c.is_positive() {
                pos = true;
            } else if c.is_negative() {
                neg = true;
            }
        }
        (pos, neg)
    }

    /// Render with the given variable names.
    pub fn display<'a>(&'a self, vars: &'a VarTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion with
/// memoization on (row count used, column mask). Suited to the small dense
/// symbolic matrices that arise here (≤ ~10 rows).
pub fn poly_det(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n <= 64, "column mask is a u64");
    let nvars = if n == 0 { 0 } else { rows[0][0].nvars() };
    if n == 0 {
        return Poly::one(nvars);
    }

    fn minor(
        rows: &[Vec<Poly>],
        row: usize,
        cols: u64,
        memo: &mut BTreeMap<u64, Poly>,
        nvars: usize,
    ) -> Poly {
        if cols == 0 {
            return Poly::one(nvars);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Poly::zero(nvars);
        let mut sign = Rat::one();
        for j in 0..rows.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &rows[row][j];
            if !entry.is_zero() {
                let sub = minor(rows, row + 1, cols & !(1 << j), memo, nvars);
                acc = acc.add(&entry.mul(&sub).scale(&sign));
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    // Memo key: the column mask determines the row (row = n - popcount).
    let mut memo = BTreeMap::new();
    minor(rows, 0, (1u64 << n) - 1, &mut memo, nvars)
}

/// Helper for rendering a polynomial with variable names.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a VarTable,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.poly.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&p| p == 0) {
                factors.push(mag.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                if p == 1 {
                    factors.push(self.vars.name(i).to_string());
                } else if p > 1 {
                    factors.push(format!("{}^{}", self.vars.name(i), p));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_frac, rat_int};

    #[test]
    fn arithmetic_and_cancellation() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        // (x + y)(x - y) = x^2 - y^2
        let p = x.add(&y).mul(&x.sub(&y));
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
        // x - x cancels to zero.
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn eval_matches_structure() {
        // 3/2 * x^2 * y - 2
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x
            .mul(&x)
            .mul(&y)
            .scale(&rat_frac(3, 2))
            .sub(&Poly::constant(2, rat_int(2)));
        assert_eq!(
            p.eval_rat(&[rat_int(2), rat_int(3)]),
            rat_int(16) // 3/2*4*3 - 2
        );
        assert!((p.eval_f64(&[2.0, 3.0]) - 16.0).abs() < 1e-12);
    }

    #[test]
    fn homogeneity_check() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let homo = x.mul(&x).add(&x.mul(&y));
        assert!(homo.homogeneous_over(0..2));
        let inhomo = x.add(&x.mul(&y));
        assert!(!inhomo.homogeneous_over(0..2));
        // Degree uniform in x alone:
        assert!(homo.homogeneous_over(0..1) == false); // x^2 vs x^1
    }

    #[test]
    fn determinant_small_cases() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        // |x 1; 1 y| = x*y - 1
        let m = vec![
            vec![x.clone(), Poly::one(2)],
            vec![Poly::one(2), y.clone()],
        ];
        assert_eq!(poly_det(&m), x.mul(&y).sub(&Poly::one(2)));
        // Singular rational matrix.
        let c = |v: i64| Poly::constant(2, rat_int(v));
        let sing = vec![
            vec![c(1), c(2), c(3)],
            vec![c(4), c(5), c(6)],
            vec![c(7), c(8), c(9)],
        ];
        assert!(poly_det(&sing).is_zero());
        // 3x3 with a variable: det [[x,0,0],[0,y,0],[0,0,x]] = x^2*y
        let diag = vec![
            vec![x.clone(), Poly::zero(2), Poly::zero(2)],
            vec![Poly::zero(2), y.clone(), Poly::zero(2)],
            vec![Poly::zero(2), Poly::zero(2), x.clone()],
        ];
        assert_eq!(poly_det(&diag), x.mul(&x).mul(&y));
    }

    #[test]
    fn display_readable() {
        let mut vars = VarTable::new();
        let kx = vars.intern("k1");
        let ky = vars.intern("k2");
        let p = Poly::var(2, kx)
            .add(&Poly::var(2, ky).scale(&rat_int(-2)))
            .add(&Poly::one(2));
        // BTreeMap term order is lexicographic on exponent vectors.
        assert_eq!(format!("{}", p.display(&vars)), "1 - 2*k2 + k1");
    }
}
