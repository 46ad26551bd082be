//! Exact rational linear algebra and linear-inequality feasibility.
//!
//! All structural analysis in this crate runs over arbitrary-precision
//! rationals so that ranks, kernels, and sign decisions are exact; floating
//! point appears only in the numerical integrator and root finder.

use crate::error::{CrnError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational `num/den`.
pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a rational literal: `3`, `-7/2`, `1.5`, `-0.25`, `2e-3`, `1.5e2`.
///
/// Decimal and exponent forms are converted exactly (no floating point).
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    if s.is_empty() {
        return Err(CrnError::Invalid("empty numeric literal".into()));
    }
    let bad = |t: &str| CrnError::Invalid(format!("malformed numeric literal `{t}`"));

    // Split off a decimal exponent if present.
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad(s))?;
            (&s[..pos], exp)
        }
        None => (s, 0i32),
    };

    let mut value = if let Some((num, den)) = mantissa.split_once('/') {
        if exp10 != 0 {
            return Err(bad(s));
        }
        let n: BigInt = num.trim().parse().map_err(|_| bad(s))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad(s))?;
        if d.is_zero() {
            return Err(CrnError::Invalid(format!("zero denominator in `{s}`")));
        }
        Rat::new(n, d)
    } else if let Some((int_part, frac_part)) = mantissa.split_once('.') {
        let (sign, int_digits) = match int_part.trim() {
            t if t.starts_with('-') => (-1, &t[1..]),
            t if t.starts_with('+') => (1, &t[1..]),
            t => (1, t),
        };
        if frac_part.is_empty() && int_digits.is_empty() {
            return Err(bad(s));
        }
        let digits = format!(
            "{}{}",
            if int_digits.is_empty() { "0" } else { int_digits },
            frac_part
        );
        let n: BigInt = digits.parse().map_err(|_| bad(s))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        Rat::new(BigInt::from(sign) * n, d)
    } else {
        let n: BigInt = mantissa.trim().parse().map_err(|_| bad(s))?;
        Rat::from_integer(n)
    };

    if exp10 > 0 {
        value *= Rat::from_integer(BigInt::from(10u32).pow(exp10 as u32));
    } else if exp10 < 0 {
        value /= Rat::from_integer(BigInt::from(10u32).pow((-exp10) as u32));
    }
    Ok(value)
}

/// Convert to `f64` (panics only on overflow far outside this crate's range).
pub fn rat_to_f64(v: &Rat) -> f64 {
    num::ToPrimitive::to_f64(v).expect("rational out of f64 range")
}

/// Exact `base^exp` for integer `exp`; for fractional `exp`, succeeds only
/// when the exact root exists over the rationals.
pub fn rat_pow(base: &Rat, exp: &Rat) -> Result<Rat> {
    if base.is_zero() {
        if exp.is_positive() {
            return Ok(Rat::zero());
        }
        return Err(CrnError::Invalid("zero base with nonpositive exponent".into()));
    }
    let int_pow = |b: &Rat, e: &BigInt| -> Result<Rat> {
        let abs = e.abs();
        let abs_u = num::ToPrimitive::to_u32(&abs)
            .ok_or_else(|| CrnError::Invalid("exponent too large for exact power".into()))?;
        let p = num::pow::pow(b.clone(), abs_u as usize);
        if e.is_negative() {
            Ok(p.recip())
        } else {
            Ok(p)
        }
    };
    if exp.is_integer() {
        return int_pow(base, exp.numer());
    }
    // base^(p/q): try the exact q-th root.
    let q = num::ToPrimitive::to_u32(&exp.denom().abs())
        .ok_or_else(|| CrnError::Invalid("exponent denominator too large".into()))?;
    if base.is_negative() {
        return Err(CrnError::Invalid("fractional power of negative base".into()));
    }
    let rn = base.numer().nth_root(q);
    let rd = base.denom().nth_root(q);
    if num::pow::pow(rn.clone(), q as usize) != *base.numer()
        || num::pow::pow(rd.clone(), q as usize) != *base.denom()
    {
        return Err(CrnError::Numerical(format!(
            "no exact rational {q}-th root of {base}"
        )));
    }
    let root = Rat::new(rn, rd);
    let mut e = exp.numer().clone();
    if exp.denom().is_negative() {
        e = -e;
    }
    int_pow(&root, &e)
}

/// Dense matrix of exact rationals (row-major).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of a reduced row-echelon computation.
pub struct Rref {
    /// The reduced matrix.
    pub matrix: ExactMatrix,
    /// Pivot column index per pivot row, ascending.
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    /// Zero matrix.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            nrows,
            ncols,
            data: vec![Rat::zero(); nrows * ncols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from row vectors (all rows must have equal length).
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        ExactMatrix { nrows, ncols, data }
    }

    /// Build from a function of (row, col).
    pub fn from_fn(nrows: usize, ncols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Element reference.
    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.ncols + j] = v;
    }

    /// Row as a vector.
    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        (0..self.ncols).map(|j| self.at(i, j).clone()).collect()
    }

    /// Column as a vector.
    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.nrows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Matrix with the given columns (in the given order).
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(self.nrows, cols.len(), |i, j| self.at(i, cols[j]).clone())
    }

    /// Matrix with the given rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(rows.len(), self.ncols, |i, j| self.at(rows[i], j).clone())
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.ncols, self.nrows, |i, j| self.at(j, i).clone())
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j).clone();
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.ncols, v.len(), "dimension mismatch");
        (0..self.nrows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.ncols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Reduced row echelon form with leftmost pivoting (deterministic).
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row >= m.nrows {
                break;
            }
            // Find the first nonzero entry in this column at or below `row`.
            let Some(pr) = (row..m.nrows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..m.ncols {
                    let a = m.at(row, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.at(row, col).clone().recip();
            for j in 0..m.ncols {
                let v = m.at(row, j).clone() * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.nrows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for j in 0..m.ncols {
                        let v = m.at(r, j).clone() - &factor * m.at(row, j);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical null-space basis from the RREF: one vector per free column,
    /// with a `1` in the free coordinate, in ascending free-column order.
    pub fn null_space_basis(&self) -> Vec<Vec<Rat>> {
        let Rref { matrix, pivots } = self.rref();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.ncols];
            v[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -matrix.at(prow, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical basis of the left null space (`w` with `w · M = 0`).
    pub fn left_null_space_basis(&self) -> Vec<Vec<Rat>> {
        self.transpose().null_space_basis()
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.nrows, self.ncols, "inverse of non-square matrix");
        let n = self.nrows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |i, j| {
            r.matrix.at(i, n + j).clone()
        }))
    }

    /// Determinant (fraction-free via RREF bookkeeping is unnecessary at the
    /// sizes used here; plain elimination with rational pivots).
    pub fn det(&self) -> Rat {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rat::zero();
            };
            if pr != col {
                det = -det;
                for j in 0..n {
                    let a = m.at(col, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(col, j, b);
                    m.set(pr, j, a);
                }
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone() / &pivot;
                for j in col..n {
                    let v = m.at(r, j).clone() - &factor * m.at(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// One solution of `self · x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.nrows, b.len(), "dimension mismatch");
        let mut aug = ExactMatrix::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.ncols, b[i].clone());
        }
        let r = aug.rref();
        // Inconsistent iff a pivot lands in the augmented column.
        if r.pivots.contains(&self.ncols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (prow, &pcol) in r.pivots.iter().enumerate() {
            x[pcol] = r.matrix.at(prow, self.ncols).clone();
        }
        Some(x)
    }

    /// Convert to `f64` entries.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| rat_to_f64(self.at(i, j))).collect())
            .collect()
    }
}

/// Scale a rational vector so entries are coprime integers with the first
/// nonzero entry positive; the zero vector is returned unchanged.
pub fn integer_primitive(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::Integer::lcm(&lcm, x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num::Integer::gcd(&gcd, x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| {
            if x.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        });
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &gcd * &sign))
        .collect()
}

/// A linear constraint `coeffs · x >= rhs` over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ineq {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Ineq {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Ineq { coeffs, rhs }
    }

    /// Canonical form: divide by the positive content of the coefficients
    /// (and rhs) so duplicates collapse. Only positive scalings are applied
    /// (a sign flip would reverse the inequality).
    fn normalized(&self) -> Ineq {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        let prim = integer_primitive(&all);
        let scale = all
            .iter()
            .zip(&prim)
            .find(|(orig, _)| !orig.is_zero())
            .map(|(orig, p)| (p / orig).abs());
        match scale {
            Some(s) => Ineq {
                coeffs: self.coeffs.iter().map(|c| c * &s).collect(),
                rhs: &self.rhs * &s,
            },
            None => self.clone(),
        }
    }
}

/// Exact feasibility of `coeffs · x >= rhs` systems by Fourier–Motzkin
/// elimination; returns a witness point when feasible.
///
/// Intended for the small systems arising in sign-vector and positivity
/// questions (a handful of variables); constraint sets are deduplicated at
/// every elimination step to keep growth in check.
pub fn solve_ineqs(nvars: usize, constraints: &[Ineq]) -> Option<Vec<Rat>> {
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint arity mismatch");
    }
    fm_solve(nvars, constraints)
}

fn fm_solve(nvars: usize, constraints: &[Ineq]) -> Option<Vec<Rat>> {
    if nvars == 0 {
        return if constraints.iter().all(|c| !c.rhs.is_positive()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let var = nvars - 1;
    // Partition on the sign of the coefficient of the variable being
    // eliminated:  pos:  a·x' + c v >= b  =>  v >= (b - a·x')/c   (lower)
    //              neg:                       v <= (b - a·x')/|c| (upper)
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    let mut rest: BTreeSet<Ineq> = BTreeSet::new();
    for c in constraints {
        let coef = &c.coeffs[var];
        if coef.is_zero() {
            rest.insert(
                Ineq::new(c.coeffs[..var].to_vec(), c.rhs.clone()).normalized(),
            );
        } else {
            // Normalize so the eliminated variable has coefficient ±1.
            let inv = coef.clone().recip().abs();
            let coeffs: Vec<Rat> = c.coeffs[..var].iter().map(|a| a * &inv).collect();
            let rhs = &c.rhs * &inv;
            if coef.is_positive() {
                lowers.push((coeffs, rhs));
            } else {
                uppers.push((coeffs, rhs));
            }
        }
    }
    // Lower row cl·x' + v >= bl plus upper row cu·x' - v >= bu sums to the
    // v-free constraint (cl + cu)·x' >= bl + bu.
    for (cl, bl) in &lowers {
        for (cu, bu) in &uppers {
            let coeffs: Vec<Rat> = cl.iter().zip(cu).map(|(a, b)| a + b).collect();
            let rhs = bl + bu;
            rest.insert(Ineq::new(coeffs, rhs).normalized());
        }
    }
    let reduced: Vec<Ineq> = rest.into_iter().collect();
    let partial = fm_solve(var, &reduced)?;
    // Back-substitute: bounds for the eliminated variable.
    let eval = |coeffs: &[Rat]| -> Rat {
        coeffs
            .iter()
            .zip(&partial)
            .map(|(a, x)| a * x)
            .fold(Rat::zero(), |acc, t| acc + t)
    };
    let mut lo: Option<Rat> = None;
    for (cl, bl) in &lowers {
        let bound = bl - eval(cl);
        if lo.as_ref().map_or(true, |cur| bound > *cur) {
            lo = Some(bound);
        }
    }
    let mut hi: Option<Rat> = None;
    for (cu, bu) in &uppers {
        let bound = eval(cu) - bu;
        if hi.as_ref().map_or(true, |cur| bound < *cur) {
            hi = Some(bound);
        }
    }
    let v = match (lo, hi) {
        (Some(l), Some(h)) => {
            debug_assert!(l <= h, "Fourier–Motzkin back-substitution mismatch");
            (l + h) / rat_int(2)
        }
        (Some(l), None) => l,
        (None, Some(h)) => h,
        (None, None) => Rat::zero(),
    };
    let mut out = partial;
    out.push(v);
    Some(out)
}

/// Find `c` with `basis · c >= 1` componentwise, i.e. a strictly positive
/// vector in the column span of `basis` (m×d). Returns the composed positive
/// vector and its coordinates.
pub fn positive_combination(basis: &ExactMatrix) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let m = basis.nrows();
    let d = basis.ncols();
    if d == 0 {
        return None;
    }
    let cons: Vec<Ineq> = (0..m)
        .map(|i| Ineq::new(basis.row_vec(i), Rat::one()))
        .collect();
    let c = solve_ineqs(d, &cons)?;
    let x = basis.matvec(&c);
    Some((x, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        rat_frac(n, d)
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("3/2").unwrap(), r(3, 2));
        assert_eq!(parse_rat("-7/4").unwrap(), r(-7, 4));
        assert_eq!(parse_rat("1.5").unwrap(), r(3, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rat("2").unwrap(), rat_int(2));
        assert_eq!(parse_rat("2e-3").unwrap(), r(1, 500));
        assert_eq!(parse_rat("1.5e2").unwrap(), rat_int(150));
        assert_eq!(parse_rat(".5").unwrap(), r(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn rat_pow_exact_roots() {
        assert_eq!(rat_pow(&r(9, 4), &r(1, 2)).unwrap(), r(3, 2));
        assert_eq!(rat_pow(&r(8, 27), &r(-1, 3)).unwrap(), r(3, 2));
        assert_eq!(rat_pow(&r(5, 8), &rat_int(2)).unwrap(), r(25, 64));
        assert_eq!(rat_pow(&r(5, 8), &rat_int(-1)).unwrap(), r(8, 5));
        assert!(rat_pow(&r(2, 1), &r(1, 2)).is_err());
    }

    #[test]
    fn rref_rank_and_kernel() {
        // [1 2 3; 2 4 6; 1 1 1] has rank 2.
        let m = ExactMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(1), rat_int(1), rat_int(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ker = m.null_space_basis();
        assert_eq!(ker.len(), 1);
        // Kernel vector must satisfy M v = 0 and have a 1 in its free slot.
        let v = &ker[0];
        assert_eq!(v[2], Rat::one());
        assert!(m.matvec(v).iter().all(|x| x.is_zero()));
        assert_eq!(v[0], rat_int(1));
        assert_eq!(v[1], rat_int(-2));
    }

    #[test]
    fn inverse_and_det() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(5), rat_int(3)],
        ]);
        assert_eq!(m.det(), rat_int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), ExactMatrix::identity(2));
        let singular = ExactMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), rat_int(0));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ]);
        let x = m.solve(&[rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        let bad = ExactMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ]);
        assert!(bad.solve(&[rat_int(1), rat_int(3)]).is_none());
    }

    #[test]
    fn integer_primitive_scales_and_signs() {
        let v = vec![r(-1, 2), r(1, 4), rat_int(0)];
        assert_eq!(
            integer_primitive(&v),
            vec![rat_int(2), rat_int(-1), rat_int(0)]
        );
        let z = vec![Rat::zero(), Rat::zero()];
        assert_eq!(integer_primitive(&z), z);
    }

    #[test]
    fn fourier_motzkin_feasible() {
        // x >= 1, y >= 1, x + y <= 10 (i.e. -x - y >= -10).
        let cons = vec![
            Ineq::new(vec![rat_int(1), rat_int(0)], rat_int(1)),
            Ineq::new(vec![rat_int(0), rat_int(1)], rat_int(1)),
            Ineq::new(vec![rat_int(-1), rat_int(-1)], rat_int(-10)),
        ];
        let x = solve_ineqs(2, &cons).unwrap();
        assert!(x[0] >= rat_int(1) && x[1] >= rat_int(1));
        assert!(&x[0] + &x[1] <= rat_int(10));
    }

    #[test]
    fn fourier_motzkin_infeasible() {
        // x >= 2 and -x >= -1 (x <= 1).
        let cons = vec![
            Ineq::new(vec![rat_int(1)], rat_int(2)),
            Ineq::new(vec![rat_int(-1)], rat_int(-1)),
        ];
        assert!(solve_ineqs(1, &cons).is_none());
    }

    #[test]
    fn positive_combination_of_conservation() {
        // Span of (1,1,1): strictly positive vectors exist.
        let basis = ExactMatrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(1)], vec![rat_int(1)]]);
        let (x, _) = positive_combination(&basis).unwrap();
        assert!(x.iter().all(|v| v >= &rat_int(1)));
        // Span of (1,-1): no strictly positive vector.
        let basis2 =
            ExactMatrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(-1)]]);
        assert!(positive_combination(&basis2).is_none());
    }
}
