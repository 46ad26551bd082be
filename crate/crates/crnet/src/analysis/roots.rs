//! Steady-state counting per stoichiometric class.
//!
//! For a one-parameter positive parametrization x(τ) of a conservative
//! network whose conservation law is the all-ones vector, the steady states
//! in the class {Σ_i x_i = T} correspond to positive roots of the
//! generalized polynomial
//!
//!   f(τ) = Σ_i C_i·τ^{e_i} − T.
//!
//! The number of positive roots is bounded by the number of sign changes in
//! the coefficient sequence ordered by descending exponent (the Descartes
//! bound extends to real exponents); terms sharing an exponent merge first,
//! so the conserved total T folds into the constant term. Roots are then
//! located numerically on a dyadic grid with exact-bisection refinement.
//!
//! Before counting, the free parameter is rescaled so the exponents match
//! the conventional class-equation normal form for these models: species A2
//! carries exponent p1−p2 when it varies (the y-equation), otherwise A1
//! carries q2−q1 (the z-equation used for P-null orders).

use crate::error::{CrnError, Result};
use crate::exact::{rat_to_f64, Rat};
use crate::network::Bindings;
use crate::steady::Parametrization;
use num::{One, Signed, Zero};

use super::regime::{classify_regime, Regime, RegimeClass};

/// Which normal form the class equation takes after rescaling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootBranch {
    /// y(τ): coefficient (k1/k2)^{1/(p2−p1)} on the A1 term.
    Y,
    /// z(τ): unit coefficient on the A1 term (P-null orders).
    Z,
}

impl std::fmt::Display for RootBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootBranch::Y => write!(f, "y"),
            RootBranch::Z => write!(f, "z"),
        }
    }
}

/// One grouped term C·τ^e of the class equation.
#[derive(Clone, Debug)]
pub struct RootTerm {
    pub exponent: Rat,
    pub coefficient: f64,
    /// Exact value when every contributing coefficient evaluates rationally.
    pub exact: Option<Rat>,
}

/// A located positive root of the class equation.
#[derive(Clone, Debug)]
pub struct RootRecord {
    pub tau: f64,
    /// |f(τ)| at the reported root.
    pub residual: f64,
    /// The steady state x(τ) in parametrization species order.
    pub state: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RootReport {
    pub branch: RootBranch,
    pub regime: Regime,
    /// Exponent rescale applied to the input parametrization (τ_old = τ^α).
    pub alpha: Rat,
    /// Grouped terms in descending exponent order, −T folded into the
    /// constant term.
    pub terms: Vec<RootTerm>,
    pub sign_changes: usize,
    pub roots: Vec<RootRecord>,
    /// The rescaled parametrization whose free parameter the roots refer to.
    pub param: Parametrization,
}

impl RootReport {
    /// Class-equation value f(τ) from the grouped terms.
    pub fn eval(&self, tau: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * tau.powf(rat_to_f64(&t.exponent)))
            .sum()
    }
}

fn rescale_alpha(param: &Parametrization, regime: &Regime) -> Rat {
    let find = |name: &str| -> Option<Rat> {
        param
            .species_names
            .iter()
            .position(|n| n == name)
            .map(|i| param.exps[i][0].clone())
            .filter(|e| !e.is_zero())
    };
    let p_diff = regime.p_diff();
    if !p_diff.is_zero() {
        if let Some(e) = find("A2") {
            return p_diff / e;
        }
    }
    let q_diff = regime.q_diff();
    if !q_diff.is_zero() {
        if let Some(e) = find("A1") {
            return q_diff / e;
        }
    }
    Rat::one()
}

/// Count and locate positive steady states in the class Σ_i x_i = `total`.
pub fn count_roots(param: &Parametrization, bindings: &Bindings, total: &Rat) -> Result<RootReport> {
    let regime = classify_regime(bindings)?;
    if regime.class == RegimeClass::Degenerate {
        return Err(CrnError::Unsupported(
            "degenerate orders (p1 = p2 and q1 = q2): the steady-state variety \
             is not a one-parameter monomial curve"
                .into(),
        ));
    }
    if param.num_free() != 1 {
        return Err(CrnError::Unsupported(format!(
            "root counting needs a one-parameter class equation, got {} free parameters",
            param.num_free()
        )));
    }
    if !total.is_positive() {
        return Err(CrnError::Invalid("conserved total must be positive".into()));
    }

    let alpha = rescale_alpha(param, &regime);
    let mut scaled = param.clone();
    for row in scaled.exps.iter_mut() {
        row[0] *= &alpha;
    }
    let branch = if regime.class == RegimeClass::PNull {
        RootBranch::Z
    } else {
        RootBranch::Y
    };

    // Group coefficients by exact exponent; keep exact sums while possible.
    let mut groups: std::collections::BTreeMap<Rat, (f64, Option<Rat>)> =
        std::collections::BTreeMap::new();
    for (i, coeff) in scaled.coeffs.iter().enumerate() {
        let c = coeff.eval_f64(bindings)?;
        let exact = coeff.eval_exact(bindings).ok();
        let entry = groups
            .entry(scaled.exps[i][0].clone())
            .or_insert((0.0, Some(Rat::zero())));
        entry.0 += c;
        entry.1 = match (entry.1.take(), exact) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    {
        let entry = groups
            .entry(Rat::zero())
            .or_insert((0.0, Some(Rat::zero())));
        entry.0 -= rat_to_f64(total);
        entry.1 = entry.1.take().map(|a| a - total);
    }

    let mut terms: Vec<RootTerm> = groups
        .into_iter()
        .rev() // descending exponent
        .map(|(e, (c, exact))| RootTerm {
            exponent: e,
            coefficient: c,
            exact,
        })
        .collect();
    if terms.iter().all(|t| t.exponent.is_zero()) {
        return Err(CrnError::Unsupported(
            "class equation has no τ-dependent term".into(),
        ));
    }

    // Signs: exact where available, otherwise floating point with a scale-
    // relative zero threshold.
    let scale = terms
        .iter()
        .map(|t| t.coefficient.abs())
        .fold(0.0f64, f64::max);
    let eps = 1e-13 * scale.max(1.0);
    let signs: Vec<i8> = terms
        .iter()
        .map(|t| match &t.exact {
            Some(v) => {
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            }
            None => {
                if t.coefficient > eps {
                    1
                } else if t.coefficient < -eps {
                    -1
                } else {
                    0
                }
            }
        })
        .collect();
    // Drop exactly-zero groups from both the bound and the function.
    let keep: Vec<usize> = (0..terms.len()).filter(|&i| signs[i] != 0).collect();
    terms = keep.iter().map(|&i| terms[i].clone()).collect();
    let signs: Vec<i8> = keep.iter().map(|&i| signs[i]).collect();
    let sign_changes = signs.windows(2).filter(|w| w[0] != w[1]).count();

    let f = |tau: f64| -> f64 {
        terms
            .iter()
            .map(|t| t.coefficient * tau.powf(rat_to_f64(&t.exponent)))
            .sum()
    };
    let df = |tau: f64| -> f64 {
        terms
            .iter()
            .map(|t| {
                let e = rat_to_f64(&t.exponent);
                t.coefficient * e * tau.powf(e - 1.0)
            })
            .sum()
    };

    // Dyadic grid; the analytic stationary point of a two-term-plus-constant
    // equation is inserted so a narrow dip between grid points is not missed.
    let mut grid: Vec<f64> = (-60..=60).map(|i| (i as f64).exp2()).collect();
    let nonconst: Vec<&RootTerm> = terms.iter().filter(|t| !t.exponent.is_zero()).collect();
    if nonconst.len() == 2 {
        let e1 = rat_to_f64(&nonconst[0].exponent);
        let e2 = rat_to_f64(&nonconst[1].exponent);
        let c1 = nonconst[0].coefficient;
        let c2 = nonconst[1].coefficient;
        if e1 > 0.0 && e2 < 0.0 && c1 > 0.0 && c2 > 0.0 {
            let tau_star = (-c2 * e2 / (c1 * e1)).powf(1.0 / (e1 - e2));
            if tau_star.is_finite() && tau_star > 0.0 {
                grid.push(tau_star);
                grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
            }
        }
    }

    let mut roots: Vec<RootRecord> = Vec::new();
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    for w in grid.windows(2).zip(values.windows(2)) {
        let ((a, b), (fa, fb)) = ((w.0[0], w.0[1]), (w.1[0], w.1[1]));
        if fa == 0.0 {
            push_root(&mut roots, a, fa.abs(), &scaled, bindings)?;
            continue;
        }
        if fa * fb < 0.0 {
            let (mut lo, mut hi) = (a, b);
            let (mut flo, _fhi) = (fa, fb);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if (hi - lo) <= 1e-12 * mid {
                    break;
                }
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            let mut tau = 0.5 * (lo + hi);
            for _ in 0..8 {
                let d = df(tau);
                if d == 0.0 {
                    break;
                }
                let next = tau - f(tau) / d;
                if !(next > lo && next < hi) {
                    break;
                }
                tau = next;
            }
            push_root(&mut roots, tau, f(tau).abs(), &scaled, bindings)?;
        }
    }
    // The tail grid value can itself be a root only via exact zero at the
    // last point; cover it.
    if let (Some(&t), Some(&v)) = (grid.last(), values.last()) {
        if v == 0.0 {
            push_root(&mut roots, t, 0.0, &scaled, bindings)?;
        }
    }
    roots.dedup_by(|a, b| (a.tau - b.tau).abs() <= 1e-9 * b.tau.abs().max(1e-300));

    Ok(RootReport {
        branch,
        regime,
        alpha,
        terms,
        sign_changes,
        roots,
        param: scaled,
    })
}

fn push_root(
    roots: &mut Vec<RootRecord>,
    tau: f64,
    residual: f64,
    param: &Parametrization,
    bindings: &Bindings,
) -> Result<()> {
    let state = param.eval_f64(bindings, &[tau])?;
    roots.push(RootRecord {
        tau,
        residual,
        state,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_frac, rat_int};
    use crate::models;
    use crate::steady::solve_builtin;

    fn doc_report(preset: &str, total: i64) -> RootReport {
        let model = models::builtin("doc").unwrap();
        let bindings = model
            .default_rate_bindings()
            .merged_with(&models::order_preset(preset).unwrap());
        let sol = solve_builtin(model, &bindings).unwrap();
        count_roots(sol.primary(), &bindings, &rat_int(total)).unwrap()
    }

    #[test]
    fn positive_orders_follow_the_y_equation() {
        let rep = doc_report("positive", 2);
        assert_eq!(rep.branch, RootBranch::Y);
        // C1·τ² + C2·τ⁻¹ − T with C1 = k1/k2 and C2 = 109/54.
        let exps: Vec<Rat> = rep.terms.iter().map(|t| t.exponent.clone()).collect();
        assert_eq!(exps, vec![rat_int(2), rat_int(0), rat_int(-1)]);
        assert_eq!(rep.terms[0].exact, Some(rat_frac(5, 8)));
        assert_eq!(rep.terms[2].exact, Some(rat_frac(109, 54)));
        assert_eq!(rep.sign_changes, 2);
        assert!(rep.roots.is_empty());
    }

    #[test]
    fn positive_orders_gain_two_roots_for_large_totals() {
        let rep = doc_report("positive", 5);
        assert_eq!(rep.roots.len(), 2);
        for r in &rep.roots {
            assert!(r.residual < 1e-9);
            let total: f64 = r.state.iter().sum();
            assert!((total - 5.0).abs() < 1e-8);
        }
    }

    #[test]
    fn p_null_orders_follow_the_z_equation() {
        let rep = doc_report("p-null", 2);
        assert_eq!(rep.branch, RootBranch::Z);
        // τ^{q2−q1} + (C2·C3 − T) with q2−q1 = 2.
        assert_eq!(rep.terms[0].exponent, rat_int(2));
        assert_eq!(rep.terms[0].exact, Some(rat_int(1)));
        assert_eq!(rep.sign_changes, 1);
        assert_eq!(rep.roots.len(), 1);
    }

    #[test]
    fn degenerate_orders_are_rejected() {
        let model = models::builtin("doc").unwrap();
        let degenerate = model
            .default_rate_bindings()
            .merged_with(&crate::network::Bindings::parse("p1=1 q1=1 p2=1 q2=1").unwrap());
        // Build the parametrization under valid orders, then count under
        // degenerate ones: the regime gate must fire.
        let valid = model
            .default_rate_bindings()
            .merged_with(&models::order_preset("positive").unwrap());
        let sol = solve_builtin(model, &valid).unwrap();
        let err = count_roots(sol.primary(), &degenerate, &rat_int(2)).unwrap_err();
        assert!(matches!(err, CrnError::Unsupported(_)));
    }
}
