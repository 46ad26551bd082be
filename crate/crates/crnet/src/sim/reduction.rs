//! Sufficient conditions for carbon reduction in the atmosphere.
//!
//! Both checks compare the steady atmospheric carbon A3* against its initial
//! range over a box of admissible initial states intersected with the
//! conservation hyperplane Σx = T. The extrema of a coordinate or a
//! coordinate-sum over that polytope have closed greedy forms (one linear
//! equality over a box), so `m′` and `M′`/`M″` are computed exactly in
//! rational arithmetic.
//!
//! - Ocean-capture model: A3* < A3° whenever k3/(k4+k7) < (T − M′)/m′, where
//!   m′ is the minimal A2 coordinate and M′ the maximal A1+A2+A4+A17 over
//!   the region.
//! - Air-capture model: with k⋆ = (k3·k5·k7 + k6·k4·(k5+k7))/(k4·k5·k7), the
//!   condition is 1 + M″/m′ < (k1/k2)^{1/(p2−p1)}·(m′)^{−Q} + k⋆ (when
//!   p1 ≠ p2), or the same with (k1/k2)^{1/(q2−q1)}·(m′)^{−R} (when q1 ≠ q2);
//!   for the null regimes the power term is dropped, leaving the stronger
//!   requirement 1 + M″/m′ < k⋆. Here M″ is the maximal A1+A3+A4+A5.

use crate::analysis::{classify_regime, RegimeClass};
use crate::error::{CrnError, Result};
use crate::exact::{rat_pow, rat_to_f64, Rat};
use crate::network::Bindings;
use num::{One, Signed, Zero};

/// Closed box of admissible initial states, intersected with Σx = T by the
/// checks that consume it.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub lower: Vec<Rat>,
    pub upper: Vec<Rat>,
}

impl RegionSpec {
    pub fn new(lower: Vec<Rat>, upper: Vec<Rat>) -> Self {
        RegionSpec { lower, upper }
    }

    /// Check the box is well formed for `m` species and meets Σx = T.
    pub fn validate(&self, m: usize, total: &Rat) -> Result<()> {
        if self.lower.len() != m || self.upper.len() != m {
            return Err(CrnError::Invalid(format!(
                "region needs {m} lower and upper bounds (got {} and {})",
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if l.is_negative() {
                return Err(CrnError::Invalid(format!(
                    "lower bound of coordinate {j} is negative"
                )));
            }
            if l > u {
                return Err(CrnError::Invalid(format!(
                    "empty interval at coordinate {j}: lower {l} > upper {u}"
                )));
            }
        }
        let lsum: Rat = self.lower.iter().sum();
        let usum: Rat = self.upper.iter().sum();
        if &lsum > total || total > &usum {
            return Err(CrnError::Invalid(format!(
                "the hyperplane Σx = {total} misses the box (Σ lower = {lsum}, Σ upper = {usum})"
            )));
        }
        Ok(())
    }
}

/// Exact minimum of coordinate `j` over the box ∩ {Σx = T}: the other
/// coordinates absorb as much of the total as their upper bounds allow.
pub fn box_min_coord(region: &RegionSpec, total: &Rat, j: usize) -> Rat {
    let others: Rat = region
        .upper
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, u)| u.clone())
        .sum();
    let forced = total - &others;
    if forced > region.lower[j] {
        forced
    } else {
        region.lower[j].clone()
    }
}

/// Exact maximum of Σ_{i ∈ group} x_i over the box ∩ {Σx = T}: the group is
/// capped by its own upper bounds and by what the complement must retain.
pub fn box_max_sum(region: &RegionSpec, total: &Rat, group: &[usize]) -> Rat {
    let in_group = |i: usize| group.contains(&i);
    let cap: Rat = group.iter().map(|&i| region.upper[i].clone()).sum();
    let retained: Rat = region
        .lower
        .iter()
        .enumerate()
        .filter(|&(i, _)| !in_group(i))
        .map(|(_, l)| l.clone())
        .sum();
    let available = total - &retained;
    if cap < available {
        cap
    } else {
        available
    }
}

fn req(bindings: &Bindings, name: &str) -> Result<Rat> {
    bindings
        .get(name)
        .cloned()
        .ok_or_else(|| CrnError::Unbound(format!("rate constant `{name}` is unbound")))
}

/// Carbon-reduction check for the ocean-capture model (species order
/// A1, A2, A3, A4, A17; atmospheric carbon is A3).
#[derive(Clone, Debug)]
pub struct DocReduction {
    /// min A2 over the region.
    pub m_prime: Rat,
    /// max A1+A2+A4+A17 over the region.
    pub m_upper: Rat,
    /// k3/(k4+k7).
    pub lhs: Rat,
    /// (T − M′)/m′.
    pub rhs: Rat,
    /// rhs − lhs; positive iff the condition holds.
    pub margin: Rat,
    pub holds: bool,
}

pub fn reduction_check_doc(
    bindings: &Bindings,
    total: &Rat,
    region: &RegionSpec,
) -> Result<DocReduction> {
    region.validate(5, total)?;
    let k3 = req(bindings, "k3")?;
    let k4 = req(bindings, "k4")?;
    let k7 = req(bindings, "k7")?;
    let denom = &k4 + &k7;
    if !denom.is_positive() {
        return Err(CrnError::Invalid("k4 + k7 must be positive".into()));
    }

    let m_prime = box_min_coord(region, total, 1);
    if m_prime.is_zero() {
        return Err(CrnError::Invalid(
            "degenerate region: it touches the A2 = 0 face, so the bound A3* < (k3/(k4+k7))·A2* is vacuous".into(),
        ));
    }
    let m_upper = box_max_sum(region, total, &[0, 1, 3, 4]);

    let lhs = &k3 / &denom;
    let rhs = &(total - &m_upper) / &m_prime;
    let margin = &rhs - &lhs;
    Ok(DocReduction {
        m_prime,
        m_upper,
        holds: margin.is_positive(),
        lhs,
        rhs,
        margin,
    })
}

/// One evaluated branch of the air-capture condition.
#[derive(Clone, Debug)]
pub struct ReductionBranch {
    /// "p-power", "q-power", or "null".
    pub label: &'static str,
    /// Right-hand side: power term (if any) plus k⋆.
    pub rhs: f64,
    /// Exact right-hand side when the powers are rational.
    pub rhs_exact: Option<Rat>,
    pub holds: bool,
}

/// Carbon-reduction check for the air-capture model (species order
/// A1, A2, A3, A4, A5; atmospheric carbon is A3).
#[derive(Clone, Debug)]
pub struct DacReduction {
    pub regime: RegimeClass,
    /// min A2 over the region.
    pub m_prime: Rat,
    /// max A1+A3+A4+A5 over the region.
    pub m_upper: Rat,
    /// (k3·k5·k7 + k6·k4·(k5+k7))/(k4·k5·k7).
    pub k_star: Rat,
    /// 1 + M″/m′.
    pub lhs: Rat,
    /// Every branch whose exponents are defined for these orders.
    pub branches: Vec<ReductionBranch>,
    /// Some branch holds.
    pub holds: bool,
}

pub fn reduction_check_dac(
    bindings: &Bindings,
    total: &Rat,
    region: &RegionSpec,
) -> Result<DacReduction> {
    region.validate(5, total)?;
    let regime = classify_regime(bindings)?;
    if regime.class == RegimeClass::Degenerate {
        return Err(CrnError::Unsupported(
            "degenerate kinetic orders: the steady-state power relation gives no bound on A2".into(),
        ));
    }
    let k1 = req(bindings, "k1")?;
    let k2 = req(bindings, "k2")?;
    let k3 = req(bindings, "k3")?;
    let k4 = req(bindings, "k4")?;
    let k5 = req(bindings, "k5")?;
    let k6 = req(bindings, "k6")?;
    let k7 = req(bindings, "k7")?;
    for (name, v) in [("k1", &k1), ("k2", &k2), ("k4", &k4), ("k5", &k5), ("k7", &k7)] {
        if !v.is_positive() {
            return Err(CrnError::Invalid(format!("{name} must be positive")));
        }
    }

    let m_prime = box_min_coord(region, total, 1);
    if m_prime.is_zero() {
        return Err(CrnError::Invalid(
            "degenerate region: it touches the A2 = 0 face, so no positive lower bound m′ exists".into(),
        ));
    }
    let m_upper = box_max_sum(region, total, &[0, 2, 3, 4]);

    let k_star = &(&(&k3 * &k5) * &k7 + &(&k6 * &k4) * &(&k5 + &k7)) / &(&(&k4 * &k5) * &k7);
    let lhs = Rat::one() + &m_upper / &m_prime;
    let lhs_f = rat_to_f64(&lhs);

    let ratio = &k1 / &k2;
    let mut branches = Vec::new();
    let mut push_power = |label: &'static str, inv_exp: Rat, neg_pow: Rat| {
        let rhs_exact = rat_pow(&ratio, &inv_exp)
            .and_then(|a| rat_pow(&m_prime, &neg_pow).map(|b| a * b + k_star.clone()))
            .ok();
        let rhs = rat_to_f64(&ratio).powf(rat_to_f64(&inv_exp))
            * rat_to_f64(&m_prime).powf(rat_to_f64(&neg_pow))
            + rat_to_f64(&k_star);
        let holds = match &rhs_exact {
            Some(e) => &lhs < e,
            None => lhs_f < rhs,
        };
        branches.push(ReductionBranch {
            label,
            rhs,
            rhs_exact,
            holds,
        });
    };

    let dp = &regime.p2 - &regime.p1;
    let dq = &regime.q2 - &regime.q1;
    if !dp.is_zero() {
        let q = regime.q.clone().expect("Q defined when p1 != p2");
        push_power("p-power", dp.recip(), -q);
    }
    if !dq.is_zero() {
        let r = regime.r.clone().expect("R defined when q1 != q2");
        push_power("q-power", dq.recip(), -r);
    }
    if matches!(regime.class, RegimeClass::PNull | RegimeClass::QNull) {
        branches.push(ReductionBranch {
            label: "null",
            rhs: rat_to_f64(&k_star),
            rhs_exact: Some(k_star.clone()),
            holds: lhs < k_star,
        });
    }

    let holds = branches.iter().any(|b| b.holds);
    Ok(DacReduction {
        regime: regime.class,
        m_prime,
        m_upper,
        k_star,
        lhs,
        branches,
        holds,
    })
}
