//! Monomial steady-state parametrizations from translated networks, and
//! log-space merging across an independent decomposition.
//!
//! For a translated network with deficiency zero, pick a spanning forest with
//! edge set E. The kinetic differences across tree edges form the matrix `M`
//! (support species × E); positive steady states are exactly
//!
//! ```text
//! x_j = Π_e κ_e^{H[e,j]} · Π_l τ_l^{B[j,l]},   κ_e = K_head(e)/K_tail(e)
//! ```
//!
//! where `H` is a generalized inverse of `M` supported on a pivot row set
//! (`H·M = I`), `B` spans `ker Mᵀ`, the `K`s are tree constants, and
//! `τ_l > 0` are free parameters.

use crate::error::{CrnError, Result};
use crate::exact::{integer_primitive, rat_to_f64, ExactMatrix, Rat};
use crate::network::{ode_rhs_exact, compile_ode, Bindings, Network, SymExpr};
use crate::steady::coeff::Coefficient;
use crate::steady::translate::TranslatedNetwork;
use crate::steady::trees::{tree_constants, TreeConstants};
use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A monomial parametrization of positive steady states.
#[derive(Clone, Debug)]
pub struct Parametrization {
    /// Global species indices, ascending.
    pub species: Vec<usize>,
    pub species_names: Vec<String>,
    /// Multiplicative coefficient per species (same order as `species`).
    pub coeffs: Vec<Coefficient>,
    /// Exponent row per species over the free parameters.
    pub exps: Vec<Vec<Rat>>,
    pub free_names: Vec<String>,
}

fn free_names(d: usize) -> Vec<String> {
    if d == 1 {
        vec!["tau".to_string()]
    } else {
        (1..=d).map(|i| format!("tau{i}")).collect()
    }
}

fn exp_display(e: &Rat) -> String {
    if e.is_integer() && e.is_positive() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl Parametrization {
    pub fn num_free(&self) -> usize {
        self.free_names.len()
    }

    pub fn row_of(&self, species: usize) -> Option<usize> {
        self.species.iter().position(|&s| s == species)
    }

    /// Human-readable lines, one per species:
    /// `a3 = (k3/(k4+k7)) * tau^(-1/2)`.
    pub fn display_lines(&self) -> Vec<String> {
        self.species_names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let mut factors: Vec<String> = Vec::new();
                let coeff = &self.coeffs[i];
                if !coeff.is_one() {
                    let s = coeff.to_string();
                    if s.contains('*') || s.contains('/') {
                        factors.push(format!("({s})"));
                    } else {
                        factors.push(s);
                    }
                }
                for (l, e) in self.exps[i].iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let t = &self.free_names[l];
                    if e.is_one() {
                        factors.push(t.clone());
                    } else {
                        factors.push(format!("{t}^{}", exp_display(e)));
                    }
                }
                if factors.is_empty() {
                    factors.push("1".to_string());
                }
                format!("{} = {}", name.to_lowercase(), factors.join(" * "))
            })
            .collect()
    }

    /// Exact state at given rates and free-parameter values; errs when a
    /// power has no exact rational value.
    pub fn eval_exact(&self, bindings: &Bindings, taus: &[Rat]) -> Result<Vec<Rat>> {
        assert_eq!(taus.len(), self.num_free());
        let mut out = Vec::with_capacity(self.species.len());
        for (i, coeff) in self.coeffs.iter().enumerate() {
            let mut v = coeff.eval_exact(bindings)?;
            for (tau, e) in taus.iter().zip(&self.exps[i]) {
                v *= crate::exact::rat_pow(tau, e)?;
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn eval_f64(&self, bindings: &Bindings, taus: &[f64]) -> Result<Vec<f64>> {
        assert_eq!(taus.len(), self.num_free());
        let mut out = Vec::with_capacity(self.species.len());
        for (i, coeff) in self.coeffs.iter().enumerate() {
            let mut v = coeff.eval_f64(bindings)?;
            for (tau, e) in taus.iter().zip(&self.exps[i]) {
                v *= tau.powf(rat_to_f64(e));
            }
            if !v.is_finite() || v <= 0.0 {
                return Err(CrnError::Numerical(format!(
                    "parametrized state has nonpositive or non-finite component {v}"
                )));
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Equality up to free-parameter rescaling: same species, exponent
    /// matrices related by an invertible rational change of basis, and
    /// coefficients equal (for one free parameter, a consistent rescaling of
    /// the parameter absorbing a fixed coefficient is also accepted).
    pub fn equivalent_to(&self, other: &Parametrization) -> bool {
        if self.species != other.species || self.num_free() != other.num_free() {
            return false;
        }
        let d = self.num_free();
        let rows = self.species.len();
        if d == 0 {
            return self.coeffs == other.coeffs;
        }
        let ea = ExactMatrix::from_fn(rows, d, |i, j| self.exps[i][j].clone());
        let eb = ExactMatrix::from_fn(rows, d, |i, j| other.exps[i][j].clone());
        // Solve eb · C = ea column by column via least squares with exact
        // arithmetic: C = (ebᵀ eb)⁻¹ ebᵀ ea, then verify.
        let ebt = eb.transpose();
        let gram = ebt.matmul(&eb);
        let inv = match gram.inverse() {
            Some(m) => m,
            None => return false, // degenerate exponent matrix
        };
        let c = inv.matmul(&ebt).matmul(&ea);
        if eb.matmul(&c) != ea {
            return false;
        }
        if c.rank() != d {
            return false;
        }
        if self.coeffs == other.coeffs {
            return true;
        }
        if d == 1 {
            // Allow τ' = s·τ^c: coefficients differ by s^{exponent}.
            let mut base: Option<(Coefficient, Rat)> = None;
            for i in 0..rows {
                let ratio = self.coeffs[i].div(&other.coeffs[i]);
                let e = &other.exps[i][0];
                if e.is_zero() {
                    if !ratio.is_one() {
                        return false;
                    }
                    continue;
                }
                match &base {
                    None => base = Some((ratio.pow(&(Rat::one() / e)), e.clone())),
                    Some((g, _)) => {
                        if g.pow(e) != ratio {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        false
    }
}

/// A parametrization of one translated network together with the linear
/// algebra behind it, for inspection and property checks.
#[derive(Clone, Debug)]
pub struct PartSolution {
    pub param: Parametrization,
    pub tree: TreeConstants,
    /// Indices into the translated network's edge list forming the spanning
    /// forest, in edge order.
    pub tree_edges: Vec<usize>,
    /// κ_e = K_head/K_tail per tree edge.
    pub kappa: Vec<Coefficient>,
    /// Kinetic differences across tree edges (support species × edges).
    pub m_matrix: ExactMatrix,
    /// Generalized inverse with H·M = I (edges × support species).
    pub h_matrix: ExactMatrix,
    /// Kernel basis of Mᵀ as columns (support species × free count).
    pub b_matrix: ExactMatrix,
    /// Global indices of the pivot species (rows carrying H).
    pub pivot_species: Vec<usize>,
}

/// Parametrize the positive steady states of a translated network.
///
/// `designated_free`: global species indices to keep out of the pivot set
/// when possible (their coefficients stay 1 and they align with free
/// parameters). With a single tree edge, every species with a nonzero
/// kinetic difference yields its own branch; all are returned.
pub fn parametrize(
    tn: &TranslatedNetwork,
    designated_free: &[usize],
) -> Result<Vec<PartSolution>> {
    let tree = tree_constants(tn)?;
    debug_assert_eq!(
        crate::steady::trees::tree_constants_matrix_tree(tn).unwrap(),
        tree.constants,
        "matrix-tree cross-check"
    );

    // Spanning forest in edge order.
    let n = tn.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut tree_edges = Vec::new();
    for (i, e) in tn.edges.iter().enumerate() {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a.max(b)] = a.min(b);
            tree_edges.push(i);
        }
    }
    debug_assert_eq!(tree_edges.len(), n - tn.num_linkage);
    let ne = tree_edges.len();

    let support = tn.support.clone();
    let m_matrix = ExactMatrix::from_fn(support.len(), ne, |i, j| {
        let e = &tn.edges[tree_edges[j]];
        tn.nodes[e.to].kinetic[support[i]].clone() - tn.nodes[e.from].kinetic[support[i]].clone()
    });
    if m_matrix.rank() != ne {
        return Err(CrnError::Unsupported(
            "kinetic differences across the spanning forest are rank-deficient; \
             the monomial parametrization does not apply"
                .into(),
        ));
    }

    let kappa: Vec<Coefficient> = tree_edges
        .iter()
        .map(|&ei| {
            let e = &tn.edges[ei];
            Coefficient::from_poly(&tree.constants[e.to], &tree.vars)
                .div(&Coefficient::from_poly(&tree.constants[e.from], &tree.vars))
        })
        .collect();

    // Kernel of Mᵀ with integer-primitive columns: the free-parameter
    // exponents.
    let b_cols: Vec<Vec<Rat>> = m_matrix
        .transpose()
        .null_space_basis()
        .into_iter()
        .map(|v| integer_primitive(&v))
        .collect();
    let d = b_cols.len();
    let b_matrix = ExactMatrix::from_fn(support.len(), d, |i, j| b_cols[j][i].clone());

    // Candidate pivot sets (local row indices into `support`).
    let allowed: Vec<usize> = (0..support.len())
        .filter(|&i| !designated_free.contains(&support[i]))
        .collect();
    let pivot_sets: Vec<Vec<usize>> = if ne == 0 {
        vec![Vec::new()]
    } else if ne == 1 {
        let mut sets: Vec<Vec<usize>> = allowed
            .iter()
            .copied()
            .filter(|&i| !m_matrix.at(i, 0).is_zero())
            .map(|i| vec![i])
            .collect();
        if sets.is_empty() {
            // Fall back on designated rows rather than fail.
            sets = (0..support.len())
                .filter(|&i| !m_matrix.at(i, 0).is_zero())
                .map(|i| vec![i])
                .collect();
        }
        if sets.is_empty() {
            return Err(CrnError::Unsupported(
                "all kinetic differences vanish; no pivot row available".into(),
            ));
        }
        sets
    } else {
        // Leftmost independent rows among the allowed ones.
        let restricted = m_matrix.select_rows(&allowed).transpose();
        let rref = restricted.rref();
        if rref.pivots.len() != ne {
            return Err(CrnError::Invalid(
                "designated free species leave no valid pivot set".into(),
            ));
        }
        vec![rref.pivots.iter().map(|&c| allowed[c]).collect()]
    };

    let mut out = Vec::with_capacity(pivot_sets.len());
    for pivots in pivot_sets {
        let mj = m_matrix.select_rows(&pivots);
        let inv = mj
            .inverse()
            .expect("pivot rows are independent by construction");
        let mut h_matrix = ExactMatrix::zeros(ne, support.len());
        for (t, &p) in pivots.iter().enumerate() {
            for e in 0..ne {
                h_matrix.set(e, p, inv.at(e, t).clone());
            }
        }
        debug_assert_eq!(
            h_matrix.matmul(&m_matrix),
            ExactMatrix::identity(ne),
            "H·M = I"
        );

        let coeffs: Vec<Coefficient> = (0..support.len())
            .map(|i| {
                let mut c = Coefficient::one();
                for e in 0..ne {
                    let exp = h_matrix.at(e, i);
                    if !exp.is_zero() {
                        c = c.mul(&kappa[e].pow(exp));
                    }
                }
                c
            })
            .collect();

        let exps: Vec<Vec<Rat>> = (0..support.len())
            .map(|i| (0..d).map(|j| b_matrix.at(i, j).clone()).collect())
            .collect();

        out.push(PartSolution {
            param: Parametrization {
                species: support.clone(),
                species_names: support.iter().map(|&s| tn.species[s].clone()).collect(),
                coeffs,
                exps,
                free_names: free_names(d),
            },
            tree: tree.clone(),
            tree_edges: tree_edges.clone(),
            kappa: kappa.clone(),
            m_matrix: m_matrix.clone(),
            h_matrix,
            b_matrix: b_matrix.clone(),
            pivot_species: pivots.iter().map(|&i| support[i]).collect(),
        });
    }
    Ok(out)
}

/// Merge parametrizations of independent parts into one for the union of
/// their species. Shared species induce exact log-linear constraints among
/// the parts' free parameters; the constraints are eliminated right-to-left
/// so the earliest part's parameters survive.
pub fn merge(parts: &[&Parametrization], species_names: &[String]) -> Result<Parametrization> {
    if parts.is_empty() {
        return Err(CrnError::Invalid("nothing to merge".into()));
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.num_free();
            Some(o)
        })
        .collect();
    let total: usize = parts.iter().map(|p| p.num_free()).sum();

    // Coverage: species → [(part, row)] in part order.
    let mut coverage: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (pi, p) in parts.iter().enumerate() {
        for (row, &s) in p.species.iter().enumerate() {
            coverage.entry(s).or_default().push((pi, row));
        }
    }

    // One equation per (first cover, later cover) pair of a shared species.
    struct Eq {
        lhs: Vec<Rat>,
        rhs: Coefficient,
    }
    let embed = |pi: usize, row: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); total];
        for (l, e) in parts[pi].exps[row].iter().enumerate() {
            v[offsets[pi] + l] = e.clone();
        }
        v
    };
    let mut eqs: Vec<Eq> = Vec::new();
    for covers in coverage.values() {
        let (p0, r0) = covers[0];
        for &(pi, ri) in &covers[1..] {
            let mut lhs = embed(p0, r0);
            for (slot, e) in lhs.iter_mut().zip(embed(pi, ri)) {
                *slot -= e;
            }
            let rhs = parts[pi].coeffs[ri].div(&parts[p0].coeffs[r0]);
            eqs.push(Eq { lhs, rhs });
        }
    }

    // Gauss–Jordan elimination with columns processed right-to-left.
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; total];
    let mut used = vec![false; eqs.len()];
    for col in (0..total).rev() {
        let Some(pe) = (0..eqs.len()).find(|&e| !used[e] && !eqs[e].lhs[col].is_zero()) else {
            continue;
        };
        used[pe] = true;
        pivot_of_col[col] = Some(pe);
        // Normalize the pivot row.
        let a = eqs[pe].lhs[col].clone();
        if !a.is_one() {
            for v in eqs[pe].lhs.iter_mut() {
                *v /= a.clone();
            }
            eqs[pe].rhs = eqs[pe].rhs.pow(&(Rat::one() / &a));
        }
        // Eliminate from every other equation.
        for e in 0..eqs.len() {
            if e == pe || eqs[e].lhs[col].is_zero() {
                continue;
            }
            let f = eqs[e].lhs[col].clone();
            let pivot_lhs = eqs[pe].lhs.clone();
            let pivot_rhs = eqs[pe].rhs.clone();
            for (slot, pv) in eqs[e].lhs.iter_mut().zip(&pivot_lhs) {
                *slot -= &f * pv;
            }
            eqs[e].rhs = eqs[e].rhs.div(&pivot_rhs.pow(&f));
        }
    }
    // Consistency: non-pivot equations must be trivial.
    for (e, eq) in eqs.iter().enumerate() {
        if !used[e] && eq.lhs.iter().all(|v| v.is_zero()) && !eq.rhs.is_one() {
            return Err(CrnError::Invalid(
                "parts admit no common positive steady state: merged constraints are inconsistent"
                    .into(),
            ));
        }
    }

    let free_cols: Vec<usize> = (0..total).filter(|&c| pivot_of_col[c].is_none()).collect();
    let d = free_cols.len();
    let names = free_names(d);

    // Substitute pivot variables into each species' expression.
    let merged_species: Vec<usize> = coverage.keys().copied().collect();
    let mut coeffs = Vec::with_capacity(merged_species.len());
    let mut exps = Vec::with_capacity(merged_species.len());
    for covers in coverage.values() {
        let (pi, row) = covers[0];
        let e = embed(pi, row);
        let mut coeff = parts[pi].coeffs[row].clone();
        let mut exp_row = vec![Rat::zero(); d];
        for (fi, &fc) in free_cols.iter().enumerate() {
            exp_row[fi] = e[fc].clone();
        }
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            let Some(pe) = pivot else { continue };
            if e[col].is_zero() {
                continue;
            }
            // v_col = log rhs − Σ_f a_f v_f  (pivot row is normalized).
            coeff = coeff.mul(&eqs[*pe].rhs.pow(&e[col]));
            for (fi, &fc) in free_cols.iter().enumerate() {
                exp_row[fi] -= &e[col] * &eqs[*pe].lhs[fc];
            }
        }
        coeffs.push(coeff);
        exps.push(exp_row);
    }

    Ok(Parametrization {
        species_names: merged_species
            .iter()
            .map(|&s| species_names[s].clone())
            .collect(),
        species: merged_species,
        coeffs,
        exps,
        free_names: names,
    })
}

/// Outcome of randomized verification of a parametrization.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub trials: usize,
    /// Trials where the state evaluated exactly and the rhs was exactly 0.
    pub exact_zero_trials: usize,
    /// Trials that fell back to floating point.
    pub float_trials: usize,
    /// Max |rhs| component over float trials (0 when none), and over any
    /// exact trial that failed to vanish.
    pub max_abs_residual: f64,
    /// False only if an exact trial produced a nonzero rhs.
    pub exact_consistent: bool,
}

/// Substitute the parametrization into the network's rate equations at
/// `trials` random positive rates and free-parameter values. Rates are drawn
/// from [0.1, 2] and free parameters from [0.5, 1.6] — windows that keep the
/// evaluated fluxes well conditioned, so a float-path residual above 1e−10
/// genuinely signals a wrong parametrization rather than cancellation noise.
/// `bindings` must bind everything else (kinetic orders). Exact zero is
/// asserted whenever every power evaluates exactly; otherwise the float
/// residual is recorded.
pub fn verify_parametrization(
    net: &Network,
    bindings: &Bindings,
    param: &Parametrization,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport> {
    // A species must be covered by the parametrization when it either moves
    // under some reaction or influences some rate; anything else is inert and
    // may sit at an arbitrary positive value (we use 1).
    let mut required = vec![false; net.num_species()];
    for (rix, r) in net.reactions.iter().enumerate() {
        for sp in 0..net.num_species() {
            if !(r.product.coeff(sp) - r.reactant.coeff(sp)).is_zero() {
                required[sp] = true;
            }
        }
        for (sp, order) in net.kinetic_order_row(rix, bindings)?.iter().enumerate() {
            if !order.is_zero() {
                required[sp] = true;
            }
        }
    }
    for s in 0..net.num_species() {
        if required[s] && param.row_of(s).is_none() {
            return Err(CrnError::Invalid(format!(
                "parametrization does not cover species `{}`",
                net.species[s]
            )));
        }
    }
    let rate_syms: Vec<String> = net
        .reactions
        .iter()
        .filter_map(|r| match &r.rate {
            SymExpr::Sym(s) => Some(s.clone()),
            SymExpr::Num(_) => None,
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_rate =
        |rng: &mut ChaCha8Rng| -> Rat { crate::exact::rat_frac(rng.gen_range(100..=2000i64), 1000) };
    let sample_tau =
        |rng: &mut ChaCha8Rng| -> Rat { crate::exact::rat_frac(rng.gen_range(500..=1600i64), 1000) };

    let mut report = VerifyReport {
        trials,
        exact_zero_trials: 0,
        float_trials: 0,
        max_abs_residual: 0.0,
        exact_consistent: true,
    };
    for _ in 0..trials {
        let mut bt = bindings.clone();
        for s in &rate_syms {
            bt.set(s, sample_rate(&mut rng));
        }
        let taus: Vec<Rat> = (0..param.num_free())
            .map(|_| sample_tau(&mut rng))
            .collect();

        // Exact route: state and rhs both evaluate as rationals. Any inexact
        // power along the way (fractional orders, irrational coefficients)
        // drops this trial to floating point.
        let exact_residual = param.eval_exact(&bt, &taus).and_then(|vals| {
            let mut x = vec![Rat::one(); net.num_species()];
            for (i, &s) in param.species.iter().enumerate() {
                x[s] = vals[i].clone();
            }
            ode_rhs_exact(net, &bt, &x)
        });
        match exact_residual {
            Ok(rhs) => {
                if rhs.iter().all(|v| v.is_zero()) {
                    report.exact_zero_trials += 1;
                } else {
                    report.exact_consistent = false;
                    let worst = rhs
                        .iter()
                        .map(|v| rat_to_f64(v).abs())
                        .fold(0.0f64, f64::max);
                    report.max_abs_residual = report.max_abs_residual.max(worst);
                }
            }
            Err(CrnError::Numerical(_)) => {
                let taus_f: Vec<f64> = taus.iter().map(rat_to_f64).collect();
                let vals = param.eval_f64(&bt, &taus_f)?;
                let mut x = vec![1.0; net.num_species()];
                for (i, &s) in param.species.iter().enumerate() {
                    x[s] = vals[i];
                }
                let ode = compile_ode(net, &bt)?;
                let mut rhs = vec![0.0; net.num_species()];
                ode.rhs(&x, &mut rhs);
                let worst = rhs.iter().map(|v| v.abs()).fold(0.0f64, f64::max);
                report.float_trials += 1;
                report.max_abs_residual = report.max_abs_residual.max(worst);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
