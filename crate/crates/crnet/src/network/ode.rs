//! ODE right-hand sides for power-law kinetics:
//! `dx/dt = N · K(x)` with `K_i(x) = k_i · Π_j x_j^{F_ij}`.

use super::{Bindings, Network};
use crate::error::{CrnError, Result};
use crate::exact::{rat_pow, rat_to_f64, Rat};
use num::ToPrimitive;

/// A network with all symbols resolved, ready for fast numeric evaluation.
#[derive(Clone, Debug)]
pub struct CompiledOde {
    pub species: Vec<String>,
    /// Stoichiometric matrix (m × r), as `f64`.
    pub n: Vec<Vec<f64>>,
    /// Kinetic-order matrix (r × m), as `f64`.
    pub orders: Vec<Vec<f64>>,
    /// Integer view of the orders when all are integral (enables the exact
    /// power fast path and evaluation at zero concentrations).
    pub orders_int: Option<Vec<Vec<i32>>>,
    /// Rate constants in reaction order.
    pub rates: Vec<f64>,
    /// Exact copies for rational evaluation.
    pub n_exact: Vec<Vec<Rat>>,
    pub orders_exact: Vec<Vec<Rat>>,
    pub rates_exact: Vec<Rat>,
}

/// Resolve all symbols of `net` against `bindings`.
pub fn compile_ode(net: &Network, bindings: &Bindings) -> Result<CompiledOde> {
    let n_exact_m = net.stoichiometric_matrix();
    let f_exact_m = net.kinetic_order_matrix(bindings)?;
    let rates_exact = net.numeric_rates(bindings)?;

    let n_exact: Vec<Vec<Rat>> = (0..n_exact_m.nrows()).map(|i| n_exact_m.row_vec(i)).collect();
    let orders_exact: Vec<Vec<Rat>> =
        (0..f_exact_m.nrows()).map(|i| f_exact_m.row_vec(i)).collect();

    let orders_int = orders_exact
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| if v.is_integer() { v.numer().to_i32() } else { None })
                .collect::<Option<Vec<i32>>>()
        })
        .collect::<Option<Vec<Vec<i32>>>>();

    Ok(CompiledOde {
        species: net.species.clone(),
        n: n_exact_m.to_f64(),
        orders: f_exact_m.to_f64(),
        orders_int,
        rates: rates_exact.iter().map(rat_to_f64).collect(),
        n_exact,
        orders_exact,
        rates_exact,
    })
}

impl CompiledOde {
    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.rates.len()
    }

    /// Reaction fluxes `K_i(x)`.
    pub fn flux(&self, x: &[f64], out: &mut [f64]) {
        for (i, f) in out.iter_mut().enumerate() {
            let mut v = self.rates[i];
            match &self.orders_int {
                Some(oi) => {
                    for (j, &p) in oi[i].iter().enumerate() {
                        if p != 0 {
                            v *= x[j].powi(p);
                        }
                    }
                }
                None => {
                    for (j, &p) in self.orders[i].iter().enumerate() {
                        if p != 0.0 {
                            v *= x[j].powf(p);
                        }
                    }
                }
            }
            *f = v;
        }
    }

    /// Right-hand side `dx/dt = N · K(x)` into `out`.
    pub fn rhs(&self, x: &[f64], out: &mut [f64]) {
        let r = self.num_reactions();
        let mut fluxes = vec![0.0; r];
        self.flux(x, &mut fluxes);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (rho, fl) in fluxes.iter().enumerate() {
                let c = self.n[i][rho];
                if c != 0.0 {
                    acc += c * fl;
                }
            }
            *o = acc;
        }
    }

    /// Exact rational right-hand side. Requires every x_j^{F_ij} to exist
    /// over the rationals (integer orders, or exact roots).
    pub fn rhs_exact(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        use num::Zero;
        let r = self.num_reactions();
        let m = self.num_species();
        let mut fluxes = Vec::with_capacity(r);
        for i in 0..r {
            let mut v = self.rates_exact[i].clone();
            for j in 0..m {
                let p = &self.orders_exact[i][j];
                if !p.is_zero() {
                    v *= rat_pow(&x[j], p)?;
                }
            }
            fluxes.push(v);
        }
        Ok((0..m)
            .map(|i| {
                let mut acc = Rat::zero();
                for (rho, fl) in fluxes.iter().enumerate() {
                    let c = &self.n_exact[i][rho];
                    if !c.is_zero() {
                        acc += c * fl;
                    }
                }
                acc
            })
            .collect())
    }
}

/// One-shot f64 right-hand side.
pub fn ode_rhs(net: &Network, bindings: &Bindings, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != net.num_species() {
        return Err(CrnError::Invalid(format!(
            "state has {} entries for {} species",
            x.len(),
            net.num_species()
        )));
    }
    let ode = compile_ode(net, bindings)?;
    // A nonpositive concentration under a fractional order leaves the power
    // undefined over the reals; flag it instead of returning NaN.
    for (j, &xj) in x.iter().enumerate() {
        if xj <= 0.0 {
            for row in &ode.orders_exact {
                if !row[j].is_integer() {
                    return Err(CrnError::Invalid(format!(
                        "species {} has nonpositive concentration {} under fractional kinetic order {}",
                        ode.species[j], xj, row[j]
                    )));
                }
            }
        }
    }
    let mut out = vec![0.0; x.len()];
    ode.rhs(x, &mut out);
    Ok(out)
}

/// One-shot exact-rational right-hand side.
pub fn ode_rhs_exact(net: &Network, bindings: &Bindings, x: &[Rat]) -> Result<Vec<Rat>> {
    if x.len() != net.num_species() {
        return Err(CrnError::Invalid(format!(
            "state has {} entries for {} species",
            x.len(),
            net.num_species()
        )));
    }
    compile_ode(net, bindings)?.rhs_exact(x)
}
