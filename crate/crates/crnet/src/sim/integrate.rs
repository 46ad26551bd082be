//! Numerical integration of the power-law ODE systems.
//!
//! The default integrator is the embedded Dormand–Prince 5(4) pair with a
//! proportional step controller; a fixed-step classical RK4 is kept for
//! convergence-order checks. Every Runge–Kutta step preserves the linear
//! conservation laws of the network up to floating-point roundoff, so the
//! reported `conservation_drift` is a roundoff diagnostic, not a truncation
//! measure.
//!
//! Fractional kinetic orders are undefined at zero concentration, so states
//! are kept strictly positive: a step that lands at or below the positivity
//! floor is retried with a smaller step and eventually reported as a
//! boundary error naming the species, never clipped.

use crate::error::{CrnError, Result};
use crate::network::{compile_ode, Bindings, CompiledOde, Network};

/// Integration controls.
#[derive(Clone, Debug)]
pub struct SimSettings {
    /// Time horizon; integration may stop earlier at a steady state.
    pub t_end: f64,
    /// Absolute error tolerance per component.
    pub atol: f64,
    /// Relative error tolerance per component.
    pub rtol: f64,
    /// Steady-state threshold on ‖dx/dt‖∞.
    pub steady_tol: f64,
    /// Consecutive accepted steps below `steady_tol` required to stop.
    pub steady_window: usize,
    /// Hard lower bound on concentrations.
    pub positivity_floor: f64,
    /// Abort after this many accepted steps.
    pub max_steps: usize,
    /// Initial step; estimated from the right-hand side when `None`.
    pub h0: Option<f64>,
    /// Step-size ceiling; `t_end / 50` when `None`. Keeps enough accepted
    /// steps near a steady state for the detection window to fill.
    pub h_max: Option<f64>,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            t_end: 1000.0,
            atol: 1e-10,
            rtol: 1e-8,
            steady_tol: 1e-9,
            steady_window: 10,
            positivity_floor: 1e-12,
            max_steps: 2_000_000,
            h0: None,
            h_max: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// ‖dx/dt‖∞ stayed below the threshold for the required window.
    SteadyState,
    /// Reached `t_end`.
    Horizon,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub species: Vec<String>,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub stop: StopReason,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
    /// ‖dx/dt‖∞ at the final state.
    pub final_rhs_norm: f64,
    /// max_t |Σx(t) − Σx(0)|.
    pub conservation_drift: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least one state")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one time")
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &x| a.max(x.abs()))
}

fn check_initial_state(ode: &CompiledOde, x0: &[f64], floor: f64) -> Result<()> {
    if x0.len() != ode.num_species() {
        return Err(CrnError::Invalid(format!(
            "initial state has {} entries for {} species",
            x0.len(),
            ode.num_species()
        )));
    }
    for (j, &x) in x0.iter().enumerate() {
        if !x.is_finite() || x <= floor {
            return Err(CrnError::Invalid(format!(
                "initial concentration of {} must be positive (got {x})",
                ode.species[j]
            )));
        }
    }
    Ok(())
}

fn total_drift(states: &[Vec<f64>]) -> f64 {
    let sum = |x: &[f64]| -> f64 { x.iter().sum() };
    let c0 = sum(&states[0]);
    states
        .iter()
        .fold(0.0f64, |d, x| d.max((sum(x) - c0).abs()))
}

/// Index of the first component at or below the floor, if any.
fn floor_violation(x: &[f64], floor: f64) -> Option<usize> {
    x.iter().position(|&v| !v.is_finite() || v <= floor)
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (row 7 of the tableau; FSAL).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Error weights b5 − b4.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Adaptive Dormand–Prince integration of `dx/dt = N·K(x)`.
pub fn integrate(
    net: &Network,
    bindings: &Bindings,
    x0: &[f64],
    settings: &SimSettings,
) -> Result<Trajectory> {
    let ode = compile_ode(net, bindings)?;
    check_initial_state(&ode, x0, settings.positivity_floor)?;
    let m = ode.num_species();


    let mut t = 0.0f64;
    let mut y = x0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; m]; 7];
    ode.rhs(&y, &mut k[0]);

    let h_cap = settings.h_max.unwrap_or(settings.t_end / 50.0);
    let mut h = settings
        .h0
        .unwrap_or_else(|| {
            let scale =
                (0.01 * (1.0 + inf_norm(&y)) / (1.0 + inf_norm(&k[0]))).clamp(1e-8, 1.0);
            scale.min(settings.t_end / 10.0)
        })
        .min(h_cap);

    let mut times = vec![0.0];
    let mut states = vec![y.clone()];
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut quiet_steps = 0usize;
    let mut stop = StopReason::Horizon;

    let mut y_try = vec![0.0; m];
    let mut stage = vec![0.0; m];
    let mut g6 = vec![0.0; m];
    // Step ceiling from the local eigenvalue estimate: explicit RK only
    // contracts toward an equilibrium while h·|λ| stays inside the stability
    // region, and steady-state detection relies on that contraction.
    let mut h_stab = f64::INFINITY;

    'outer: while t < settings.t_end {
        if accepted >= settings.max_steps {
            return Err(CrnError::Numerical(format!(
                "step budget of {} accepted steps exhausted at t = {t:.6e}",
                settings.max_steps
            )));
        }
        let h_min = 1e-13 * t.abs().max(1.0);
        if h < h_min {
            return Err(CrnError::Numerical(format!(
                "step size underflow (stiffness) at t = {t:.6e}"
            )));
        }
        h = h.min(h_cap).min(h_stab).min(settings.t_end - t);

        // Stages 2..7; k[0] carries f(t, y) from FSAL. The last stage point
        // (s = 5) equals the fifth-order solution, so k[6] = f(y_try).
        for s in 0..6 {
            if s == 5 {
                g6.copy_from_slice(&stage);
            }
            for j in 0..m {
                let mut acc = 0.0;
                for (i, a) in A[s].iter().enumerate().take(s + 1) {
                    acc += a * k[i][j];
                }
                stage[j] = y[j] + h * acc;
            }
            ode.rhs(&stage, &mut k[s + 1]);
        }
        for j in 0..m {
            let mut acc = 0.0;
            for i in 0..7 {
                acc += B5[i] * k[i][j];
            }
            y_try[j] = y[j] + h * acc;
        }

        // Scaled RMS error of the embedded pair.
        let mut err = 0.0f64;
        for j in 0..m {
            let mut e = 0.0;
            for i in 0..7 {
                e += E[i] * k[i][j];
            }
            let sc = settings.atol + settings.rtol * y[j].abs().max(y_try[j].abs());
            err += (h * e / sc) * (h * e / sc);
        }
        err = (err / m as f64).sqrt();

        if !err.is_finite() || err > 1.0 {
            rejected += 1;
            let shrink = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h *= shrink;
            continue;
        }
        if let Some(j) = floor_violation(&y_try, settings.positivity_floor) {
            rejected += 1;
            if h / 2.0 < h_min {
                return Err(CrnError::Numerical(format!(
                    "species {} reached the positivity floor {:.0e} at t = {t:.6e}",
                    ode.species[j], settings.positivity_floor
                )));
            }
            h /= 2.0;
            continue 'outer;
        }

        // Dominant-eigenvalue estimate from the two c = 1 stages; keep
        // h·|λ| ≤ 2 so the step map contracts near equilibria.
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for j in 0..m {
            num = num.max((k[6][j] - k[5][j]).abs());
            den = den.max((stage[j] - g6[j]).abs());
        }
        if den > 0.0 && num > 0.0 {
            h_stab = 2.0 * den / num;
        }

        // Accept: FSAL reuses stage 7 as the next first stage.
        t += h;
        y.copy_from_slice(&y_try);
        k.swap(0, 6);
        accepted += 1;
        times.push(t);
        states.push(y.clone());

        if inf_norm(&k[0]) < settings.steady_tol {
            quiet_steps += 1;
            if quiet_steps >= settings.steady_window {
                stop = StopReason::SteadyState;
                break;
            }
        } else {
            quiet_steps = 0;
        }

        h *= (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
    }

    let mut rhs_end = vec![0.0; m];
    ode.rhs(&y, &mut rhs_end);
    let conservation_drift = total_drift(&states);
    Ok(Trajectory {
        species: ode.species.clone(),
        times,
        states,
        stop,
        steps_accepted: accepted,
        steps_rejected: rejected,
        final_rhs_norm: inf_norm(&rhs_end),
        conservation_drift,
    })
}

/// Classical fixed-step RK4 to exactly `t_end` (last step shortened).
/// No steady-state detection: used for convergence-order measurements.
pub fn integrate_rk4(
    net: &Network,
    bindings: &Bindings,
    x0: &[f64],
    t_end: f64,
    step: f64,
) -> Result<Trajectory> {
    if !(step > 0.0) || !(t_end > 0.0) {
        return Err(CrnError::Invalid(
            "RK4 needs a positive step and horizon".into(),
        ));
    }
    let ode = compile_ode(net, bindings)?;
    let floor = 1e-12;
    check_initial_state(&ode, x0, floor)?;
    let m = ode.num_species();


    let mut t = 0.0f64;
    let mut y = x0.to_vec();
    let mut times = vec![0.0];
    let mut states = vec![y.clone()];
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]);
    let mut stage = vec![0.0; m];
    let mut steps = 0usize;

    while t < t_end {
        let h = step.min(t_end - t);
        ode.rhs(&y, &mut k1);
        for j in 0..m {
            stage[j] = y[j] + 0.5 * h * k1[j];
        }
        ode.rhs(&stage, &mut k2);
        for j in 0..m {
            stage[j] = y[j] + 0.5 * h * k2[j];
        }
        ode.rhs(&stage, &mut k3);
        for j in 0..m {
            stage[j] = y[j] + h * k3[j];
        }
        ode.rhs(&stage, &mut k4);
        for j in 0..m {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if let Some(j) = floor_violation(&y, floor) {
            return Err(CrnError::Numerical(format!(
                "species {} reached the positivity floor {floor:.0e} at t = {t:.6e}",
                ode.species[j]
            )));
        }
        t += h;
        steps += 1;
        times.push(t);
        states.push(y.clone());
    }

    ode.rhs(&y, &mut k1);
    let conservation_drift = total_drift(&states);
    Ok(Trajectory {
        species: ode.species.clone(),
        times,
        states,
        stop: StopReason::Horizon,
        steps_accepted: steps,
        steps_rejected: 0,
        final_rhs_norm: inf_norm(&k1),
        conservation_drift,
    })
}
