//! Integration tests for the simulation layer: conservation, convergence
//! order, steady-state experiments, and the carbon-reduction region checks.

use crnet::analysis::RegimeClass;
use crnet::exact::{rat_frac, rat_int, rat_to_f64, Rat};
use crnet::models;
use crnet::network::{Bindings, Network};
use crnet::sim::{
    acr_experiment, box_max_sum, box_min_coord, integrate, integrate_rk4,
    multistationarity_experiment, reduction_check_doc, standard_initial_sets, RegionSpec,
    SimSettings, StopReason,
};
use crnet::steady::solve_builtin;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(model_id: &str, preset: &str) -> (Network, Bindings) {
    let model = models::builtin(model_id).unwrap();
    let bindings = model
        .default_rate_bindings()
        .merged_with(&models::order_preset(preset).unwrap());
    (model.network(), bindings)
}

#[test]
fn trajectories_conserve_mass_across_models() {
    let cases: [(&str, &str, Vec<f64>); 3] = [
        ("doc", "positive", vec![1.0, 0.9, 0.7, 0.4, 0.2]),
        ("dac", "q-null", vec![0.4, 0.4, 0.4, 0.4, 0.4]),
        ("doc-dac", "acr-generic", vec![0.5, 0.6, 0.4, 0.7, 0.3, 0.5]),
    ];
    for (model_id, preset, x0) in cases {
        let (net, bindings) = setup(model_id, preset);
        let traj = integrate(&net, &bindings, &x0, &SimSettings::default()).unwrap();
        assert_eq!(
            traj.stop,
            StopReason::SteadyState,
            "{model_id}/{preset} should settle"
        );
        assert!(traj.final_rhs_norm < 1e-9);
        assert!(
            traj.conservation_drift <= 1e-9,
            "{model_id}/{preset} drift {}",
            traj.conservation_drift
        );
        let t0: f64 = x0.iter().sum();
        let t1: f64 = traj.final_state().iter().sum();
        assert!((t1 - t0).abs() <= 1e-9);
    }
}

#[test]
fn fixed_step_error_decays_at_fourth_order() {
    let (net, bindings) = setup("dac", "acr-generic");
    let x0 = [1.0, 0.9, 0.7, 0.4, 0.2];
    let t_end = 2.0;
    let reference = integrate_rk4(&net, &bindings, &x0, t_end, 1.0 / 512.0).unwrap();
    let err_for = |h: f64| -> f64 {
        let traj = integrate_rk4(&net, &bindings, &x0, t_end, h).unwrap();
        traj.final_state()
            .iter()
            .zip(reference.final_state())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max)
    };
    let factor = err_for(1.0 / 16.0) / err_for(1.0 / 32.0);
    assert!(
        (12.0..=20.0).contains(&factor),
        "halving the step should cut the error ~16x, got {factor}"
    );
    // The conserved total stays at roundoff regardless of step size:
    // Runge–Kutta steps preserve linear first integrals exactly.
    for h in [1.0 / 4.0, 1.0 / 16.0] {
        let traj = integrate_rk4(&net, &bindings, &x0, t_end, h).unwrap();
        assert!(traj.conservation_drift < 1e-12, "drift at h={h}");
    }
}

#[test]
fn a_parametrized_steady_state_stays_put() {
    // P-null steady state of the ocean-capture model in the class T = 4:
    // (4 − 436/135, 8/5, 8/9, 4/9, 8/27).
    let (net, bindings) = setup("doc", "acr-p-null");
    let x0 = [
        104.0 / 135.0,
        8.0 / 5.0,
        8.0 / 9.0,
        4.0 / 9.0,
        8.0 / 27.0,
    ];
    let traj = integrate(&net, &bindings, &x0, &SimSettings::default()).unwrap();
    assert_eq!(traj.stop, StopReason::SteadyState);
    let worst = traj
        .states
        .iter()
        .flat_map(|s| s.iter().zip(&x0).map(|(a, b)| (a - b).abs()))
        .fold(0.0f64, f64::max);
    assert!(worst <= 1e-8, "drifted {worst} from the steady state");
}

#[test]
fn p_null_robustness_experiment_matches_frozen_values() {
    let (net, bindings) = setup("doc", "acr-p-null");
    let sets = standard_initial_sets(RegimeClass::PNull);
    let totals: Vec<f64> = sets.iter().map(|s| s.iter().sum()).collect();
    assert_eq!(totals, vec![3.6, 4.0, 4.5]);

    let exp = acr_experiment(&net, &bindings, &sets, &SimSettings::default()).unwrap();
    assert!(exp.agrees);
    assert_eq!(exp.robust, vec![1, 2, 3, 4]);
    assert_eq!(exp.non_robust, vec![0]);

    // Frozen steady values: the robust block is (8/5, 8/9, 4/9, 8/27) in
    // every class, and A1 absorbs the class total.
    let fixed = [8.0 / 5.0, 8.0 / 9.0, 4.0 / 9.0, 8.0 / 27.0];
    for (run, total) in exp.runs.iter().zip(&totals) {
        let steady = run.outcome.as_ref().unwrap();
        for (j, want) in fixed.iter().enumerate() {
            assert!(
                (steady[j + 1] - want).abs() < 1e-6,
                "species {} = {} want {want}",
                j + 1,
                steady[j + 1]
            );
        }
        let a1 = total - 436.0 / 135.0;
        assert!((steady[0] - a1).abs() < 1e-6, "A1 {} want {a1}", steady[0]);
    }
}

#[test]
fn q_null_robustness_experiment_fixes_only_a1() {
    let (net, bindings) = setup("doc", "acr-q-null");
    let sets = standard_initial_sets(RegimeClass::QNull);
    let exp = acr_experiment(&net, &bindings, &sets, &SimSettings::default()).unwrap();
    assert!(exp.agrees);
    assert_eq!(exp.robust, vec![0]);
    // A1* = (k1/k2)^{1/(p2−p1)} = (5/8)^{10/9}.
    let a1 = (5.0f64 / 8.0).powf(10.0 / 9.0);
    for run in &exp.runs {
        let steady = run.outcome.as_ref().unwrap();
        assert!((steady[0] - a1).abs() < 1e-6, "A1 {} want {a1}", steady[0]);
    }
}

#[test]
fn generic_orders_show_no_robustness() {
    let (net, bindings) = setup("doc", "acr-generic");
    let sets = standard_initial_sets(RegimeClass::Positive);
    let exp = acr_experiment(&net, &bindings, &sets, &SimSettings::default()).unwrap();
    assert!(exp.agrees);
    assert!(exp.robust.is_empty());
    assert_eq!(exp.non_robust, vec![0, 1, 2, 3, 4]);
}

#[test]
fn acr_verdicts_are_tolerance_stable() {
    let (net, bindings) = setup("doc", "acr-q-null");
    let sets = standard_initial_sets(RegimeClass::QNull);
    let coarse = SimSettings::default();
    let fine = SimSettings {
        atol: coarse.atol / 2.0,
        rtol: coarse.rtol / 2.0,
        ..SimSettings::default()
    };
    let exp_a = acr_experiment(&net, &bindings, &sets, &coarse).unwrap();
    let exp_b = acr_experiment(&net, &bindings, &sets, &fine).unwrap();
    assert_eq!(exp_a.robust, exp_b.robust);
    assert_eq!(exp_a.agrees, exp_b.agrees);
    for (ra, rb) in exp_a.runs.iter().zip(&exp_b.runs) {
        let (sa, sb) = (ra.outcome.as_ref().unwrap(), rb.outcome.as_ref().unwrap());
        for (a, b) in sa.iter().zip(sb) {
            assert!((a - b).abs() / a < 1e-4, "steady value moved {a} -> {b}");
        }
    }
}

#[test]
fn class_function_crossings_match_the_published_cases() {
    // P-null orders use the z-branch and cross once for a feasible total.
    // With q1 < q2 the conversion pair is self-reinforcing, so this unique
    // steady state repels: the perturbed probe must not sit still, and
    // running into the A2 = 0 boundary is a legitimate recorded outcome.
    let (net, bindings) = setup("doc", "p-null");
    let model = models::builtin("doc").unwrap();
    let sol = solve_builtin(model, &bindings).unwrap();
    let exp = multistationarity_experiment(
        &net,
        &bindings,
        sol.primary(),
        &rat_int(2),
        &SimSettings::default(),
        48,
    )
    .unwrap();
    assert_eq!(format!("{}", exp.report.branch), "z");
    assert_eq!(exp.report.roots.len(), 1);
    assert!(exp.checks[0].rhs_norm < 1e-9);
    match &exp.checks[0].perturbation {
        Ok(p) => assert!(!p.returned, "repelling state must not reattract"),
        Err(msg) => assert!(msg.contains("positivity floor"), "{msg}"),
    }

    // The stabilized P-null variant (q1 > q2) attracts its perturbation.
    let (net, bindings) = setup("doc", "acr-p-null");
    let sol = solve_builtin(model, &bindings).unwrap();
    let exp = multistationarity_experiment(
        &net,
        &bindings,
        sol.primary(),
        &rat_int(4),
        &SimSettings::default(),
        48,
    )
    .unwrap();
    assert_eq!(format!("{}", exp.report.branch), "z");
    assert_eq!(exp.report.roots.len(), 1);
    let p = exp.checks[0].perturbation.as_ref().unwrap();
    assert!(p.returned, "attracting steady state should reattract");

    // Negative orders cross exactly once for every total.
    let (net, bindings) = setup("doc", "negative");
    let sol = solve_builtin(model, &bindings).unwrap();
    for total in [1i64, 3, 7] {
        let exp = multistationarity_experiment(
            &net,
            &bindings,
            sol.primary(),
            &rat_int(total),
            &SimSettings::default(),
            32,
        )
        .unwrap();
        assert_eq!(format!("{}", exp.report.branch), "y");
        assert_eq!(exp.report.roots.len(), 1, "T = {total}");
        assert!(exp.checks[0].rhs_norm < 1e-9);
    }
}

/// Vertices of {l ≤ x ≤ u, Σx = T}: every vertex fixes all but one
/// coordinate at a bound, and the free coordinate absorbs the remainder.
fn polytope_vertices(region: &RegionSpec, total: &Rat) -> Vec<Vec<Rat>> {
    let m = region.lower.len();
    let mut vertices = Vec::new();
    for free in 0..m {
        let others: Vec<usize> = (0..m).filter(|&i| i != free).collect();
        for mask in 0u32..(1 << others.len()) {
            let mut x = vec![Rat::zero(); m];
            let mut rest = Rat::zero();
            for (b, &i) in others.iter().enumerate() {
                x[i] = if mask >> b & 1 == 1 {
                    region.upper[i].clone()
                } else {
                    region.lower[i].clone()
                };
                rest += x[i].clone();
            }
            let xf = total - &rest;
            if xf >= region.lower[free] && xf <= region.upper[free] {
                x[free] = xf;
                if !vertices.contains(&x) {
                    vertices.push(x);
                }
            }
        }
    }
    vertices
}

#[test]
fn greedy_box_optimization_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(1105);
    for case in 0..100 {
        let mut lower = Vec::with_capacity(5);
        let mut upper = Vec::with_capacity(5);
        for _ in 0..5 {
            let l = rat_frac(rng.gen_range(0..=200), 100);
            let w = rat_frac(rng.gen_range(0..=300), 100);
            upper.push(&l + &w);
            lower.push(l);
        }
        let lsum: Rat = lower.iter().cloned().sum();
        let usum: Rat = upper.iter().cloned().sum();
        let lambda = rat_frac(rng.gen_range(0..=100), 100);
        let total = &lsum + &(&lambda * &(&usum - &lsum));

        let region = RegionSpec::new(lower, upper);
        region.validate(5, &total).unwrap();
        let vertices = polytope_vertices(&region, &total);
        assert!(!vertices.is_empty(), "case {case}: no vertices");

        for j in 0..5 {
            let oracle = vertices.iter().map(|v| v[j].clone()).min().unwrap();
            assert_eq!(
                box_min_coord(&region, &total, j),
                oracle,
                "case {case}: min of coordinate {j}"
            );
        }
        for group in [vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![2], vec![1, 2]] {
            let oracle = vertices
                .iter()
                .map(|v| group.iter().map(|&i| v[i].clone()).sum::<Rat>())
                .max()
                .unwrap();
            assert_eq!(
                box_max_sum(&region, &total, &group),
                oracle,
                "case {case}: max over {group:?}"
            );
        }
    }
}

#[test]
fn doc_reduction_verdict_predicts_the_dynamics() {
    // P-null orders: the steady atmospheric pool is A3* = 8/9 in every
    // class. A region with A2 ≥ 1.8 > A2* = 8/5 and A3 ≥ 1.2 satisfies the
    // sufficient condition at T = 5, so every trajectory from the region
    // must end with less A3 than it started with.
    let (net, bindings) = setup("doc", "acr-p-null");
    let region = RegionSpec::new(
        vec![
            rat_frac(1, 10),
            rat_frac(9, 5),
            rat_frac(6, 5),
            rat_frac(1, 10),
            rat_frac(1, 10),
        ],
        vec![
            rat_int(1),
            rat_frac(5, 2),
            rat_int(3),
            rat_int(1),
            rat_int(1),
        ],
    );
    let total = rat_int(5);
    let rep = reduction_check_doc(&bindings, &total, &region).unwrap();
    assert!(rep.holds, "margin {}", rep.margin);
    assert_eq!(rep.lhs, rat_frac(5, 9));

    let vertices = polytope_vertices(&region, &total);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for point in 0..20 {
        // Random convex combination of the vertices lies in the region.
        let weights: Vec<f64> = (0..vertices.len())
            .map(|_| -f64::ln(rng.gen_range(1e-12..1.0f64)))
            .collect();
        let wsum: f64 = weights.iter().sum();
        let mut x0 = vec![0.0f64; 5];
        for (v, w) in vertices.iter().zip(&weights) {
            for (xj, vj) in x0.iter_mut().zip(v) {
                *xj += w / wsum * rat_to_f64(vj);
            }
        }
        let traj = integrate(&net, &bindings, &x0, &SimSettings::default()).unwrap();
        assert_eq!(traj.stop, StopReason::SteadyState, "point {point}");
        let a3_initial = x0[2];
        let a3_final = traj.final_state()[2];
        assert!(
            a3_final < a3_initial,
            "point {point}: A3 {a3_initial} -> {a3_final}"
        );
    }
}
