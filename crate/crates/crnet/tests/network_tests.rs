//! Structural goldens for the built-in networks: network numbers, flags
//! with exact certificates, matrix identities, and parser edge cases.

use crnet::error::CrnError;
use crnet::exact::{rat_int, Rat};
use crnet::models::builtin;
use crnet::network::{
    network_numbers, ode_rhs, parse_network, structural_flags, Bindings, Network, TriState,
};
use num::Zero;

fn model_network(id: &str) -> Network {
    builtin(id).expect("builtin model").network()
}

#[test]
fn network_numbers_match_the_published_tables() {
    // (m, n, n_r, r_rev, r_irrev, r, ℓ, sℓ, t, s, δ)
    let doc = network_numbers(&model_network("doc"));
    assert_eq!(doc.as_tuple(), (5, 6, 6, 2, 3, 7, 2, 2, 2, 4, 0));

    let dac = network_numbers(&model_network("dac"));
    assert_eq!(dac.as_tuple(), (5, 6, 6, 2, 3, 7, 2, 2, 2, 4, 0));

    let both = network_numbers(&model_network("doc-dac"));
    assert_eq!(both.as_tuple(), (6, 7, 7, 2, 5, 9, 2, 2, 2, 5, 0));
}

#[test]
fn a_reversible_pair_has_the_trivial_numbers() {
    let net = parse_network(
        "network pair\nspecies A B\nreaction R1: A -> B rate k1\nreaction R2: B -> A rate k2\n",
    )
    .unwrap();
    let numbers = network_numbers(&net);
    assert_eq!(numbers.as_tuple(), (2, 2, 2, 1, 0, 2, 1, 1, 1, 1, 0));
}

#[test]
fn structural_flags_hold_with_verified_certificates() {
    for id in ["doc", "dac", "doc-dac"] {
        let net = model_network(id);
        let flags = structural_flags(&net);
        assert!(flags.weakly_reversible, "{id}: weakly reversible");
        assert!(flags.conservative, "{id}: conservative");
        assert!(flags.positively_dependent, "{id}: positively dependent");
        assert!(
            flags.independent_linkage_classes,
            "{id}: independent linkage classes"
        );
        assert!(flags.maximally_closed, "{id}: maximally closed");
        assert!(flags.high_reactant_diversity, "{id}: reactant diversity");
        assert_eq!(flags.concordant, TriState::Unsupported);

        let n = net.stoichiometric_matrix();

        // wᵀN = 0 with w strictly positive.
        let w = flags.conservation_certificate.expect("conservation certificate");
        assert_eq!(w.len(), net.num_species());
        assert!(w.iter().all(|v| v > &Rat::zero()), "{id}: w > 0");
        for j in 0..net.num_reactions() {
            let dot: Rat = (0..net.num_species())
                .map(|i| &w[i] * n.at(i, j))
                .sum();
            assert!(dot.is_zero(), "{id}: wᵀN column {j}");
        }

        // Nα = 0 with α strictly positive.
        let alpha = flags.dependency_certificate.expect("dependency certificate");
        assert_eq!(alpha.len(), net.num_reactions());
        assert!(alpha.iter().all(|v| v > &Rat::zero()), "{id}: α > 0");
        let residual = n.matvec(&alpha);
        assert!(residual.iter().all(Rat::is_zero), "{id}: Nα = 0");
    }
}

#[test]
fn an_irreversible_chain_keeps_mass_but_is_not_weakly_reversible() {
    let net = parse_network(
        "network chain\nspecies A B C\nreaction R1: A -> B rate 1\nreaction R2: B -> C rate 1\n",
    )
    .unwrap();
    let flags = structural_flags(&net);
    assert!(!flags.weakly_reversible);
    assert!(flags.conservative);
    // The two reaction vectors are linearly independent, so no positive
    // (indeed no nonzero) dependency exists.
    assert!(!flags.positively_dependent);
    assert!(flags.dependency_certificate.is_none());
    assert!(flags.independent_linkage_classes);
    assert!(flags.maximally_closed);
    assert!(!flags.high_reactant_diversity); // n_r = 2 = s
}

#[test]
fn molecularity_times_incidence_reproduces_stoichiometry() {
    for id in ["doc", "dac", "doc-dac"] {
        let net = model_network(id);
        let y = net.molecularity_matrix();
        let ia = net.incidence_matrix();
        assert_eq!(y.matmul(&ia), net.stoichiometric_matrix(), "{id}: Y·I_a = N");
    }
}

#[test]
fn ode_rhs_matches_the_displayed_derivative() {
    let net = model_network("doc");
    let bindings = Bindings::parse(
        "k1=1/2 k2=4/5 k3=1/2 k4=7/10 k5=2/5 k6=3/5 k7=1/5 p1=1 q1=3/2 p2=1 q2=1/2",
    )
    .unwrap();
    let rhs = ode_rhs(&net, &bindings, &[1.0, 1.0, 1.0, 1.0, 1.0]).unwrap();
    // da3/dt = k3 − k4 − k7 at the all-ones state.
    assert!((rhs[2] - (0.5 - 0.7 - 0.2)).abs() < 1e-14);
    // The all-ones vector is a conservation law, so the components sum to 0.
    assert!(rhs.iter().sum::<f64>().abs() < 1e-14);
}

#[test]
fn zero_concentration_under_fractional_order_is_a_domain_error() {
    let net = model_network("doc");
    let bindings = Bindings::parse(
        "k1=1/2 k2=4/5 k3=1/2 k4=7/10 k5=2/5 k6=3/5 k7=1/5 p1=1 q1=3/2 p2=1 q2=1/2",
    )
    .unwrap();
    let err = ode_rhs(&net, &bindings, &[1.0, 0.0, 1.0, 1.0, 1.0]).unwrap_err();
    match err {
        CrnError::Invalid(msg) => assert!(msg.contains("A2"), "names the species: {msg}"),
        other => panic!("expected an invalid-input error, got {other:?}"),
    }
    // Integer orders at the same state are fine.
    let ok = ode_rhs(
        &net,
        &Bindings::parse("k1=1/2 k2=4/5 k3=1/2 k4=7/10 k5=2/5 k6=3/5 k7=1/5 p1=1 q1=2 p2=1 q2=1")
            .unwrap(),
        &[1.0, 0.0, 1.0, 1.0, 1.0],
    );
    assert!(ok.is_ok());
}

#[test]
fn network_numbers_survive_reaction_reordering() {
    let original = model_network("doc");
    let reference = network_numbers(&original);

    // Re-parse with the reactions cyclically rotated and fully reversed.
    let base: Vec<&str> = vec![
        "reaction R1: A1 + 2 A2 -> 2 A1 + A2 rate k1 orders A1=p1 A2=q1",
        "reaction R2: 2 A1 + A2 -> A1 + 2 A2 rate k2 orders A1=p2 A2=q2",
        "reaction R3: A2 -> A3 rate k3",
        "reaction R4: A3 -> A2 rate k4",
        "reaction R5: A4 -> A2 rate k5",
        "reaction R6: A17 -> A4 rate k6",
        "reaction R7: A3 -> A17 rate k7",
    ];
    let mut orderings: Vec<Vec<&str>> = Vec::new();
    for shift in [1, 3, 5] {
        let mut v = base.clone();
        v.rotate_left(shift);
        orderings.push(v);
    }
    let mut reversed = base.clone();
    reversed.reverse();
    orderings.push(reversed);

    for lines in orderings {
        let text = format!(
            "network doc\nspecies A1 A2 A3 A4 A17\n{}\n",
            lines.join("\n")
        );
        let net = parse_network(&text).unwrap();
        assert_eq!(network_numbers(&net), reference);
    }
}

#[test]
fn mass_action_default_orders_equal_reactant_coefficients() {
    let net = parse_network(
        "network ma\nspecies A B C\nreaction R1: A + 2 B -> C rate k\n",
    )
    .unwrap();
    let f = net.kinetic_order_matrix(&Bindings::new()).unwrap();
    assert_eq!(f.nrows(), 1);
    assert_eq!(f.row_vec(0), vec![rat_int(1), rat_int(2), rat_int(0)]);
}

#[test]
fn parser_rejects_malformed_inputs() {
    // Unknown species in a complex.
    let err = parse_network("network x\nspecies A\nreaction R1: A -> A9 rate 1\n").unwrap_err();
    assert!(matches!(err, CrnError::Parse { line: 3, .. }), "{err}");

    // Duplicate reaction label.
    let err = parse_network(
        "network x\nspecies A B\nreaction R1: A -> B rate 1\nreaction R1: B -> A rate 1\n",
    )
    .unwrap_err();
    assert!(matches!(err, CrnError::Parse { line: 4, .. }), "{err}");

    // Nonpositive numeric rate.
    let err =
        parse_network("network x\nspecies A B\nreaction R1: A -> B rate -2\n").unwrap_err();
    assert!(matches!(err, CrnError::Parse { line: 3, .. }), "{err}");
}
