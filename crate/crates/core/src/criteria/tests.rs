use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fixtures::FIXTURES;
use super::*;
use crate::resolve::linearity_defect;
use crate::ringcore::{ideal_from_strs, ring_from_strs};
use crate::series::golod_map_check_ideal;

fn setup(vars: &[&str], rels: &[&str], gens: &[&str]) -> RingIdeal {
    let r = ring_from_strs(5, vars, rels).unwrap();
    ideal_from_strs(&r, gens).unwrap()
}

fn diagonal() -> RingIdeal {
    setup(&["x", "y", "z"], &["x^2", "y^2", "z^2"], &["x+y+z"])
}

#[test]
fn diagonal_form_fails_by_complete_intersection_rule() {
    let r = detect_large(&diagonal(), 6).unwrap();
    assert_eq!(r.status(), Status::FailsDecisive);
    assert_eq!(r.verdict.rule, "Thm-CI(2)");
    assert!(r.verdict.witness.is_some());
    assert_eq!(r.data["quotient"]["dim"], 3);
}

#[test]
fn non_golod_ring_quotient_is_ci() {
    let i = setup(&["x", "y", "z"], &["x^2", "xy", "xz", "y^2", "z^2"], &["x"]);
    let r = detect_large(&i, 6).unwrap();
    assert_eq!(
        (r.status(), r.verdict.rule.as_str()),
        (Status::HoldsDecisive, "quotient-CI")
    );
}

#[test]
fn maximal_and_zero_ideals_are_trivial() {
    let r = ring_from_strs(5, &["x", "y"], &["x^2", "y^3", "xy^2"]).unwrap();
    for gens in [&["x", "y"][..], &["0"][..]] {
        let rep = detect_large(&ideal_from_strs(&r, gens).unwrap(), 4).unwrap();
        assert_eq!(
            (rep.status(), rep.verdict.rule.as_str()),
            (Status::HoldsDecisive, "trivial")
        );
    }
}

#[test]
fn splitting_rule_on_fiber_products() {
    let i = setup(&["x", "y"], &["xy", "x^2", "y^3"], &["x"]);
    let opts = DetectOptions {
        order: vec![Rule::Splitting],
        golod_asserted: false,
    };
    let r = detect_large_with(&i, 4, &opts).unwrap();
    assert_eq!(
        (r.status(), r.verdict.rule.as_str()),
        (Status::HoldsDecisive, "splitting")
    );
    let i = setup(&["x", "y", "z"], &["x^2", "xy", "xz", "y^2", "yz", "z^3"], &["x"]);
    let r = detect_large(&i, 4).unwrap();
    assert_eq!(r.verdict.rule, "splitting");
    // x+y does not split off
    let i = setup(&["x", "y"], &["x^2", "y^2"], &["x+y"]);
    let r = detect_large_with(&i, 4, &opts).unwrap();
    assert_ne!(r.verdict.rule, "splitting");
}

#[test]
fn nc_failure_is_decisive() {
    let i = setup(&["x"], &["x^3"], &["x^2"]);
    let r = detect_large(&i, 4).unwrap();
    assert_eq!((r.status(), r.verdict.rule.as_str()), (Status::FailsDecisive, "NC"));
    assert_eq!(r.data["nc"], false);
}

#[test]
fn bad_inputs() {
    let r = ring_from_strs(5, &["x", "y"], &["x^2", "y^3"]).unwrap();
    let i = ideal_from_strs(&r, &["x+y^2"]).unwrap();
    assert_eq!(detect_large(&i, 3).unwrap_err().kind(), "NonHomogeneousIdeal");
    let i = ideal_from_strs(&r, &["1"]).unwrap();
    assert_eq!(detect_large(&i, 3).unwrap_err().kind(), "UnitIdeal");
}

#[test]
fn regular_sequence_only_for_empty_sequence() {
    let i = setup(&["x", "y"], &["x^2", "y^2"], &["x"]);
    let opts = DetectOptions {
        order: vec![Rule::RegularSequence],
        golod_asserted: false,
    };
    let r = detect_large_with(&i, 3, &opts).unwrap();
    assert_eq!(r.verdict.trace[1].outcome, "no decision");
    let z = setup(&["x", "y"], &["x^2", "y^2"], &["0"]);
    let r = detect_large_with(&z, 3, &opts).unwrap();
    assert_eq!(r.verdict.rule, "regular-sequence");
}

#[test]
fn annihilator_rule() {
    let i = setup(&["x", "y", "z"], &["x^2", "xy", "xz", "y^2", "z^2"], &["x"]);
    let opts = DetectOptions {
        order: vec![Rule::Annihilator],
        golod_asserted: false,
    };
    let r = detect_large_with(&i, 3, &opts).unwrap();
    assert_eq!(r.verdict.rule, "annihilator");
}

#[test]
fn golod_rule_needs_assertion_to_decide() {
    let i = setup(&["x", "y"], &["x^2", "xy", "y^2"], &["x"]);
    let mut opts = DetectOptions {
        order: vec![Rule::GolodSurjective],
        golod_asserted: false,
    };
    let r = detect_large_with(&i, 5, &opts).unwrap();
    assert_eq!(r.status(), Status::EvidenceUpTo(5));
    assert_eq!(r.data["evidence_rules"][0], "Golod-surjective");
    opts.golod_asserted = true;
    let r = detect_large_with(&i, 5, &opts).unwrap();
    assert_eq!(
        (r.status(), r.verdict.rule.as_str()),
        (Status::HoldsDecisive, "Golod-surjective")
    );
}

#[test]
fn koszul_module_rule() {
    let i = setup(&["x", "y"], &["x^2-y^2", "xy"], &["x"]);
    let opts = DetectOptions {
        order: vec![Rule::KoszulModule],
        golod_asserted: false,
    };
    let r = detect_large_with(&i, 4, &opts).unwrap();
    assert_eq!(
        (r.status(), r.verdict.rule.as_str()),
        (Status::HoldsDecisive, "Koszul-module")
    );
    // Not Gorenstein: only evidence.
    let i = setup(&["x", "y"], &["x^2", "xy", "y^2"], &["x"]);
    let r = detect_large_with(&i, 4, &opts).unwrap();
    assert_eq!(r.status(), Status::EvidenceUpTo(4));
}

#[test]
fn fallback_flags_open_question_profile() {
    let i = setup(&["x", "y"], &["x^2", "xy", "y^2"], &["x"]);
    let opts = DetectOptions {
        order: vec![],
        golod_asserted: false,
    };
    let r = detect_large_with(&i, 4, &opts).unwrap();
    assert_eq!(
        (r.status(), r.verdict.rule.as_str()),
        (Status::EvidenceUpTo(4), FALLBACK_TAG)
    );
    assert_eq!(r.data["open_question"], true);
    assert_eq!(r.data["annotations"]["tor_injective_through"], 4);
    let r = detect_large_with(&diagonal(), 4, &opts).unwrap();
    assert_eq!(r.status(), Status::FailsDecisive);
    assert_eq!(r.verdict.witness.as_ref().unwrap().degree, Some(2));
}

#[test]
fn rule_order_does_not_change_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for fx in FIXTURES {
        let ring = fx.ring().unwrap();
        let ideal = fx.ideal_in(&ring).unwrap();
        let base = detect_large(&ideal, 4).unwrap().status();
        for _ in 0..3 {
            let mut order = Rule::ALL.to_vec();
            order.shuffle(&mut rng);
            let opts = DetectOptions {
                order,
                golod_asserted: false,
            };
            let s = detect_large_with(&ideal, 4, &opts).unwrap().status();
            assert_eq!(s, base, "{} with {:?}", fx.name, opts.order);
        }
    }
}

#[test]
fn fixtures_reproduce() {
    for fx in FIXTURES {
        for o in fx.run(5).unwrap() {
            assert!(
                o.ok,
                "{}: {} expected {} got {}",
                fx.name, o.check, o.expected, o.actual
            );
        }
    }
}

#[test]
fn small_examples() {
    let r = ring_from_strs(5, &["x", "y"], &["x^2", "y^2"]).unwrap();
    let zero = ideal_from_strs(&r, &["0"]).unwrap();
    assert_eq!(check_small(&zero, 5).unwrap().status(), Status::EvidenceUpTo(5));
    let xy = ideal_from_strs(&r, &["xy"]).unwrap();
    assert_eq!(check_small(&xy, 5).unwrap().status(), Status::EvidenceUpTo(5));
    let d = diagonal();
    let m2 = d.times_maximal();
    assert_eq!(check_small(&m2, 5).unwrap().status(), Status::EvidenceUpTo(5));
    // k[x]/(x^3) -> k[x]/(x^2) is not small: Tor_2 lands in the wrong degree.
    let r = ring_from_strs(5, &["x"], &["x^3"]).unwrap();
    let rep = check_small(&ideal_from_strs(&r, &["x^2"]).unwrap(), 4).unwrap();
    assert_eq!(rep.status(), Status::FailsDecisive);
    assert_eq!(rep.verdict.witness.unwrap().degree, Some(2));
}

#[test]
fn tor_criterion_examples() {
    let i = setup(&["x", "y"], &["x^2", "y^2"], &["x"]);
    let r = thm_tor_check(&i, 5).unwrap();
    assert_eq!(r.status(), Status::EvidenceUpTo(5));
    assert_eq!(r.data["sides_agree"], true);
    assert_eq!(r.data["golod_map"]["status"], "EvidenceUpTo");
    let m = setup(&["x", "y"], &["x^2", "y^2"], &["x", "y"]);
    let r = thm_tor_check(&m, 4).unwrap();
    assert_eq!(r.data["sides_agree"], true);
    let z = setup(&["x", "y"], &["x^2", "y^2"], &["0"]);
    let r = thm_tor_check(&z, 4).unwrap();
    assert_eq!(r.status(), Status::EvidenceUpTo(4));
    assert_eq!(r.data["side2_holds"], true);
    let bad = setup(&["x"], &["x^3"], &["x^2"]);
    assert_eq!(thm_tor_check(&bad, 3).unwrap_err().kind(), "NCViolation");
}

#[test]
fn ci_report_examples() {
    let c = ci_conditions(&diagonal(), 4).unwrap();
    assert_eq!(c.exact(), [false; 5]);
    assert!(!c.large_to_n);
    let c = ci_conditions(&setup(&["x", "y"], &["x^2", "y^2"], &["x"]), 4).unwrap();
    assert_eq!(c.exact(), [true; 5]);
    assert!(c.large_to_n);
    let c = ci_conditions(&setup(&["x", "y", "z"], &["x^2", "y^2", "z^2"], &["x", "y", "z"]), 4).unwrap();
    assert_eq!(c.exact(), [true; 5]);
    let not_ci = setup(&["x", "y"], &["x^2", "xy", "y^2"], &["x"]);
    assert_eq!(ci_conditions(&not_ci, 3).unwrap_err().kind(), "NotCompleteIntersection");
    let r = ci_equivalence_report(&diagonal(), 4).unwrap();
    assert_eq!(r.status(), Status::FailsDecisive);
}

#[test]
fn gupta_examples() {
    let i = setup(&["x", "y"], &["x^2", "xy", "y^2"], &["x"]);
    assert_eq!(gupta_crosscheck(&i, 6).unwrap().status(), Status::EvidenceUpTo(6));
    let i = setup(&["x", "y", "z"], &["x^2", "xy", "xz", "y^2", "z^2"], &["x"]);
    let r = gupta_crosscheck(&i, 6).unwrap();
    assert_eq!(
        (r.status(), r.verdict.rule.as_str()),
        (Status::HoldsDecisive, "Gupta-contrapositive")
    );
    let z = setup(&["x", "y"], &["x^2", "xy", "y^2"], &["0"]);
    assert_eq!(gupta_crosscheck(&z, 6).unwrap().status(), Status::EvidenceUpTo(6));
    let r = gupta_crosscheck(&diagonal(), 4).unwrap();
    assert_eq!(r.status(), Status::Inapplicable);
}

#[test]
fn golod_quotient_by_mi_does_not_force_large() {
    let i = diagonal();
    let g = golod_map_check_ideal(&i.times_maximal(), 6).unwrap();
    assert!(g.status().is_positive());
    assert!(detect_large(&i, 6).unwrap().status().is_fail());
}

#[test]
fn large_over_koszul_ring_gives_golod_and_koszul_quotient() {
    for (vars, rels, gens) in [
        (&["x", "y"][..], &["x^2", "y^2"][..], &["x"][..]),
        (&["x", "y", "z"][..], &["x^2", "y^2", "z^2"][..], &["x", "y"][..]),
        (&["x", "y"][..], &["x^2", "xy", "y^2"][..], &["x+y"][..]),
    ] {
        let i = setup(vars, rels, gens);
        assert_eq!(detect_large(&i, 4).unwrap().status(), Status::HoldsDecisive);
        let mi = i.times_maximal();
        assert!(golod_map_check_ideal(&mi, 5).unwrap().status().is_positive());
        let s = crate::ringcore::quotient_ring(&mi).unwrap().target;
        assert!(
            linearity_defect(&FDModule::residue_field(&s).unwrap(), 4)
                .unwrap()
                .koszul_to_n
        );
    }
}
