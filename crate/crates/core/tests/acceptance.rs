//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr
//! (bypassing the capture) and then asserts. Tolerance is exact equality.

mod common;

use std::io::Write;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use largehom::criteria::fixtures::FIXTURES;
use largehom::criteria::{
    ci_conditions, detect_large, detect_large_with, gupta_crosscheck, thm_tor_check, DetectOptions, LargeProfile, Rule,
};
use largehom::koszul::{lemma_power_check, ring_homology};
use largehom::report::Status;
use largehom::resolve::{linearity_defect, poincare_coeffs, FDModule};
use largehom::ringcore::{annihilator, quotient_ring, ring_from_strs, Ring, RingIdeal};
use largehom::series::{
    ci_check, deviations, golod_bound, golod_map_check_ideal, golod_ring_check, poincare_series, TruncatedSeries,
};
use largehom::Error;

use common::{binomial, ci_instance, general_instance, random_module, tor_k_m};

const N: usize = 6;

fn report(k: usize, name: &str, ok: bool, detail: &str) {
    let line = format!(
        "criterion {k} {name}: {} (exact equality; {detail})\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {k} {name} failed: {detail}");
}

fn fixture(name: &str) -> (Ring, RingIdeal) {
    let f = largehom::criteria::fixtures::get(name).unwrap();
    let ring = f.ring().unwrap();
    let ideal = f.ideal_in(&ring).unwrap();
    (ring, ideal)
}

fn same_ideal(a: &RingIdeal, b: &RingIdeal) -> bool {
    a.dim() == b.dim() && b.gens().iter().all(|g| a.contains(g))
}

/// `Q/n^p` for `Q = k[x_1..x_n]`.
fn power_ring(nvars: usize, p: u32) -> Ring {
    let vars = &common::VARS[..nvars];
    let mut rels = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        if exps.iter().sum::<u32>() == p {
            let m: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| format!("{}^{}", vars[i], e))
                .collect();
            rels.push(m.join("*"));
        }
        let mut i = 0;
        while i < nvars && exps[i] == p {
            exps[i] = 0;
            i += 1;
        }
        if i == nvars {
            break;
        }
        exps[i] += 1;
    }
    let refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    ring_from_strs(5, vars, &refs).unwrap()
}

/// Ideals generated by a subset of the variables and one form with
/// nonzero random coefficients.
fn subset_plus_form(ring: &Ring, rng: &mut ChaCha8Rng) -> Vec<RingIdeal> {
    let lb = ring.linear_basis().to_vec();
    let p = ring.field().p();
    (0..1usize << lb.len())
        .map(|mask| {
            let mut gens: Vec<Vec<u32>> = Vec::new();
            for (i, &b) in lb.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let mut v = vec![0u32; ring.dim()];
                    v[b] = 1;
                    gens.push(v);
                }
            }
            let mut g = vec![0u32; ring.dim()];
            for &b in &lb {
                g[b] = rng.gen_range(1..p);
            }
            gens.push(g);
            RingIdeal::from_elements(ring, gens).trimmed()
        })
        .collect()
}

fn power_rings() -> Vec<(usize, u32, Ring)> {
    let mut out = Vec::new();
    for nvars in 1..=3 {
        for p in 2..=3 {
            out.push((nvars, p, power_ring(nvars, p)));
        }
    }
    out
}

#[test]
fn criterion_01_diagonal_form() {
    let (ring, ideal) = fixture("diagonal-form");
    let large = detect_large(&ideal, N).unwrap();
    let large_ok = large.status() == Status::FailsDecisive && large.verdict.rule == "Thm-CI(2)";
    let s = quotient_ring(&ideal).unwrap().target;
    let presents = s.hilbert_function() == vec![1, 2] && s.embdim() == 2;
    let s_ci = ci_check(&s).unwrap();
    let mi = ideal.times_maximal();
    let m2 = RingIdeal::maximal(&ring).power(2);
    let mi_ok = same_ideal(&mi, &m2) && mi.dim() == 4;
    let golod = golod_map_check_ideal(&mi, N).unwrap();
    let ok = large_ok && presents && !s_ci && mi_ok && golod.status().is_positive();
    report(
        1,
        "diagonal form",
        ok,
        &format!(
            "check-large {} via {}; R/I Hilbert {:?}, ci {}; mI = m^2 {}; Golod map R -> R/mI {} to N={N}",
            large.status().name(),
            large.verdict.rule,
            s.hilbert_function(),
            s_ci,
            mi_ok,
            golod.status().name()
        ),
    );
}

#[test]
fn criterion_02_non_golod() {
    let (ring, ideal) = fixture("non-golod");
    let large = detect_large(&ideal, N).unwrap();
    let large_ok = large.status() == Status::HoldsDecisive && large.verdict.rule == "quotient-CI";
    let golod = golod_ring_check(&ring, N).unwrap();
    let d = golod.verdict.witness.as_ref().and_then(|w| w.degree);
    let actual = poincare_series(&ring, N).unwrap();
    let bound = golod_bound(&ring, N).unwrap();
    let first_ok = match d {
        Some(d) => (0..d).all(|i| actual.coeff(i) == bound.coeff(i)) && actual.coeff(d) != bound.coeff(d),
        None => false,
    };
    let gupta = gupta_crosscheck(&ideal, N).unwrap();
    let gupta_ok = gupta.status() == Status::HoldsDecisive && gupta.verdict.rule == "Gupta-contrapositive";
    let ok = large_ok && golod.status().is_fail() && first_ok && gupta_ok;
    report(
        2,
        "non-Golod ring",
        ok,
        &format!(
            "check-large {} via {}; Golod ring fails at t^{:?} ({} vs bound {}); Gupta {} via {}",
            large.status().name(),
            large.verdict.rule,
            d,
            d.map(|d| actual.coeff(d).to_string()).unwrap_or_default(),
            d.map(|d| bound.coeff(d).to_string()).unwrap_or_default(),
            gupta.status().name(),
            gupta.verdict.rule
        ),
    );
}

#[test]
fn criterion_03_ci_six_way() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut disagreements = Vec::new();
    let mut s_ci = 0;
    for _ in 0..50 {
        let inst = ci_instance(&mut rng);
        match ci_conditions(&inst.ideal, 5) {
            Ok(c) => {
                if c.s_complete_intersection {
                    s_ci += 1;
                }
            }
            Err(e) => disagreements.push(format!("{}: {e}", inst.label)),
        }
    }
    report(
        3,
        "complete intersection six-way agreement",
        disagreements.is_empty(),
        &format!(
            "50 instances, {s_ci} with R/I CI, {} disagreements {:?}",
            disagreements.len(),
            disagreements
        ),
    );
}

#[test]
fn criterion_04_tor_vanishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut decisive, mut both, mut bad) = (0, 0, Vec::new());
    for _ in 0..50 {
        let inst = ci_instance(&mut rng);
        let r = match thm_tor_check(&inst.ideal, 5) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{}: {e}", inst.label));
                continue;
            }
        };
        let status = r.data["large"]["status"].as_str().unwrap();
        if status != "HoldsDecisive" && status != "FailsDecisive" {
            continue;
        }
        decisive += 1;
        let side1 = r.data["side1_zero"].as_bool().unwrap();
        let side2 = r.data["side2_holds"].as_bool().unwrap();
        if side1 != side2 {
            bad.push(format!("{}: side1 {side1}, side2 {side2}", inst.label));
        }
        if side1 && side2 {
            both += 1;
            if r.data["golod_map"]["status"] == "FailsDecisive" {
                bad.push(format!("{}: R -> R/mI not Golod", inst.label));
            }
        }
    }
    report(
        4,
        "Tor vanishing agreement",
        bad.is_empty() && decisive > 0,
        &format!("{decisive} decisive instances, {both} with both sides holding, failures {bad:?}"),
    );
}

#[test]
fn criterion_05_large_descriptions() {
    const M: usize = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ideals: Vec<(String, RingIdeal)> = FIXTURES
        .iter()
        .map(|f| {
            let ring = f.ring().unwrap();
            (f.name.to_string(), f.ideal_in(&ring).unwrap())
        })
        .collect();
    for _ in 0..50 {
        let inst = general_instance(&mut rng);
        ideals.push((inst.label, inst.ideal));
    }
    let mut bad = Vec::new();
    let (mut failing, mut holding) = (0, 0);
    for (label, ideal) in &ideals {
        let map = quotient_ring(ideal).unwrap();
        let prof = LargeProfile::new(&map, M + 1).unwrap();
        let inj = prof.first_non_injective(M);
        let mult = prof.first_mismatch(M);
        let surj = prof.first_non_surjective(M + 1);
        if inj.is_some() {
            failing += 1;
        } else {
            holding += 1;
        }
        if inj != mult || surj != inj.map(|q| q + 1) {
            bad.push(format!("{label}: phi {inj:?}, mult {mult:?}, f {surj:?}"));
        }
    }
    report(
        5,
        "three descriptions of large agree",
        bad.is_empty(),
        &format!(
            "{} instances through N={M} ({holding} large, {failing} not); first non-injective = first mismatch = first non-surjective - 1; failures {bad:?}",
            ideals.len()
        ),
    );
}

#[test]
fn criterion_06_resolution_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for _ in 0..30 {
        let m = random_module(&mut rng);
        let via_m = poincare_coeffs(&m, 5);
        let via_k = tor_k_m(m.ring(), &m, 5);
        if via_m != via_k {
            bad.push(format!("{}: {via_m:?} vs {via_k:?}", m.label()));
        }
    }
    for f in FIXTURES {
        let ring = f.ring().unwrap();
        let b2 = poincare_coeffs(&FDModule::residue_field(&ring).unwrap(), 2)[2];
        let expect = binomial(ring.embdim(), 2) + ring_homology(&ring).dim(1);
        if b2 != expect {
            bad.push(format!("{}: beta_2 {b2} vs {expect}", f.name));
        }
    }
    report(
        6,
        "resolution oracle",
        bad.is_empty(),
        &format!(
            "30 modules balanced through i=5, beta_2(k) on {} fixtures; failures {bad:?}",
            FIXTURES.len()
        ),
    );
}

/// Variables, relations, expected `β_i`.
type Case = (&'static [&'static str], &'static [&'static str], fn(usize) -> usize);

#[test]
fn criterion_07_closed_form_betti() {
    let cases: [Case; 3] = [
        (&["x"], &["x^2"], |_| 1),
        (&["x", "y"], &["x^2", "y^2"], |i| i + 1),
        (&["x", "y"], &["x^2", "xy", "y^2"], |i| 1 << i),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for (vars, rels, beta) in &cases {
        let ring = ring_from_strs(5, vars, rels).unwrap();
        let got = poincare_coeffs(&FDModule::residue_field(&ring).unwrap(), N);
        let want: Vec<usize> = (0..=N).map(*beta).collect();
        ok &= got == want;
        detail.push(format!("({}) {got:?}", rels.join(",")));
    }
    report(7, "closed-form Betti numbers", ok, &detail.join("; "));
}

#[test]
fn criterion_08_deviations() {
    let eps = |vars: &[&str], rels: &[&str]| -> Vec<BigInt> {
        deviations(&ring_from_strs(5, vars, rels).unwrap(), N).unwrap().eps
    };
    let e2 = eps(&["x", "y"], &["x^2", "y^2"]);
    let e1 = eps(&["x"], &["x^2"]);
    let want = |v: [i64; 6]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let mut ok = e2 == want([2, 2, 0, 0, 0, 0]) && e1 == want([1, 1, 0, 0, 0, 0]);
    let mut roundtrip = 0;
    for f in FIXTURES {
        let ring = f.ring().unwrap();
        let p = poincare_series(&ring, N).unwrap();
        let back = deviations(&ring, N).unwrap().reconstruct(N).unwrap();
        if back == p {
            roundtrip += 1;
        } else {
            ok = false;
        }
    }
    report(
        8,
        "deviations",
        ok,
        &format!(
            "eps(x^2,y^2) = {:?}, eps(x^2) = {:?}, round trip {roundtrip}/{} fixtures",
            e2.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            e1.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            FIXTURES.len()
        ),
    );
}

#[test]
fn criterion_09_golod_series() {
    let sq = ring_from_strs(5, &["x", "y"], &["x^2", "xy", "y^2"]).unwrap();
    let g = golod_ring_check(&sq, 8).unwrap();
    let pow2 = TruncatedSeries::from_usize(&(0..=8).map(|i| 1usize << i).collect::<Vec<_>>(), 8);
    let sq_ok = g.status().is_positive() && poincare_series(&sq, 8).unwrap() == pow2;

    let ci = ring_from_strs(5, &["x", "y"], &["x^2", "y^2"]).unwrap();
    let c = golod_ring_check(&ci, N).unwrap();
    let w = c.verdict.witness.clone().unwrap();
    let ci_ok = c.status().is_fail() && w.degree == Some(3) && w.data["golod_bound"] == 5 && w.data["actual"] == 4;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut lemma_checks = 0;
    for (nvars, p, ring) in power_rings() {
        if !golod_ring_check(&ring, N).unwrap().status().is_positive() {
            bad.push(format!("Q/n^{p} in {nvars} vars not Golod"));
        }
        for ideal in subset_plus_form(&ring, &mut rng) {
            lemma_checks += 1;
            let l = lemma_power_check(&ideal).unwrap();
            if l.status() != Status::HoldsDecisive {
                bad.push(format!(
                    "Q/n^{p} in {nvars} vars, I = {:?}",
                    ideal.format_gens_or_zero()
                ));
            }
        }
    }
    report(
        9,
        "Golod series",
        sq_ok && ci_ok && bad.is_empty(),
        &format!(
            "(x,y)^2 Golod to 8 with 2^i {sq_ok}; (x^2,y^2) fails at t^{:?} bound {} actual {}; {} power rings, {lemma_checks} representative checks, failures {bad:?}",
            w.degree,
            w.data["golod_bound"],
            w.data["actual"],
            power_rings().len()
        ),
    );
}

#[test]
fn criterion_10_power_of_maximal() {
    const M: usize = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = Vec::new();
    let mut count = 0;
    for (nvars, p, ring) in power_rings() {
        for ideal in subset_plus_form(&ring, &mut rng) {
            count += 1;
            let label = format!("Q/n^{p} in {nvars} vars, I = {:?}", ideal.format_gens_or_zero());
            let r = detect_large(&ideal, M).unwrap();
            if r.status() != Status::HoldsDecisive || r.verdict.rule != "Q/n^p" {
                bad.push(format!("{label}: {} via {}", r.status().name(), r.verdict.rule));
            }
            let prof = LargeProfile::new(&quotient_ring(&ideal).unwrap(), M).unwrap();
            if prof.first_non_injective(M).is_some() || prof.first_mismatch(M).is_some() {
                bad.push(format!("{label}: fallback profile fails"));
            }
        }
    }
    report(
        10,
        "power of the maximal ideal",
        bad.is_empty(),
        &format!(
            "{count} ideals HoldsDecisive via Q/n^p, Tor injectivity and multiplicativity to N={M}; failures {bad:?}"
        ),
    );
}

#[test]
fn criterion_11_koszul_module() {
    let (ring, ideal) = fixture("gorenstein-short");
    let ld = linearity_defect(&FDModule::cyclic(&ideal).unwrap(), N).unwrap();
    let large = detect_large(&ideal, N).unwrap();
    let via_koszul = detect_large_with(
        &ideal,
        N,
        &DetectOptions {
            order: vec![Rule::KoszulModule],
            ..DetectOptions::default()
        },
    )
    .unwrap();
    let socle = annihilator(&RingIdeal::maximal(&ring));
    let golod = golod_map_check_ideal(&socle, N).unwrap();
    let ok = ld.koszul_to_n
        && large.status() == Status::HoldsDecisive
        && via_koszul.status() == Status::HoldsDecisive
        && via_koszul.verdict.rule == "Koszul-module"
        && golod.status().is_positive();
    report(
        11,
        "Koszul module path",
        ok,
        &format!(
            "R/I Koszul to N={N} {}; check-large {} via {}; Koszul-module rule alone {}; Golod map R -> R/(0:m) {}",
            ld.koszul_to_n,
            large.status().name(),
            large.verdict.rule,
            via_koszul.status().name(),
            golod.status().name()
        ),
    );
}

#[test]
fn errors_are_reported_not_panics() {
    let ring = ring_from_strs(5, &["x"], &["x^3"]).unwrap();
    let ideal = RingIdeal::from_elements(&ring, vec![vec![0, 0, 1]]);
    assert!(matches!(thm_tor_check(&ideal, 3), Err(Error::NCViolation(_))));
}
