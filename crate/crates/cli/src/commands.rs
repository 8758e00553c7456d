use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use largehom::criteria::fixtures::FIXTURES;
use largehom::criteria::{detect_large, detect_large_with, DetectOptions, DEFAULT_ORDER};
use largehom::koszul::{ideal_homology, induced_map_hr_to_hs, map_h1i_to_h1r, ring_homology, KoszulHomology};
use largehom::report::{CheckReport, Status, TraceEntry, Verdict, Witness};
use largehom::resolve::{betti_table, linearity_defect, FDModule};
use largehom::ringcore::{annihilator, check_nc, power_of_maximal_ideal, quotient_ring, Ring, RingIdeal};
use largehom::series::{ci_details, deviations, golod_bound, golod_ring_check, poincare_series, poincare_series_of};
use largehom::Result;

/// Which module a homological command works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModuleKind {
    /// The residue field `k`.
    K,
    /// `R/I`.
    Quotient,
    /// `I` itself.
    Ideal,
}

pub fn module_of(kind: ModuleKind, ring: &Ring, ideal: &RingIdeal) -> Result<FDModule> {
    match kind {
        ModuleKind::K => FDModule::residue_field(ring),
        ModuleKind::Quotient => FDModule::cyclic(ideal),
        ModuleKind::Ideal => FDModule::ideal(ideal),
    }
}

fn exact(rule: &str) -> Verdict {
    Verdict::holds(rule)
}

fn homology_json(h: &KoszulHomology) -> Value {
    let per: Vec<Value> = (0..=h.length())
        .map(|i| {
            let graded: serde_json::Map<String, Value> = h
                .graded_dims(i)
                .into_iter()
                .map(|(d, n)| (d.to_string(), json!(n)))
                .collect();
            json!({ "i": i, "dim": h.dim(i), "by_degree": graded })
        })
        .collect();
    json!({ "dims": h.dims(), "homology": per })
}

pub fn ring_info(ring: &Ring) -> Result<CheckReport> {
    let ci = ci_details(ring)?;
    let socle = annihilator(&RingIdeal::maximal(ring));
    let data = json!({
        "dim": ring.dim(),
        "embdim": ring.embdim(),
        "hilbert_function": ring.hilbert_function(),
        "top_degree": ring.top_degree(),
        "graded": ring.is_graded(),
        "groebner_basis": ring.groebner().iter().map(|g| g.format(ring.vars())).collect::<Vec<_>>(),
        "basis": ring.basis().iter().map(|m| m.format(ring.vars())).collect::<Vec<_>>(),
        "socle_dim": socle.dim(),
        "complete_intersection": ci.value(),
        "ci_tests": { "h1_equals_embdim": ci.h1_equals_embdim, "eps3_zero": ci.eps3_zero, "h2_equals_h1_squared": ci.h2_equals_h1_squared },
        "power_of_maximal": power_of_maximal_ideal(ring),
    });
    Ok(CheckReport::new(exact("exact")).with_data(data))
}

pub fn koszul(ring: &Ring, ideal: Option<&RingIdeal>) -> Result<CheckReport> {
    let h = ring_homology(ring);
    let mut data = json!({ "ring": homology_json(&h) });
    if let Some(ideal) = ideal.filter(|i| !i.is_zero()) {
        data["ideal"] = homology_json(&ideal_homology(ideal));
        if largehom::ringcore::nc_holds(ideal) {
            let m = map_h1i_to_h1r(ideal)?;
            data["h1_tensor_k_to_h1"] = json!({ "rank": m.rank, "source_dim": m.source_dim, "target_dim": m.target_dim, "injective": m.injective(), "nonzero": m.nonzero() });
            let map = quotient_ring(ideal)?;
            let induced: Vec<Value> = (1..=map.target.embdim())
                .map(|i| {
                    induced_map_hr_to_hs(&map, i).map(
                        |m| json!({ "i": i, "rank": m.rank, "target_dim": m.target_dim, "surjective": m.surjective() }),
                    )
                })
                .collect::<Result<_>>()?;
            data["h_r_to_h_s"] = Value::Array(induced);
        }
    }
    Ok(CheckReport::new(exact("exact")).with_data(data))
}

pub fn betti(module: &FDModule, n: usize) -> Result<CheckReport> {
    let t = betti_table(module, n);
    let rows: Vec<Value> = t
        .rows()
        .into_iter()
        .enumerate()
        .map(|(i, r)| json!({ "i": i, "entries": r.into_iter().map(|(j, b)| json!([j, b])).collect::<Vec<_>>() }))
        .collect();
    let data = json!({ "module": module.label(), "totals": t.totals(), "table": rows });
    Ok(CheckReport::new(Verdict::evidence("truncated", n))
        .with_truncation(n)
        .with_data(data))
}

pub fn poincare(module: &FDModule, n: usize) -> Result<CheckReport> {
    let p = poincare_series_of(module, n);
    let data = json!({ "module": module.label(), "coefficients": p.to_json() });
    Ok(CheckReport::new(Verdict::evidence("truncated", n))
        .with_truncation(n)
        .with_data(data))
}

pub fn deviations_report(ring: &Ring, n: usize) -> Result<CheckReport> {
    let p = poincare_series(ring, n)?;
    let d = deviations(ring, n)?;
    let back = d.reconstruct(n)?;
    let data = json!({
        "poincare": p.to_json(),
        "deviations": d.to_json(),
        "round_trip": back == p,
    });
    Ok(CheckReport::new(Verdict::evidence("truncated", n))
        .with_truncation(n)
        .with_data(data))
}

pub fn check_golod_ring(ring: &Ring, n: usize) -> Result<CheckReport> {
    let mut r = golod_ring_check(ring, n)?;
    let h = ring_homology(ring);
    r.data["koszul_homology"] = json!(h.dims());
    r.data["golod_bound_formula"] = json!(golod_bound(ring, n)?.to_json());
    Ok(r)
}

pub fn koszul_module(module: &FDModule, n: usize) -> Result<CheckReport> {
    let ld = linearity_defect(module, n)?;
    let verdict = if ld.koszul_to_n {
        Verdict::evidence("Koszul-module", n)
    } else {
        let i = (1..=n).find(|&i| ld.lin_homology[i] != 0).unwrap_or(0);
        Verdict::fails(
            "Koszul-module",
            Witness::new(Some(i), format!("H_{i}(lin F) has dimension {}", ld.lin_homology[i])),
        )
    };
    let data = json!({
        "module": module.label(),
        "lin_homology": ld.lin_homology,
        "max_nonzero": ld.max_nonzero,
        "diagonal_betti": ld.diagonal_betti,
        "betti_totals": ld.betti.totals(),
    });
    Ok(CheckReport::new(verdict).with_truncation(n).with_data(data))
}

pub fn check_nc_report(ideal: &RingIdeal) -> CheckReport {
    let mut r = check_nc(ideal);
    r.data["ideal"] = json!(ideal.trimmed().format_gens_or_zero());
    r
}

/// Every bundled fixture against its documented verdicts, plus a shuffled
/// rule order that must not change any `check-large` status.
pub fn paper_examples(n: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    let mut trace = Vec::new();
    let mut failed = None;
    for f in FIXTURES {
        let outcomes = f.run(n)?;
        let ring = f.ring()?;
        let ideal = f.ideal_in(&ring)?;
        let mut order = DEFAULT_ORDER.to_vec();
        order.shuffle(&mut rng);
        let base = detect_large(&ideal, n)?.status();
        let opts = DetectOptions {
            order: order.clone(),
            ..DetectOptions::default()
        };
        let shuffled = detect_large_with(&ideal, n, &opts)?.status();
        let ok = outcomes.iter().all(|o| o.ok) && base == shuffled;
        if !ok && failed.is_none() {
            failed = Some(f.name);
        }
        trace.push(TraceEntry::new(
            f.name,
            if ok { "reproduced" } else { "mismatch" },
            f.summary,
        ));
        entries.push(json!({
            "name": f.name,
            "summary": f.summary,
            "checks": outcomes,
            "shuffled_order": order.iter().map(|r| r.tag()).collect::<Vec<_>>(),
            "shuffled_status_matches": base == shuffled,
            "ok": ok,
        }));
    }
    let verdict = match failed {
        None => Verdict::new(Status::HoldsDecisive, "fixtures"),
        Some(name) => Verdict::fails(
            "fixtures",
            Witness::new(None, format!("fixture `{name}` did not reproduce")),
        ),
    }
    .with_trace(trace);
    Ok(CheckReport::new(verdict)
        .with_truncation(n)
        .with_data(json!({ "seed": seed, "fixtures": entries })))
}
