use serde::Serialize;
use serde_json::json;

use super::{describe_quotient, detect_large, h2_surjective, validate, LargeProfile};
use crate::error::{Error, Result};
use crate::koszul::map_h1i_to_h1r;
use crate::report::{CheckReport, Status, TraceEntry, Verdict, Witness};
use crate::resolve::{tor_comparison, tor_kk_map, ModuleMap, TorMap};
use crate::ringcore::{nc_holds, quotient_ring, RingIdeal};
use crate::series::{ci_check, golod_map_check_ideal, golod_ring_check};

fn status_json(r: &CheckReport) -> serde_json::Value {
    json!({ "status": r.status().name(), "rule": r.verdict.rule })
}

/// `Tor^R_i(k,k) → Tor^S_i(k,k)` for `S = R/I'` and `i ≤ n`.
pub fn small_maps(ideal: &RingIdeal, n: usize) -> Result<Vec<TorMap>> {
    let ideal = validate(ideal)?;
    tor_kk_map(&quotient_ring(&ideal)?, n)
}

/// Injectivity of `Tor^R(k,k) → Tor^{R/I'}(k,k)` through degree `n`.
pub fn check_small(ideal: &RingIdeal, n: usize) -> Result<CheckReport> {
    let maps = small_maps(ideal, n)?;
    let verdict = match maps.iter().find(|m| !m.injective()) {
        None => Verdict::evidence("small", n),
        Some(m) => Verdict::fails(
            "small",
            Witness::new(
                Some(m.degree),
                format!(
                    "Tor^R_{0}(k,k) -> Tor^S_{0}(k,k) has a kernel of dimension {1}",
                    m.degree,
                    m.matrix.cols() - m.rank
                ),
            )
            .with_data(json!({ "rank": m.rank, "source_dim": m.matrix.cols() })),
        ),
    };
    Ok(CheckReport::new(verdict).with_truncation(n).with_data(json!({
        "ideal": ideal.trimmed().format_gens_or_zero(),
        "ranks": maps.iter().map(|m| m.rank).collect::<Vec<_>>(),
        "source_dims": maps.iter().map(|m| m.matrix.cols()).collect::<Vec<_>>(),
        "target_dims": maps.iter().map(|m| m.matrix.rows()).collect::<Vec<_>>(),
    })))
}

/// Whether `Tor_i(mI,k) → Tor_i(I,k)` vanishes for `i ≤ N`, compared with
/// "`R → R/I` large and `R → R/mI` small".
///
/// Per degree, vanishing at `i` forces `Tor_{i+1}(R/I,k) → Tor_{i+1}(k,k)`
/// to be injective, and injectivity of that map together with injectivity
/// of `Tor_{i+1}(k,k) → Tor^{R/mI}_{i+1}(k,k)` forces vanishing at `i`.
/// Both implications are asserted.
pub fn thm_tor_check(ideal: &RingIdeal, n: usize) -> Result<CheckReport> {
    let ideal = validate(ideal)?;
    if !nc_holds(&ideal) {
        return Err(Error::NCViolation(format!("{:?}", ideal.format_gens_or_zero())));
    }
    let mi = ideal.times_maximal().trimmed();
    let incl = ModuleMap::inclusion(&mi, &ideal)?;
    let side1 = tor_comparison(&incl, n)?;
    let large = detect_large(&ideal, n)?;
    let psi = small_maps(&mi, n + 1)?;
    let profile = LargeProfile::new(&quotient_ring(&ideal)?, n + 1)?;
    for i in 0..=n {
        let zero = side1[i].is_zero();
        let phi = profile.phi[i + 1].injective();
        let small = psi[i + 1].injective();
        if zero && !phi {
            return Err(Error::InternalInconsistency(format!(
                "Tor_{i}(mI,k) -> Tor_{i}(I,k) vanishes but Tor_{}(R/I,k) -> Tor_{}(k,k) is not injective",
                i + 1,
                i + 1
            )));
        }
        if phi && small && !zero {
            return Err(Error::InternalInconsistency(format!(
                "Tor_{i}(mI,k) -> Tor_{i}(I,k) is nonzero although both degree {} maps are injective",
                i + 1
            )));
        }
    }
    let golod = golod_map_check_ideal(&mi, n)?;
    let small_through_n = psi.iter().take(n + 1).all(|m| m.injective());
    let side2 = large.status().is_positive() && small_through_n;
    let first_nonzero = side1.iter().find(|m| !m.is_zero());
    let mut trace = vec![
        TraceEntry::new(
            "mI->I",
            if first_nonzero.is_none() { "zero" } else { "nonzero" },
            format!("degrees 0..={n}"),
        ),
        TraceEntry::new("large", large.status().name(), large.verdict.rule.clone()),
        TraceEntry::new(
            "small",
            if small_through_n { "injective" } else { "not injective" },
            format!("degrees 0..={n}"),
        ),
    ];
    trace.push(TraceEntry::new("Golod-map", golod.status().name(), "R -> R/mI"));
    let verdict = match first_nonzero {
        None => Verdict::evidence("Thm-Tor", n),
        Some(m) => Verdict::fails(
            "Thm-Tor",
            Witness::new(
                Some(m.degree),
                format!("Tor_{0}(mI,k) -> Tor_{0}(I,k) has rank {1}", m.degree, m.rank),
            )
            .with_data(json!({ "rank": m.rank })),
        ),
    }
    .with_trace(trace);
    Ok(CheckReport::new(verdict).with_truncation(n).with_data(json!({
        "ideal": ideal.format_gens_or_zero(),
        "mI": mi.format_gens_or_zero(),
        "side1_ranks": side1.iter().map(|m| m.rank).collect::<Vec<_>>(),
        "side1_zero": first_nonzero.is_none(),
        "large": status_json(&large),
        "small_injective": psi.iter().take(n + 1).map(|m| m.injective()).collect::<Vec<_>>(),
        "side2_holds": side2,
        "sides_agree": first_nonzero.is_none() == side2,
        "golod_map": status_json(&golod),
    })))
}

/// The six equivalent conditions for `R → R/I` over a complete
/// intersection `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CiConditions {
    /// Large, as far as the Tor maps and series were computed.
    pub large_to_n: bool,
    pub s_complete_intersection: bool,
    pub tor2_injective: bool,
    pub tor3_surjective: bool,
    pub h1_tensor_injective: bool,
    pub h2_surjective: bool,
}

impl CiConditions {
    /// The exact conditions, in order.
    pub fn exact(&self) -> [bool; 5] {
        [
            self.s_complete_intersection,
            self.tor2_injective,
            self.tor3_surjective,
            self.h1_tensor_injective,
            self.h2_surjective,
        ]
    }
}

/// Evaluate the six conditions; errors if the exact ones disagree.
pub fn ci_conditions(ideal: &RingIdeal, n: usize) -> Result<CiConditions> {
    let ideal = validate(ideal)?;
    let ring = ideal.ring();
    if !ci_check(ring)? {
        return Err(Error::NotCompleteIntersection);
    }
    if !nc_holds(&ideal) {
        return Err(Error::NCViolation(format!("{:?}", ideal.format_gens_or_zero())));
    }
    let map = quotient_ring(&ideal)?;
    let profile = LargeProfile::new(&map, n.max(3))?;
    let c = CiConditions {
        large_to_n: profile.holds_through(n),
        s_complete_intersection: ci_check(&map.target)?,
        tor2_injective: profile.phi[2].injective(),
        tor3_surjective: profile.f[3].surjective(),
        h1_tensor_injective: map_h1i_to_h1r(&ideal)?.injective(),
        h2_surjective: h2_surjective(&map)?,
    };
    let e = c.exact();
    if e.iter().any(|&x| x != e[0]) || (n >= 2 && c.large_to_n != e[0]) {
        return Err(Error::InternalInconsistency(format!(
            "complete intersection conditions disagree: {c:?}"
        )));
    }
    Ok(c)
}

pub fn ci_equivalence_report(ideal: &RingIdeal, n: usize) -> Result<CheckReport> {
    let c = ci_conditions(ideal, n)?;
    let trace = vec![
        TraceEntry::new(
            "large",
            if c.large_to_n { "holds" } else { "fails" },
            format!("through degree {n}"),
        ),
        TraceEntry::new("S-CI", c.s_complete_intersection.to_string(), ""),
        TraceEntry::new("Tor_2-injective", c.tor2_injective.to_string(), ""),
        TraceEntry::new("Tor_3-surjective", c.tor3_surjective.to_string(), ""),
        TraceEntry::new("H_1-injective", c.h1_tensor_injective.to_string(), ""),
        TraceEntry::new("H_2-surjective", c.h2_surjective.to_string(), ""),
    ];
    let verdict = if c.s_complete_intersection {
        Verdict::holds("Thm-CI")
    } else {
        Verdict::fails(
            "Thm-CI",
            Witness::new(
                Some(2),
                "R/I is not a complete intersection; Tor_2(R/I,k) -> Tor_2(k,k) is not injective",
            ),
        )
    }
    .with_trace(trace);
    let map = quotient_ring(&ideal.trimmed())?;
    Ok(CheckReport::new(verdict).with_truncation(n).with_data(json!({
        "ideal": ideal.trimmed().format_gens_or_zero(),
        "quotient": describe_quotient(&map),
        "conditions": c,
    })))
}

/// If `R` is Golod and `R → S` is large then `S` is Golod. Checked on the
/// truncated series; when `S` fails, `R` must fail too.
pub fn gupta_crosscheck(ideal: &RingIdeal, n: usize) -> Result<CheckReport> {
    let ideal = validate(ideal)?;
    let ring = ideal.ring();
    let large = detect_large(&ideal, n)?;
    let r_golod = golod_ring_check(ring, n)?;
    let mut trace = vec![
        TraceEntry::new("large", large.status().name(), large.verdict.rule.clone()),
        TraceEntry::new("Golod-ring(R)", r_golod.status().name(), ""),
    ];
    let mut data = json!({
        "ideal": ideal.format_gens_or_zero(),
        "large": status_json(&large),
        "R_golod": status_json(&r_golod),
    });
    if large.status() != Status::HoldsDecisive {
        let v = Verdict::new(Status::Inapplicable, "Gupta").with_trace(trace);
        return Ok(CheckReport::new(v).with_truncation(n).with_data(data));
    }
    let map = quotient_ring(&ideal)?;
    let s_golod = golod_ring_check(&map.target, n)?;
    trace.push(TraceEntry::new("Golod-ring(S)", s_golod.status().name(), ""));
    data["S_golod"] = status_json(&s_golod);
    let s_fail = s_golod.verdict.witness.as_ref().and_then(|w| w.degree);
    let verdict = match (s_golod.status().is_positive(), r_golod.status().is_positive()) {
        (true, _) => Verdict::evidence("Gupta", n),
        (false, false) => Verdict::holds("Gupta-contrapositive"),
        (false, true) => {
            // R passed through N; its failure must show up later.
            let longer = golod_ring_check(ring, 2 * n + 2)?;
            trace.push(TraceEntry::new(
                "Golod-ring(R)",
                longer.status().name(),
                format!("through {}", 2 * n + 2),
            ));
            if longer.status().is_fail() {
                Verdict::holds("Gupta-contrapositive")
            } else {
                Verdict::fails(
                    "Gupta",
                    Witness::new(
                        s_fail,
                        format!("S fails the Golod bound but R meets it through t^{}", 2 * n + 2),
                    ),
                )
            }
        }
    }
    .with_trace(trace);
    Ok(CheckReport::new(verdict).with_truncation(n).with_data(data))
}
