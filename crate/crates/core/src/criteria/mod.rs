//! Deciding whether `R → R/I` is large, with a verdict that names the rule
//! behind it, plus standalone checks for small maps, the `mI ↪ I` Tor
//! criterion and the complete-intersection equivalences.

mod checks;
pub mod fixtures;
mod profile;

pub use checks::{
    check_small, ci_conditions, ci_equivalence_report, gupta_crosscheck, small_maps, thm_tor_check, CiConditions,
};
pub use profile::{LargeCondition, LargeProfile};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, FpMatrix};
use crate::koszul::{map_h1i_to_h1r, KoszulQuotient};
use crate::report::{CheckReport, Status, TraceEntry, Verdict, Witness};
use crate::resolve::{linearity_defect, FDModule};
use crate::ringcore::{annihilator, check_nc, power_of_maximal_ideal, quotient_ring, QuotientMap, Ring, RingIdeal};
use crate::series::{ci_check, golod_ring_check};

/// A decision rule of the detector. NC always runs first and the Tor
/// fallback always runs last; these run in between, in a configurable
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `I = 0` or `I = m`.
    Trivial,
    /// Generators of `I` form a regular sequence of 1-forms.
    RegularSequence,
    /// `(0 : I) = m`.
    Annihilator,
    /// `R/I` is a complete intersection.
    QuotientCI,
    /// `m = I ⊕ J` with `J` spanned by a subset of the variables.
    Splitting,
    /// `R` is a complete intersection, so `R → R/I` is large iff `R/I` is.
    CompleteIntersection,
    /// `R = Q/n^p` for a polynomial ring `Q`.
    PowerOfMaximal,
    /// `R` Golod and `H_i(R) → H_i(R/I)` onto for all `i`.
    GolodSurjective,
    /// `R/I` is a Koszul module.
    KoszulModule,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Trivial,
        Rule::RegularSequence,
        Rule::Annihilator,
        Rule::QuotientCI,
        Rule::Splitting,
        Rule::CompleteIntersection,
        Rule::PowerOfMaximal,
        Rule::GolodSurjective,
        Rule::KoszulModule,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Rule::Trivial => "trivial",
            Rule::RegularSequence => "regular-sequence",
            Rule::Annihilator => "annihilator",
            Rule::QuotientCI => "quotient-CI",
            Rule::Splitting => "splitting",
            Rule::CompleteIntersection => "Thm-CI(2)",
            Rule::PowerOfMaximal => "Q/n^p",
            Rule::GolodSurjective => "Golod-surjective",
            Rule::KoszulModule => "Koszul-module",
        }
    }
}

/// Default order. Hilbert-function and dimension tests come first; rules
/// that resolve modules to degree `N` come last.
pub const DEFAULT_ORDER: [Rule; 9] = [
    Rule::PowerOfMaximal,
    Rule::Trivial,
    Rule::QuotientCI,
    Rule::Splitting,
    Rule::Annihilator,
    Rule::RegularSequence,
    Rule::CompleteIntersection,
    Rule::KoszulModule,
    Rule::GolodSurjective,
];

/// Tag of the Tor/Poincaré fallback.
pub const FALLBACK_TAG: &str = "Def-large";

#[derive(Debug, Clone)]
pub struct DetectOptions {
    pub order: Vec<Rule>,
    /// The caller vouches that `R` is Golod, which makes the Golod rule
    /// decisive.
    pub golod_asserted: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            order: DEFAULT_ORDER.to_vec(),
            golod_asserted: false,
        }
    }
}

enum Outcome {
    Holds(String),
    Fails(Witness),
    Evidence(String),
    NoDecision(String),
}

struct Context<'a> {
    ring: &'a Ring,
    ideal: &'a RingIdeal,
    map: &'a QuotientMap,
    n: usize,
    golod_asserted: bool,
    profile: Option<LargeProfile>,
}

impl Context<'_> {
    /// Degree `max(N, 3)`, so the complete-intersection cross-checks can
    /// read degrees 2 and 3. The fallback only looks through `N`.
    fn profile(&mut self) -> Result<&LargeProfile> {
        if self.profile.is_none() {
            self.profile = Some(LargeProfile::new(self.map, self.n.max(3))?);
        }
        Ok(self.profile.as_ref().unwrap())
    }

    fn apply(&mut self, rule: Rule) -> Result<Outcome> {
        match rule {
            Rule::Trivial => Ok(self.trivial()),
            Rule::RegularSequence => Ok(self.regular_sequence()),
            Rule::Annihilator => Ok(self.annihilator()),
            Rule::QuotientCI => self.quotient_ci(),
            Rule::Splitting => Ok(self.splitting()),
            Rule::CompleteIntersection => self.complete_intersection(),
            Rule::PowerOfMaximal => Ok(self.power_of_maximal()),
            Rule::GolodSurjective => self.golod_surjective(),
            Rule::KoszulModule => self.koszul_module(),
        }
    }

    fn trivial(&self) -> Outcome {
        if self.ideal.is_zero() {
            Outcome::Holds("I = 0".into())
        } else if self.ideal.dim() + 1 == self.ring.dim() {
            Outcome::Holds("I = m".into())
        } else {
            Outcome::NoDecision("I is neither 0 nor m".into())
        }
    }

    fn regular_sequence(&self) -> Outcome {
        let ring = self.ring;
        let gens = self.ideal.gens();
        if gens.iter().any(|g| ring.homogeneous_degree(g) != Some(1)) {
            return Outcome::NoDecision("I has a generator of degree > 1".into());
        }
        for (j, g) in gens.iter().enumerate() {
            let prev = RingIdeal::from_elements(ring, gens[..j].to_vec());
            let cols: Vec<Vec<u32>> = (0..ring.dim())
                .map(|b| {
                    let mut e = vec![0u32; ring.dim()];
                    e[b] = 1;
                    prev.subspace().reduce(&ring.mul(g, &e))
                })
                .collect();
            let colon = kernel_basis(&FpMatrix::from_col_vectors(ring.field(), ring.dim(), &cols)).dim();
            if colon != prev.dim() {
                return Outcome::NoDecision(format!(
                    "{} is a zero divisor modulo the previous generators",
                    ring.format_element(g)
                ));
            }
        }
        Outcome::Holds(format!("{} generators form a regular sequence", gens.len()))
    }

    fn annihilator(&self) -> Outcome {
        if self.ideal.is_zero() {
            return Outcome::NoDecision("(0 : 0) = R".into());
        }
        let ann = annihilator(self.ideal);
        if ann.dim() + 1 == self.ring.dim() {
            Outcome::Holds("(0 : I) = m".into())
        } else {
            Outcome::NoDecision(format!("(0 : I) = ({})", ann.format_gens_or_zero().join(", ")))
        }
    }

    fn quotient_ci(&self) -> Result<Outcome> {
        Ok(if ci_check(&self.map.target)? {
            Outcome::Holds("R/I is a complete intersection".into())
        } else {
            Outcome::NoDecision("R/I is not a complete intersection".into())
        })
    }

    fn splitting(&self) -> Outcome {
        let ring = self.ring;
        let linear: Vec<usize> = (0..ring.nvars())
            .filter(|&i| ring.homogeneous_degree(ring.var_normal_form(i)) == Some(1))
            .collect();
        if linear.len() > 16 {
            return Outcome::NoDecision("too many variables to search".into());
        }
        let need = ring.embdim() - self.map.linear_gens.len();
        let m_dim = ring.dim() - 1;
        for mask in 0u32..(1 << linear.len()) {
            if mask.count_ones() as usize != need {
                continue;
            }
            let chosen: Vec<usize> = (0..linear.len())
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| linear[b])
                .collect();
            let j = RingIdeal::from_elements(ring, chosen.iter().map(|&v| ring.var_normal_form(v).to_vec()).collect());
            if self.ideal.dim() + j.dim() != m_dim {
                continue;
            }
            let meet = self.ideal.subspace().intersect(j.subspace()).expect("same ambient");
            if meet.dim() == 0 {
                let names: Vec<&str> = chosen.iter().map(|&v| ring.vars()[v].as_str()).collect();
                return Outcome::Holds(format!("m = I ⊕ ({})", names.join(", ")));
            }
        }
        Outcome::NoDecision("no splitting by a subset of the variables".into())
    }

    fn complete_intersection(&mut self) -> Result<Outcome> {
        if !ci_check(self.ring)? {
            return Ok(Outcome::NoDecision("R is not a complete intersection".into()));
        }
        let s_ci = ci_check(&self.map.target)?;
        let h1 = map_h1i_to_h1r(self.ideal)?.injective();
        let h2 = h2_surjective(self.map)?;
        let profile = self.profile()?;
        let tor2 = profile.phi[2].injective();
        let tor3 = profile.f[3].surjective();
        if [h1, h2, tor2, tor3].iter().any(|&c| c != s_ci) {
            return Err(Error::InternalInconsistency(format!(
                "complete intersection conditions disagree: S CI {s_ci}, H_1 {h1}, H_2 {h2}, Tor_2 {tor2}, Tor_3 {tor3}"
            )));
        }
        Ok(if s_ci {
            Outcome::Holds("R and R/I are complete intersections".into())
        } else {
            Outcome::Fails(
                Witness::new(Some(2), "R is a complete intersection but R/I is not").with_data(
                    json!({ "S_complete_intersection": false, "h1_tensor_injective": h1, "h2_surjective": h2 }),
                ),
            )
        })
    }

    fn power_of_maximal(&self) -> Outcome {
        match power_of_maximal_ideal(self.ring) {
            Some(p) => Outcome::Holds(format!("R = Q/n^{p}")),
            None => Outcome::NoDecision("R is not a power of the maximal ideal".into()),
        }
    }

    fn golod_surjective(&self) -> Result<Outcome> {
        let g = golod_ring_check(self.ring, self.n)?;
        if !g.status().is_positive() {
            return Ok(Outcome::NoDecision("R fails the Golod bound".into()));
        }
        let kq = KoszulQuotient::new(self.map.clone());
        for i in 1..=kq.target.length() {
            if !kq.induced(i)?.surjective() {
                return Ok(Outcome::NoDecision(format!("H_{i}(R) -> H_{i}(R/I) is not onto")));
            }
        }
        Ok(if self.golod_asserted {
            Outcome::Holds("R is Golod (asserted) and H(R) -> H(R/I) is onto".into())
        } else {
            Outcome::Evidence(format!(
                "Golod bound met through t^{} and H(R) -> H(R/I) is onto",
                self.n
            ))
        })
    }

    fn koszul_module(&self) -> Result<Outcome> {
        let ld = linearity_defect(&FDModule::cyclic(self.ideal)?, self.n)?;
        let certified = !self.ideal.is_zero() && gorenstein_short(self.ring);
        if !ld.koszul_to_n {
            if certified {
                return Err(Error::InternalInconsistency(
                    "R/I should be a Koszul module over a Gorenstein ring with m^3 = 0".into(),
                ));
            }
            let i = ld.max_nonzero.unwrap_or(0);
            return Ok(Outcome::NoDecision(format!("H_{i}(lin F) != 0")));
        }
        Ok(if certified {
            Outcome::Holds("R is Gorenstein with m^3 = 0, so R/I is a Koszul module".into())
        } else {
            Outcome::Evidence(format!("linear part acyclic through degree {}", self.n))
        })
    }
}

/// Graded Gorenstein with `m^3 = 0` and `m ≠ 0`.
fn gorenstein_short(ring: &Ring) -> bool {
    ring.dim() > 1 && ring.top_degree() <= 2 && annihilator(&RingIdeal::maximal(ring)).dim() == 1
}

/// `H_2(R) → H_2(S)` is onto (vacuous when `S` has embedding dimension < 2).
pub(crate) fn h2_surjective(map: &QuotientMap) -> Result<bool> {
    let kq = KoszulQuotient::new(map.clone());
    if kq.target.length() < 2 {
        return Ok(true);
    }
    Ok(kq.induced(2)?.surjective())
}

pub(crate) fn describe_quotient(map: &QuotientMap) -> Value {
    let s = &map.target;
    json!({
        "vars": s.vars(),
        "relations": s.relations().iter().map(|r| r.format(s.vars())).collect::<Vec<_>>(),
        "dim": s.dim(),
        "embdim": s.embdim(),
    })
}

fn validate(ideal: &RingIdeal) -> Result<RingIdeal> {
    let ring = ideal.ring();
    if !ring.is_graded() {
        return Err(Error::NotGraded("the detector needs a graded ring".into()));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NonHomogeneousIdeal(format!("{:?}", ideal.format_gens())));
    }
    let ideal = ideal.trimmed();
    if ideal.contains(&ring.one()) {
        return Err(Error::UnitIdeal(format!("{:?}", ideal.format_gens())));
    }
    Ok(ideal)
}

pub fn detect_large(ideal: &RingIdeal, n: usize) -> Result<CheckReport> {
    detect_large_with(ideal, n, &DetectOptions::default())
}

/// Run the rule cascade; the first decisive rule wins.
pub fn detect_large_with(ideal: &RingIdeal, n: usize, opts: &DetectOptions) -> Result<CheckReport> {
    let ideal = validate(ideal)?;
    let ring = ideal.ring();
    let mut trace = Vec::new();
    let nc = check_nc(&ideal);
    if let Status::FailsDecisive = nc.status() {
        trace.push(TraceEntry::new("NC", "fails", "I ∩ m² != mI"));
        let verdict = nc.verdict.clone().with_trace(trace);
        return Ok(CheckReport::new(verdict).with_truncation(n).with_data(json!({
            "ideal": ideal.format_gens_or_zero(),
            "nc": false,
            "open_question": false,
        })));
    }
    trace.push(TraceEntry::new("NC", "holds", ""));
    let map = quotient_ring(&ideal)?;
    let mut ctx = Context {
        ring,
        ideal: &ideal,
        map: &map,
        n,
        golod_asserted: opts.golod_asserted,
        profile: None,
    };
    let base = json!({
        "ideal": ideal.format_gens_or_zero(),
        "quotient": describe_quotient(&map),
        "nc": true,
    });
    let mut evidence = Vec::new();
    for &rule in &opts.order {
        let verdict = match ctx.apply(rule)? {
            Outcome::Holds(detail) => {
                trace.push(TraceEntry::new(rule.tag(), "holds", detail));
                Verdict::holds(rule.tag())
            }
            Outcome::Fails(w) => {
                trace.push(TraceEntry::new(rule.tag(), "fails", w.description.clone()));
                Verdict::fails(rule.tag(), w)
            }
            Outcome::Evidence(detail) => {
                trace.push(TraceEntry::new(rule.tag(), "evidence", detail));
                evidence.push(rule.tag());
                continue;
            }
            Outcome::NoDecision(detail) => {
                trace.push(TraceEntry::new(rule.tag(), "no decision", detail));
                continue;
            }
        };
        let mut data = base.clone();
        data["open_question"] = json!(false);
        return Ok(CheckReport::new(verdict.with_trace(trace))
            .with_truncation(n)
            .with_data(data));
    }

    let profile = ctx.profile()?;
    let mut data = base;
    data["profile"] = profile.to_json(n);
    data["evidence_rules"] = json!(evidence);
    let verdict = match profile.first_failure(n) {
        Some((cond, w)) => {
            trace.push(TraceEntry::new(FALLBACK_TAG, "fails", format!("{} fails", cond.name())));
            data["open_question"] = json!(false);
            Verdict::fails(FALLBACK_TAG, w)
        }
        None => {
            trace.push(TraceEntry::new(
                FALLBACK_TAG,
                "evidence",
                format!("all three conditions hold through {n}"),
            ));
            // No decisive rule, Tor injective as far as computed, and
            // pd_R(I) = ∞ because a nonzero ideal of an Artinian ring is
            // never free.
            data["open_question"] = json!(!ideal.is_zero());
            data["annotations"] = json!({
                "nonzero_h1_map": map_h1i_to_h1r(&ideal)?.nonzero(),
                "tor_injective_through": n,
            });
            Verdict::evidence(FALLBACK_TAG, n)
        }
    };
    Ok(CheckReport::new(verdict.with_trace(trace))
        .with_truncation(n)
        .with_data(data))
}

#[cfg(test)]
mod tests;
