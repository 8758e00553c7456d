//! Truncated integer power series and the Poincaré series identities:
//! multiplicativity, the Golod bounds for rings and maps, deviations, and
//! the complete-intersection test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::FpMatrix;
use crate::koszul::{homology_product, ring_homology};
use crate::report::{CheckReport, Verdict, Witness};
use crate::resolve::{poincare_coeffs, FDModule};
use crate::ringcore::{QuotientMap, Ring, RingIdeal};

/// `Σ_{i ≤ N} c_i t^i` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to length `n + 1`.
    pub fn new(mut coeffs: Vec<BigInt>, n: usize) -> Self {
        coeffs.resize(n + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], n: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), n)
    }

    pub fn from_usize(coeffs: &[usize], n: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), n)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Vec::new(), n)
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![BigInt::one()], n)
    }

    /// `c · t^k`.
    pub fn monomial(c: i64, k: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = BigInt::from(c);
        }
        s
    }

    /// `(1 + t)^e`.
    pub fn binomial_power(e: u32, n: usize) -> Self {
        let mut coeffs = vec![BigInt::one()];
        for k in 1..=n.min(e as usize) {
            let prev = coeffs[k - 1].clone();
            coeffs.push(prev * BigInt::from(e as usize + 1 - k) / BigInt::from(k));
        }
        Self::new(coeffs, n)
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(), n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    /// `t^k · S`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![BigInt::zero(); k.min(n + 1)];
        out.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Self::new(out, n)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `1/S`; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonUnitConstantTerm);
        }
        let n = self.order();
        let mut out: Vec<BigInt> = vec![c0.clone()];
        for k in 1..=n {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            // c0 is its own inverse.
            out.push(-(s * c0));
        }
        Ok(Self::new(out, n))
    }

    /// Coefficients as JSON numbers (strings when they overflow `i64`).
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(bigint_json).collect())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// `ε_1, …, ε_N` from the product formula for `P^R_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviations {
    /// `eps[i - 1] = ε_i`.
    pub eps: Vec<BigInt>,
}

impl Deviations {
    pub fn get(&self, i: usize) -> BigInt {
        self.eps.get(i.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    /// `Π (1+t^{2i−1})^{ε_{2i−1}} / Π (1−t^{2i})^{ε_{2i}}` mod `t^{N+1}`.
    pub fn reconstruct(&self, n: usize) -> Result<TruncatedSeries> {
        let mut p = TruncatedSeries::one(n);
        for (k, e) in self.eps.iter().enumerate() {
            let d = k + 1;
            p = p.mul(&deviation_factor(d, e, n)?);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.eps.iter().map(bigint_json).collect())
    }
}

/// `(1+t^d)^e` for odd `d`, `(1−t^d)^{−e}` for even `d`.
fn deviation_factor(d: usize, e: &BigInt, n: usize) -> Result<TruncatedSeries> {
    let e = e
        .to_u32()
        .ok_or_else(|| Error::InconsistentSeries(format!("deviation {e} at degree {d}")))?;
    if d % 2 == 1 {
        Ok(TruncatedSeries::one(n).add(&TruncatedSeries::monomial(1, d, n)).pow(e))
    } else {
        TruncatedSeries::one(n)
            .sub(&TruncatedSeries::monomial(1, d, n))
            .pow(e)
            .inverse()
    }
}

/// Peel off the product factors degree by degree.
pub fn deviations_from_poincare(p: &TruncatedSeries, n: usize) -> Result<Deviations> {
    let n = n.min(p.order());
    if !p.coeff(0).is_one() {
        return Err(Error::InconsistentSeries("Poincaré series must start with 1".into()));
    }
    let mut rest = TruncatedSeries::new(p.coeffs().to_vec(), n);
    let mut eps = Vec::with_capacity(n);
    for d in 1..=n {
        let e = rest.coeff(d).clone();
        if e.is_negative() {
            return Err(Error::InconsistentSeries(format!(
                "negative deviation {e} at degree {d}"
            )));
        }
        rest = rest.mul(&deviation_factor(d, &e, n)?.inverse()?);
        debug_assert!((1..=d).all(|j| rest.coeff(j).is_zero()));
        eps.push(e);
    }
    Ok(Deviations { eps })
}

/// `P^R_k` through `t^n`.
pub fn poincare_series(ring: &Ring, n: usize) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::from_usize(
        &poincare_coeffs(&FDModule::residue_field(ring)?, n),
        n,
    ))
}

/// `P^R_M` through `t^n`.
pub fn poincare_series_of(module: &FDModule, n: usize) -> TruncatedSeries {
    TruncatedSeries::from_usize(&poincare_coeffs(module, n), n)
}

/// Deviations of `R` through degree `n`.
pub fn deviations(ring: &Ring, n: usize) -> Result<Deviations> {
    deviations_from_poincare(&poincare_series(ring, n)?, n)
}

/// First index where two series differ.
pub(crate) fn first_mismatch(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<usize> {
    (0..=a.order().min(b.order())).find(|&i| a.coeff(i) != b.coeff(i))
}

pub(crate) fn compare(
    rule: &str,
    lhs_name: &str,
    lhs: &TruncatedSeries,
    rhs_name: &str,
    rhs: &TruncatedSeries,
    n: usize,
) -> CheckReport {
    let verdict = match first_mismatch(lhs, rhs) {
        None => Verdict::evidence(rule, n),
        Some(d) => Verdict::fails(
            rule,
            Witness::new(
                Some(d),
                format!(
                    "coefficient of t^{d}: {lhs_name} = {}, {rhs_name} = {}",
                    lhs.coeff(d),
                    rhs.coeff(d)
                ),
            )
            .with_data(json!({ lhs_name: bigint_json(lhs.coeff(d)), rhs_name: bigint_json(rhs.coeff(d)) })),
        ),
    };
    CheckReport::new(verdict)
        .with_truncation(n)
        .with_data(json!({ lhs_name: lhs.to_json(), rhs_name: rhs.to_json() }))
}

/// View an `S`-module as an `R`-module along `R → S`.
pub fn restrict_scalars(map: &QuotientMap, module: &FDModule) -> Result<FDModule> {
    let r = &map.source;
    let s = &map.target;
    let f = r.field();
    let n = module.dim();
    let actions: Vec<FpMatrix> = r
        .linear_basis()
        .iter()
        .map(|&x| {
            let mut e = vec![0u32; r.dim()];
            e[x] = 1;
            let img = map.apply(&e);
            let mut a = FpMatrix::zeros(f, n, n);
            for (k, &lb) in s.linear_basis().iter().enumerate() {
                if img[lb] != 0 {
                    a = a.add(&module.actions()[k].scale(img[lb]));
                }
            }
            a
        })
        .collect();
    FDModule::from_actions(r, module.degrees().to_vec(), actions, module.label())
}

/// `P^R_M = P^R_S · P^S_M` through `t^n`, for an `S`-module `M`.
pub fn check_multiplicativity_module(map: &QuotientMap, module: &FDModule, n: usize) -> Result<CheckReport> {
    let over_r = restrict_scalars(map, module)?;
    let lhs = poincare_series_of(&over_r, n);
    let p_rs = poincare_series_of(&FDModule::cyclic(&map.ideal)?, n);
    let rhs = p_rs.mul(&poincare_series_of(module, n));
    Ok(compare("Def-large(3)", "P_R_M", &lhs, "P_R_S*P_S_M", &rhs, n))
}

/// `P^R_k = P^R_S · P^S_k` through `t^n`.
pub fn check_multiplicativity(map: &QuotientMap, n: usize) -> Result<CheckReport> {
    check_multiplicativity_module(map, &FDModule::residue_field(&map.target)?, n)
}

/// Right-hand side of the Golod bound `(1+t)^e / (1 − Σ dim H_i t^{i+1})`.
pub fn golod_bound(ring: &Ring, n: usize) -> Result<TruncatedSeries> {
    let h = ring_homology(ring);
    let mut denom = TruncatedSeries::one(n);
    for i in 1..=h.length() {
        denom = denom.sub(&TruncatedSeries::monomial(h.dim(i) as i64, i + 1, n));
    }
    Ok(TruncatedSeries::binomial_power(ring.embdim() as u32, n).mul(&denom.inverse()?))
}

/// `P^R_k` against the Golod bound through `t^n`.
pub fn golod_ring_check(ring: &Ring, n: usize) -> Result<CheckReport> {
    let actual = poincare_series(ring, n)?;
    let bound = golod_bound(ring, n)?;
    Ok(compare("Golod-ring", "actual", &actual, "golod_bound", &bound, n))
}

/// `P^S_k = P^R_k / (1 − t(P^R_S − 1))` through `t^n` for `S = R/I`.
pub fn golod_map_check(map: &QuotientMap, n: usize) -> Result<CheckReport> {
    let p_rk = poincare_series(&map.source, n)?;
    let p_rs = poincare_series_of(&FDModule::cyclic(&map.ideal)?, n);
    let denom = TruncatedSeries::one(n).sub(&p_rs.sub(&TruncatedSeries::one(n)).shift(1));
    let rhs = p_rk.mul(&denom.inverse()?);
    let lhs = poincare_series(&map.target, n)?;
    Ok(compare("Golod-map", "P_S_k", &lhs, "golod_formula", &rhs, n))
}

/// The three complete-intersection tests on `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiCheck {
    pub h1_equals_embdim: bool,
    pub eps3_zero: bool,
    pub h2_equals_h1_squared: bool,
}

impl CiCheck {
    pub fn value(&self) -> bool {
        self.h1_equals_embdim
    }
}

/// Artinian `S` is a complete intersection: `dim H_1 = embdim`, checked
/// against `ε_3 = 0` and `H_2 = H_1²`.
pub fn ci_details(ring: &Ring) -> Result<CiCheck> {
    let h = ring_homology(ring);
    let h1_equals_embdim = h.dim(1) == ring.embdim();
    let eps3_zero = deviations(ring, 3)?.get(3).is_zero();
    let h2_equals_h1_squared = h.length() < 2 || homology_product(&h, 1, 1)?.dim() == h.dim(2);
    let c = CiCheck {
        h1_equals_embdim,
        eps3_zero,
        h2_equals_h1_squared,
    };
    if c.h1_equals_embdim != c.eps3_zero || c.h1_equals_embdim != c.h2_equals_h1_squared {
        return Err(Error::InternalInconsistency(format!(
            "complete intersection tests disagree: {c:?}"
        )));
    }
    Ok(c)
}

pub fn ci_check(ring: &Ring) -> Result<bool> {
    Ok(ci_details(ring)?.value())
}

/// `R → R/I` for an ideal given directly.
pub fn golod_map_check_ideal(ideal: &RingIdeal, n: usize) -> Result<CheckReport> {
    golod_map_check(&crate::ringcore::quotient_ring(ideal)?, n)
}
