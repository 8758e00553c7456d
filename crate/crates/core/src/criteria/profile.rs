use serde_json::{json, Value};

use crate::error::Result;
use crate::report::Witness;
use crate::resolve::{tor_comparison_with, tor_kk_map_with, FDModule, FreeResolution, ModuleMap, TorMap};
use crate::ringcore::QuotientMap;
use crate::series::{first_mismatch, TruncatedSeries};

/// The three equivalent descriptions of a large map `R → S`, evaluated
/// degree by degree through `n`.
#[derive(Debug, Clone)]
pub struct LargeProfile {
    pub truncation: usize,
    /// `Tor^R_i(S,k) → Tor^R_i(k,k)`.
    pub phi: Vec<TorMap>,
    /// `Tor^R_i(k,k) → Tor^S_i(k,k)`.
    pub f: Vec<TorMap>,
    pub p_rk: TruncatedSeries,
    pub p_rs: TruncatedSeries,
    pub p_sk: TruncatedSeries,
}

/// Which description failed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LargeCondition {
    Surjective,
    Injective,
    Multiplicative,
}

impl LargeCondition {
    pub fn name(&self) -> &'static str {
        match self {
            LargeCondition::Surjective => "Tor(k,k) surjectivity",
            LargeCondition::Injective => "Tor(S,k) injectivity",
            LargeCondition::Multiplicative => "Poincare multiplicativity",
        }
    }
}

impl LargeProfile {
    pub fn new(map: &QuotientMap, n: usize) -> Result<Self> {
        let k_r = FDModule::residue_field(&map.source)?;
        let k_s = FDModule::residue_field(&map.target)?;
        let proj = ModuleMap::projection_to_residue_field(&map.ideal)?;
        let (res_rs, (res_rk, res_sk)) = rayon::join(
            || FreeResolution::new(&proj.source, n),
            || rayon::join(|| FreeResolution::new(&k_r, n), || FreeResolution::new(&k_s, n)),
        );
        let phi = tor_comparison_with(&proj, &res_rs, &res_rk, n)?;
        let f = tor_kk_map_with(map, &res_rk, &res_sk, n)?;
        Ok(LargeProfile {
            truncation: n,
            phi,
            f,
            p_rk: TruncatedSeries::from_usize(&res_rk.betti(), n),
            p_rs: TruncatedSeries::from_usize(&res_rs.betti(), n),
            p_sk: TruncatedSeries::from_usize(&res_sk.betti(), n),
        })
    }

    pub fn first_non_injective(&self, n: usize) -> Option<usize> {
        self.phi.iter().take(n + 1).find(|m| !m.injective()).map(|m| m.degree)
    }

    pub fn first_non_surjective(&self, n: usize) -> Option<usize> {
        self.f.iter().take(n + 1).find(|m| !m.surjective()).map(|m| m.degree)
    }

    pub fn product(&self) -> TruncatedSeries {
        self.p_rs.mul(&self.p_sk)
    }

    pub fn first_mismatch(&self, n: usize) -> Option<usize> {
        first_mismatch(&self.p_rk, &self.product()).filter(|&d| d <= n)
    }

    /// Earliest failure through degree `n`, with a witness.
    pub fn first_failure(&self, n: usize) -> Option<(LargeCondition, Witness)> {
        let mut found: Vec<(usize, LargeCondition, Witness)> = Vec::new();
        if let Some(q) = self.first_non_surjective(n) {
            let m = &self.f[q];
            found.push((
                q,
                LargeCondition::Surjective,
                Witness::new(
                    Some(q),
                    format!(
                        "Tor^R_{q}(k,k) -> Tor^S_{q}(k,k) has rank {} < {}",
                        m.rank,
                        m.matrix.rows()
                    ),
                )
                .with_data(json!({ "rank": m.rank, "target_dim": m.matrix.rows() })),
            ));
        }
        if let Some(q) = self.first_non_injective(n) {
            let m = &self.phi[q];
            found.push((
                q,
                LargeCondition::Injective,
                Witness::new(
                    Some(q),
                    format!(
                        "Tor^R_{q}(S,k) -> Tor^R_{q}(k,k) has rank {} < {}",
                        m.rank,
                        m.matrix.cols()
                    ),
                )
                .with_data(json!({ "rank": m.rank, "source_dim": m.matrix.cols() })),
            ));
        }
        if let Some(q) = self.first_mismatch(n) {
            let prod = self.product();
            found.push((
                q,
                LargeCondition::Multiplicative,
                Witness::new(
                    Some(q),
                    format!(
                        "coefficient of t^{q}: P_R_k = {}, P_R_S*P_S_k = {}",
                        self.p_rk.coeff(q),
                        prod.coeff(q)
                    ),
                ),
            ));
        }
        found.sort_by_key(|(q, c, _)| (*q, *c as u8));
        found.into_iter().next().map(|(_, c, w)| (c, w))
    }

    pub fn holds_through(&self, n: usize) -> bool {
        self.first_failure(n).is_none()
    }

    pub fn to_json(&self, n: usize) -> Value {
        let n = n.min(self.truncation);
        let take = |s: &TruncatedSeries| -> Value {
            let t = TruncatedSeries::new(s.coeffs().to_vec(), n);
            t.to_json()
        };
        json!({
            "N": n,
            "phi_injective": self.phi.iter().take(n + 1).map(|m| m.injective()).collect::<Vec<_>>(),
            "f_surjective": self.f.iter().take(n + 1).map(|m| m.surjective()).collect::<Vec<_>>(),
            "P_R_k": take(&self.p_rk),
            "P_R_S": take(&self.p_rs),
            "P_S_k": take(&self.p_sk),
        })
    }
}
