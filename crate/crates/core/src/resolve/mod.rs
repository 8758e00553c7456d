//! Minimal graded free resolutions of finite-dimensional modules, Betti
//! numbers, maps on Tor, and the linear part of a resolution.

mod lift;
mod module;
mod resolution;

use std::collections::BTreeMap;

use serde::Serialize;

pub use lift::{lift_chain_map, tor_comparison, tor_comparison_with, TorMap};
pub use module::{FDModule, ModuleMap};
pub use resolution::{FreeComplex, FreeResolution};

use crate::error::{Error, Result};
use crate::exactla::{image_basis, kernel_basis};
use crate::ringcore::{QuotientMap, Ring};

/// Default homological truncation.
pub const DEFAULT_TRUNCATION: usize = 6;

pub fn minimal_resolution(module: &FDModule, n: usize) -> FreeResolution {
    FreeResolution::new(module, n)
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `entries[i]` maps internal degree `j` to `β_{i,j}`.
    pub entries: Vec<BTreeMap<i32, usize>>,
}

impl BettiTable {
    pub fn from_resolution(res: &FreeResolution) -> Self {
        let entries = (0..=res.len())
            .map(|i| {
                let mut row = BTreeMap::new();
                for &d in res.complex().shifts(i) {
                    *row.entry(d).or_insert(0) += 1;
                }
                row
            })
            .collect();
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.values().sum()).collect()
    }

    /// All generators of `F_i` sit in degree `i + d0`.
    pub fn is_linear(&self, d0: i32) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.keys().all(|&j| j == i as i32 + d0))
    }

    /// Rows `i` as `(j, β_{i,j})` lists, for display.
    pub fn rows(&self) -> Vec<Vec<(i32, usize)>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|(&j, &b)| (j, b)).collect())
            .collect()
    }
}

pub fn betti_table(module: &FDModule, n: usize) -> BettiTable {
    BettiTable::from_resolution(&FreeResolution::new(module, n))
}

/// `β_0, …, β_n`.
pub fn poincare_coeffs(module: &FDModule, n: usize) -> Vec<usize> {
    FreeResolution::new(module, n).betti()
}

/// `Tor^R_i(k,k) → Tor^S_i(k,k)` for `i ≤ n`, given resolutions of `k`
/// over both rings.
pub fn tor_kk_map_with(
    map: &QuotientMap,
    over_r: &FreeResolution,
    over_s: &FreeResolution,
    n: usize,
) -> Result<Vec<TorMap>> {
    let source = over_r.complex().base_change(&map.target, &map.matrix);
    let aug = vec![vec![1u32]];
    let id = crate::exactla::FpMatrix::identity(map.target.field(), 1);
    lift_chain_map(&source, &aug, &id, over_s, n)
}

/// `Tor^R_i(k,k) → Tor^S_i(k,k)` for `i ≤ n`.
pub fn tor_kk_map(map: &QuotientMap, n: usize) -> Result<Vec<TorMap>> {
    let over_r = FreeResolution::new(&FDModule::residue_field(&map.source)?, n);
    let over_s = FreeResolution::new(&FDModule::residue_field(&map.target)?, n);
    tor_kk_map_with(map, &over_r, &over_s, n)
}

/// Homology of the linear part of a minimal resolution.
#[derive(Debug, Clone, Serialize)]
pub struct LinearityDefect {
    pub truncation: usize,
    /// `dim_k H_i(lin F)` for `0 ≤ i ≤ N`.
    pub lin_homology: Vec<usize>,
    /// Largest `i ≤ N` with `H_i(lin F) ≠ 0`, if any.
    pub max_nonzero: Option<usize>,
    /// No linear-part homology in degrees `1..=N`; this is the Koszul
    /// property verified through `N`.
    pub koszul_to_n: bool,
    /// The Betti table is linear through `N + 1` (only meaningful for
    /// modules generated in one degree).
    pub diagonal_betti: Option<bool>,
    pub betti: BettiTable,
}

/// `lin(F)` through degree `n`, with the Betti-table cross-check when `M`
/// is generated in a single degree.
pub fn linearity_defect(module: &FDModule, n: usize) -> Result<LinearityDefect> {
    let ring = module.ring();
    if !ring.is_graded() {
        return Err(Error::NotGraded("linearity defect needs a graded ring".into()));
    }
    let res = FreeResolution::new(module, n + 1);
    let lin = res.complex().linear_part();
    let lin_homology: Vec<usize> = (0..=n).map(|i| lin_homology_dim(ring, &lin, i)).collect();
    let betti = BettiTable::from_resolution(&res);
    let max_nonzero = (0..=n).rev().find(|&i| lin_homology[i] != 0);
    let koszul_to_n = lin_homology[1..].iter().all(|&h| h == 0);
    let gen_degrees: Vec<i32> = res.complex().shifts(0).to_vec();
    let single = gen_degrees
        .first()
        .copied()
        .filter(|d0| gen_degrees.iter().all(|d| d == d0));
    let diagonal_betti = single.map(|d0| betti.is_linear(d0));
    if let Some(diag) = diagonal_betti {
        // First off-diagonal generator in F_{i+1} ⇔ first lin homology in
        // H_i (with H_0 compared against M itself).
        let lin_ok = koszul_to_n && lin_homology[0] == module.dim();
        if diag != lin_ok {
            return Err(Error::InternalInconsistency(format!(
                "linear Betti table ({diag}) disagrees with acyclic linear part ({lin_ok})"
            )));
        }
    }
    Ok(LinearityDefect {
        truncation: n,
        lin_homology,
        max_nonzero,
        koszul_to_n,
        diagonal_betti,
        betti,
    })
}

/// `dim_k H_i` of a complex of free modules, computed per internal degree.
fn lin_homology_dim(ring: &Ring, cx: &FreeComplex, i: usize) -> usize {
    let mut total = 0;
    for (d, cols) in cx.blocks(i) {
        let z = if i == 0 {
            cols.len()
        } else {
            let rows = resolution::free_blocks_degree(ring, cx.shifts(i - 1), d);
            kernel_basis(&cx.boundary_block(i, &rows, &cols)).dim()
        };
        let b = if i < cx.len() {
            let src = resolution::free_blocks_degree(ring, cx.shifts(i + 1), d);
            image_basis(&cx.boundary_block(i + 1, &cols, &src)).dim()
        } else {
            0
        };
        total += z - b;
    }
    total
}

#[cfg(test)]
mod tests;
