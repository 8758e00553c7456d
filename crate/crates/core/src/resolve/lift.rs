use std::collections::{BTreeMap, HashMap};

use super::module::ModuleMap;
use super::resolution::{free_blocks_degree, FreeComplex, FreeResolution};
use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, LinearSolver};
use crate::ringcore::{Ring, SparseVec};

/// A map `Tor_i(M, k) → Tor_i(M', k)` in free-generator coordinates, with
/// its rank.
#[derive(Debug, Clone)]
pub struct TorMap {
    pub degree: usize,
    /// `β'_i × β_i`.
    pub matrix: FpMatrix,
    pub rank: usize,
}

impl TorMap {
    fn new(degree: usize, matrix: FpMatrix) -> Self {
        TorMap {
            degree,
            rank: matrix.rank(),
            matrix,
        }
    }
    pub fn injective(&self) -> bool {
        self.rank == self.matrix.cols()
    }
    pub fn surjective(&self) -> bool {
        self.rank == self.matrix.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }
}

/// Solves `d_i x = y` over one degree block of a resolution.
struct BlockSolver {
    rows: Vec<usize>,
    cols: Vec<usize>,
    solver: LinearSolver,
}

struct Solvers<'a> {
    target: &'a FreeResolution,
    cache: HashMap<(usize, i32), BlockSolver>,
}

impl<'a> Solvers<'a> {
    fn new(target: &'a FreeResolution) -> Self {
        Solvers {
            target,
            cache: HashMap::new(),
        }
    }

    /// A preimage under the degree-`d` part of `d_i` (or of the
    /// augmentation when `i = 0`) of the dense target-block vector `y`.
    fn solve(&mut self, i: usize, d: i32, y: &BTreeMap<usize, u32>) -> Result<SparseVec> {
        let t = self.target;
        let entry = self.cache.entry((i, d)).or_insert_with(|| {
            let rows = t.target_block(i, d);
            let cols = free_blocks_degree(t.ring(), t.complex().shifts(i), d);
            let solver = LinearSolver::new(&t.map_block(i, &rows, &cols));
            BlockSolver { rows, cols, solver }
        });
        let mut dense = vec![0u32; entry.rows.len()];
        for (&idx, &c) in y {
            let pos = entry
                .rows
                .binary_search(&idx)
                .map_err(|_| Error::LiftFailure(format!("value outside degree {d}")))?;
            dense[pos] = c;
        }
        let x = entry
            .solver
            .solve(&dense)
            .ok_or_else(|| Error::LiftFailure(format!("no preimage in homological degree {i}, internal degree {d}")))?;
        Ok(x.into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (entry.cols[k], c))
            .collect())
    }
}

/// `Σ c · b · φ(g)` for `v = Σ c e_g ⊗ b` and images `φ(g)`.
fn apply_linear(ring: &Ring, v: &SparseVec, images: &[SparseVec]) -> BTreeMap<usize, u32> {
    let f = ring.field();
    let dim = ring.dim();
    let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
    for &(idx, c) in v {
        let (g, b) = (idx / dim, idx % dim);
        for &(idx2, c2) in &images[g] {
            let (h, b2) = (idx2 / dim, idx2 % dim);
            for &(k, z) in ring.basis_product(b, b2) {
                let e = acc.entry(h * dim + k).or_insert(0);
                *e = f.add(*e, f.mul(f.mul(c, c2), z));
            }
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

/// Lift a module map to a chain map from `source` (a complex of free
/// modules over the same ring as `target`, augmented onto the map's
/// source) to the resolution `target`, and reduce it modulo `m`.
pub fn lift_chain_map(
    source: &FreeComplex,
    source_aug: &[Vec<u32>],
    map: &FpMatrix,
    target: &FreeResolution,
    n: usize,
) -> Result<Vec<TorMap>> {
    let ring = target.ring().clone();
    let f = ring.field();
    let dim = ring.dim();
    let top = n.min(source.len()).min(target.len());
    let mut solvers = Solvers::new(target);
    let mut out = Vec::with_capacity(top + 1);
    let mut prev: Vec<SparseVec> = Vec::new();
    for i in 0..=top {
        let shifts = source.shifts(i);
        let mut images = Vec::with_capacity(shifts.len());
        for (g, &d) in shifts.iter().enumerate() {
            let y: BTreeMap<usize, u32> = if i == 0 {
                map.mul_vec(&source_aug[g])
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .collect()
            } else {
                apply_linear(&ring, source.boundary(i, g), &prev)
            };
            images.push(solvers.solve(i, d, &y)?);
        }
        let mut m = FpMatrix::zeros(f, target.complex().rank(i), shifts.len());
        for (g, img) in images.iter().enumerate() {
            for &(idx, c) in img {
                if idx % dim == 0 {
                    m.set(idx / dim, g, c);
                }
            }
        }
        out.push(TorMap::new(i, m));
        prev = images;
    }
    Ok(out)
}

/// `Tor_i(M, k) → Tor_i(M', k)` for `i ≤ n`, from resolutions of both
/// ends.
pub fn tor_comparison_with(
    map: &ModuleMap,
    source: &FreeResolution,
    target: &FreeResolution,
    n: usize,
) -> Result<Vec<TorMap>> {
    lift_chain_map(source.complex(), source.augmentation(), &map.matrix, target, n)
}

/// `Tor_i(M, k) → Tor_i(M', k)` for `i ≤ n`.
pub fn tor_comparison(map: &ModuleMap, n: usize) -> Result<Vec<TorMap>> {
    let source = FreeResolution::new(&map.source, n);
    let target = FreeResolution::new(&map.target, n);
    tor_comparison_with(map, &source, &target, n)
}
