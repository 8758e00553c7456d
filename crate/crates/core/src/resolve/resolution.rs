use std::collections::BTreeMap;

use rayon::prelude::*;

use super::module::FDModule;
use crate::exactla::{FpMatrix, PrimeField, Rref};
use crate::ringcore::{Ring, SparseVec};

/// A complex of graded free modules `F_0 ← F_1 ← …` over a ring. The
/// k-basis of `F_i` is `e_g ⊗ b` at position `g · dim R + b`.
#[derive(Clone)]
pub struct FreeComplex {
    ring: Ring,
    /// Degrees of the free generators of each `F_i`.
    shifts: Vec<Vec<i32>>,
    /// `boundaries[i][g]`: image of generator `g` of `F_i` in `F_{i-1}`;
    /// empty for `i = 0`.
    boundaries: Vec<Vec<SparseVec>>,
}

/// Positions of a free module's k-basis grouped by internal degree, each
/// list ascending.
pub(crate) fn free_blocks(ring: &Ring, shifts: &[i32]) -> BTreeMap<i32, Vec<usize>> {
    let dim = ring.dim();
    let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (g, &s) in shifts.iter().enumerate() {
        for b in 0..dim {
            out.entry(s + ring.degree_of(b) as i32).or_default().push(g * dim + b);
        }
    }
    out.values_mut().for_each(|v| v.sort_unstable());
    out
}

/// `b · v` for a monomial `b` and a vector of a free module, added into
/// the dense block `out` indexed by `block`.
pub(crate) fn mul_into_block(ring: &Ring, b: usize, c: u32, v: &SparseVec, block: &[usize], out: &mut [u32]) {
    let f = ring.field();
    let dim = ring.dim();
    for &(idx, val) in v {
        let (g, b2) = (idx / dim, idx % dim);
        let cv = f.mul(c, val);
        for &(k, z) in ring.basis_product(b, b2) {
            let pos = block
                .binary_search(&(g * dim + k))
                .expect("product stays in its degree");
            out[pos] = f.add(out[pos], f.mul(cv, z));
        }
    }
}

impl FreeComplex {
    pub fn new(ring: &Ring, shifts: Vec<Vec<i32>>, boundaries: Vec<Vec<SparseVec>>) -> Self {
        assert_eq!(shifts.len(), boundaries.len());
        FreeComplex {
            ring: ring.clone(),
            shifts,
            boundaries,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }
    /// Highest computed homological degree.
    pub fn len(&self) -> usize {
        self.shifts.len().saturating_sub(1)
    }
    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }
    pub fn rank(&self, i: usize) -> usize {
        self.shifts.get(i).map_or(0, Vec::len)
    }
    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(Vec::len).collect()
    }
    pub fn shifts(&self, i: usize) -> &[i32] {
        &self.shifts[i]
    }
    pub fn boundary(&self, i: usize, g: usize) -> &SparseVec {
        &self.boundaries[i][g]
    }
    pub fn boundaries(&self, i: usize) -> &[SparseVec] {
        &self.boundaries[i]
    }
    pub fn blocks(&self, i: usize) -> BTreeMap<i32, Vec<usize>> {
        free_blocks(&self.ring, &self.shifts[i])
    }

    /// Matrix of `d_i` from the degree-`d` part of `F_i` (`cols`) to that
    /// of `F_{i-1}` (`rows`).
    pub fn boundary_block(&self, i: usize, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let dim = self.ring.dim();
        let f = self.field();
        let columns: Vec<Vec<u32>> = cols
            .par_iter()
            .map(|&idx| {
                let mut out = vec![0u32; rows.len()];
                mul_into_block(&self.ring, idx % dim, 1, &self.boundaries[i][idx / dim], rows, &mut out);
                out
            })
            .collect();
        FpMatrix::from_col_vectors(f, rows.len(), &columns)
    }

    /// Apply `d_i` to a vector of `F_i`.
    pub fn apply_boundary(&self, i: usize, v: &SparseVec) -> SparseVec {
        let f = self.field();
        let dim = self.ring.dim();
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(idx, c) in v {
            let (g, b) = (idx / dim, idx % dim);
            for &(idx2, c2) in &self.boundaries[i][g] {
                let (g2, b2) = (idx2 / dim, idx2 % dim);
                for &(k, z) in self.ring.basis_product(b, b2) {
                    let e = acc.entry(g2 * dim + k).or_insert(0);
                    *e = f.add(*e, f.mul(f.mul(c, c2), z));
                }
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Keep only boundary entries whose ring coefficient has degree one.
    pub fn linear_part(&self) -> FreeComplex {
        let dim = self.ring.dim();
        let boundaries = self
            .boundaries
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|v| {
                        v.iter()
                            .copied()
                            .filter(|&(idx, _)| self.ring.degree_of(idx % dim) == 1)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FreeComplex::new(&self.ring, self.shifts.clone(), boundaries)
    }

    /// Base change along a ring map given by its matrix on monomial bases.
    pub fn base_change(&self, target: &Ring, matrix: &FpMatrix) -> FreeComplex {
        let f = self.field();
        let (dr, ds) = (self.ring.dim(), target.dim());
        let cols: Vec<Vec<u32>> = (0..dr).map(|b| matrix.column(b)).collect();
        let boundaries = self
            .boundaries
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|v| {
                        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
                        for &(idx, c) in v {
                            let (g, b) = (idx / dr, idx % dr);
                            for (k, &z) in cols[b].iter().enumerate() {
                                if z != 0 {
                                    let e = acc.entry(g * ds + k).or_insert(0);
                                    *e = f.add(*e, f.mul(c, z));
                                }
                            }
                        }
                        acc.into_iter().filter(|&(_, c)| c != 0).collect()
                    })
                    .collect()
            })
            .collect();
        FreeComplex::new(target, self.shifts.clone(), boundaries)
    }
}

/// A minimal graded free resolution `F → M`, computed through `F_N`.
#[derive(Clone)]
pub struct FreeResolution {
    module: FDModule,
    complex: FreeComplex,
    /// Image in `M` of each generator of `F_0`.
    augmentation: Vec<Vec<u32>>,
}

/// Kernel of a block map, kept in reduced echelon form: kernel vectors
/// are indexed by the free columns.
struct KernelBlock {
    degree: i32,
    /// Positions (in the ambient) of the block's basis.
    block: Vec<usize>,
    rref: Rref,
    free: Vec<usize>,
}

impl KernelBlock {
    fn new(degree: i32, block: Vec<usize>, map: &FpMatrix) -> Self {
        let rref = map.rref();
        let mut is_pivot = vec![false; block.len()];
        for &c in &rref.pivot_cols {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..block.len()).filter(|&c| !is_pivot[c]).collect();
        KernelBlock {
            degree,
            block,
            rref,
            free,
        }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    /// Kernel vector attached to the `k`-th free column, in ambient
    /// positions.
    fn vector(&self, k: usize, f: PrimeField) -> SparseVec {
        let c = self.free[k];
        let mut v: Vec<(usize, u32)> = vec![(self.block[c], 1)];
        for (r, &pc) in self.rref.pivot_cols.iter().enumerate() {
            let a = self.rref.matrix.get(r, c);
            if a != 0 {
                v.push((self.block[pc], f.neg(a)));
            }
        }
        v.sort_unstable();
        v
    }
}

/// Ambient of a kernel: the module at step 0, a free module afterwards.
enum Ambient<'a> {
    Module(&'a FDModule),
    Free(&'a Ring),
}

impl Ambient<'_> {
    /// `x_k · v` (the `k`-th generator of `m`) restricted to `out_block`.
    fn linear_times(&self, k: usize, v: &SparseVec, out_block: &[usize]) -> Vec<u32> {
        match self {
            Ambient::Module(m) => {
                let mut out = vec![0u32; out_block.len()];
                let a = &m.actions()[k];
                let f = m.field();
                for &(j, c) in v {
                    for (pos, &row) in out_block.iter().enumerate() {
                        let z = a.get(row, j);
                        if z != 0 {
                            out[pos] = f.add(out[pos], f.mul(c, z));
                        }
                    }
                }
                out
            }
            Ambient::Free(ring) => {
                let mut out = vec![0u32; out_block.len()];
                let dim = ring.dim();
                let x = ring.linear_basis()[k];
                let f = ring.field();
                for &(idx, c) in v {
                    let (g, b) = (idx / dim, idx % dim);
                    for &(t, z) in ring.basis_product(x, b) {
                        let pos = out_block.binary_search(&(g * dim + t)).expect("degree one step");
                        out[pos] = f.add(out[pos], f.mul(c, z));
                    }
                }
                out
            }
        }
    }
}

/// Minimal generators of a graded submodule given by its kernel blocks:
/// in each degree, a complement of `(mK)_d` inside `K_d`.
fn minimal_generators(
    ambient: &Ambient<'_>,
    kernels: &BTreeMap<i32, KernelBlock>,
    embdim: usize,
    f: PrimeField,
) -> Vec<(i32, SparseVec)> {
    let per_degree: Vec<Vec<(i32, SparseVec)>> = kernels
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|kb| {
            if kb.dim() == 0 {
                return Vec::new();
            }
            let mut rows: Vec<Vec<u32>> = Vec::new();
            if let Some(prev) = kernels.get(&(kb.degree - 1)) {
                for j in 0..prev.dim() {
                    let v = prev.vector(j, f);
                    for k in 0..embdim {
                        let img = ambient.linear_times(k, &v, &kb.block);
                        let restricted: Vec<u32> = kb.free.iter().map(|&c| img[c]).collect();
                        if restricted.iter().any(|&z| z != 0) {
                            rows.push(restricted);
                        }
                    }
                }
            }
            let m = FpMatrix::from_row_vectors(f, kb.dim(), &rows).rref();
            let mut is_pivot = vec![false; kb.dim()];
            for &c in &m.pivot_cols {
                is_pivot[c] = true;
            }
            (0..kb.dim())
                .filter(|&k| !is_pivot[k])
                .map(|k| (kb.degree, kb.vector(k, f)))
                .collect()
        })
        .collect();
    per_degree.into_iter().flatten().collect()
}

impl FreeResolution {
    /// Resolve `M` through homological degree `n`.
    pub fn new(module: &FDModule, n: usize) -> Self {
        let ring = module.ring().clone();
        let f = ring.field();
        let embdim = ring.embdim();

        // Step 0: generators of M itself.
        let mut mblocks: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (j, &d) in module.degrees().iter().enumerate() {
            mblocks.entry(d).or_default().push(j);
        }
        let whole: BTreeMap<i32, KernelBlock> = mblocks
            .iter()
            .map(|(&d, idx)| (d, KernelBlock::new(d, idx.clone(), &FpMatrix::zeros(f, 0, idx.len()))))
            .collect();
        let gens0 = minimal_generators(&Ambient::Module(module), &whole, embdim, f);
        let augmentation: Vec<Vec<u32>> = gens0
            .iter()
            .map(|(_, v)| {
                let mut dense = vec![0u32; module.dim()];
                for &(j, c) in v {
                    dense[j] = c;
                }
                dense
            })
            .collect();
        let mut shifts = vec![gens0.iter().map(|(d, _)| *d).collect::<Vec<i32>>()];
        let mut boundaries: Vec<Vec<SparseVec>> = vec![Vec::new()];

        let mut i = 0;
        while i < n {
            // Kernel of F_i → F_{i-1} (or → M), per degree.
            let src = free_blocks(&ring, &shifts[i]);
            let kernels: BTreeMap<i32, KernelBlock> = src
                .into_iter()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|(d, cols)| {
                    let map = if i == 0 {
                        augmentation_block(
                            module,
                            &augmentation,
                            &ring,
                            mblocks.get(&d).map_or(&[][..], |v| v),
                            &cols,
                        )
                    } else {
                        let rows = free_blocks_degree(&ring, &shifts[i - 1], d);
                        let cx = FreeComplexView {
                            ring: &ring,
                            boundaries: &boundaries[i],
                        };
                        cx.block(&rows, &cols)
                    };
                    (d, KernelBlock::new(d, cols, &map))
                })
                .collect();
            let gens = minimal_generators(&Ambient::Free(&ring), &kernels, embdim, f);
            for (_, v) in &gens {
                assert!(
                    v.iter().all(|&(idx, _)| idx % ring.dim() != 0),
                    "non-minimal resolution: a boundary entry is a unit"
                );
            }
            shifts.push(gens.iter().map(|(d, _)| *d).collect());
            boundaries.push(gens.into_iter().map(|(_, v)| v).collect());
            i += 1;
        }
        FreeResolution {
            module: module.clone(),
            complex: FreeComplex::new(&ring, shifts, boundaries),
            augmentation,
        }
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }
    pub fn augmentation(&self) -> &[Vec<u32>] {
        &self.augmentation
    }
    pub fn ring(&self) -> &Ring {
        self.complex.ring()
    }
    pub fn len(&self) -> usize {
        self.complex.len()
    }
    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }
    /// `β_0, …, β_N`.
    pub fn betti(&self) -> Vec<usize> {
        self.complex.ranks()
    }

    /// Matrix of the augmentation `F_0 → M` between degree blocks.
    pub fn augmentation_block(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        augmentation_block(&self.module, &self.augmentation, self.ring(), rows, cols)
    }

    /// `d_i` (or the augmentation for `i = 0`) between degree blocks.
    pub fn map_block(&self, i: usize, rows: &[usize], cols: &[usize]) -> FpMatrix {
        if i == 0 {
            self.augmentation_block(rows, cols)
        } else {
            self.complex.boundary_block(i, rows, cols)
        }
    }

    /// Positions of the degree-`d` part of `M` (for `i = 0`) or of
    /// `F_{i-1}`.
    pub fn target_block(&self, i: usize, d: i32) -> Vec<usize> {
        if i == 0 {
            (0..self.module.dim())
                .filter(|&j| self.module.degrees()[j] == d)
                .collect()
        } else {
            free_blocks_degree(self.ring(), self.complex.shifts(i - 1), d)
        }
    }
}

/// Positions of the degree-`d` part of a free module, ascending.
pub(crate) fn free_blocks_degree(ring: &Ring, shifts: &[i32], d: i32) -> Vec<usize> {
    let dim = ring.dim();
    let mut out = Vec::new();
    for (g, &s) in shifts.iter().enumerate() {
        let e = d - s;
        if e < 0 {
            continue;
        }
        for b in ring.degree_range(e as u32) {
            out.push(g * dim + b);
        }
    }
    out
}

fn augmentation_block(module: &FDModule, aug: &[Vec<u32>], ring: &Ring, rows: &[usize], cols: &[usize]) -> FpMatrix {
    let dim = ring.dim();
    let columns: Vec<Vec<u32>> = cols
        .iter()
        .map(|&idx| {
            let v = module.monomial_actions()[idx % dim].mul_vec(&aug[idx / dim]);
            rows.iter().map(|&r| v[r]).collect()
        })
        .collect();
    FpMatrix::from_col_vectors(module.field(), rows.len(), &columns)
}

struct FreeComplexView<'a> {
    ring: &'a Ring,
    boundaries: &'a [SparseVec],
}

impl FreeComplexView<'_> {
    fn block(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let dim = self.ring.dim();
        let columns: Vec<Vec<u32>> = cols
            .iter()
            .map(|&idx| {
                let mut out = vec![0u32; rows.len()];
                mul_into_block(self.ring, idx % dim, 1, &self.boundaries[idx / dim], rows, &mut out);
                out
            })
            .collect();
        FpMatrix::from_col_vectors(self.ring.field(), rows.len(), &columns)
    }
}
