use super::field::PrimeField;
use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// A k-subspace of `F_p^n`, stored canonically as the nonzero rows of its
/// reduced row-echelon basis.  Two subspaces are equal iff their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: FpMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: FpMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &FpMatrix) -> Self {
        let mut work = m.clone();
        let pivots = work.rref_in_place();
        work.truncate_rows(pivots.len());
        Subspace {
            ambient_dim: m.cols(),
            basis: work,
            pivots,
        }
    }

    pub fn span(field: PrimeField, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        Self::row_space(&FpMatrix::from_row_vectors(field, ambient_dim, vectors))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vectors()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Coordinates not used as pivots; the unit vectors there span a
    /// complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// `v` minus its projection along the basis: zero at every pivot column,
    /// and zero altogether iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim, "vector length must equal ambient dimension");
        let f = self.field();
        let mut out = v.to_vec();
        for (k, &c) in self.pivots.iter().enumerate() {
            let a = out[c];
            if a == 0 {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(self.basis.row(k)) {
                if b != 0 {
                    *slot = f.sub(*slot, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates with respect to the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains(v).then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient_dim));
        }
        // (a, b) with sum a_i A_i + sum b_j B_j = 0 gives sum a_i A_i in both.
        let stacked = self.basis.vstack(&other.basis).transpose();
        let ker = kernel_basis(&stacked);
        let a = self.dim();
        let vectors: Vec<Vec<u32>> = ker
            .basis_vectors()
            .iter()
            .map(|k| {
                let mut v = vec![0u32; self.ambient_dim];
                for (i, &c) in k[..a].iter().enumerate() {
                    if c != 0 {
                        for (slot, &b) in v.iter_mut().zip(self.basis.row(i)) {
                            *slot = f.add(*slot, f.mul(c, b));
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::span(f, self.ambient_dim, &vectors))
    }

    /// Image under a linear map given as a `target x ambient` matrix.
    pub fn image_under(&self, map: &FpMatrix) -> Result<Subspace> {
        if map.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "map has {} columns, subspace lives in dimension {}",
                map.cols(),
                self.ambient_dim
            )));
        }
        let vectors: Vec<Vec<u32>> = self.basis_vectors().iter().map(|v| map.mul_vec(v)).collect();
        Ok(Subspace::span(self.field(), map.rows(), &vectors))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// `{v : Mv = 0}`.
pub fn kernel_basis(m: &FpMatrix) -> Subspace {
    let f = m.field();
    let r = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &r.pivot_cols {
        is_pivot[c] = true;
    }
    let vectors: Vec<Vec<u32>> = (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; m.cols()];
            v[free] = 1;
            for (k, &pc) in r.pivot_cols.iter().enumerate() {
                v[pc] = f.neg(r.matrix.get(k, free));
            }
            v
        })
        .collect();
    Subspace::span(f, m.cols(), &vectors)
}

/// Column space of `m`.
pub fn image_basis(m: &FpMatrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn subspace_contains(a: &Subspace, v: &[u32]) -> bool {
    a.contains(v)
}

/// Matrix of the map `V/A → W/B` induced by `f: V → W`, where the quotients
/// carry the unit vectors at the non-pivot coordinates of `A` and `B` as
/// bases.  Fails if `f(A)` is not contained in `B`.
pub fn induced_quotient_map(f: &FpMatrix, a: &Subspace, b: &Subspace) -> Result<FpMatrix> {
    if f.cols() != a.ambient_dim() || f.rows() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, subspaces live in {} and {}",
            f.rows(),
            f.cols(),
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    for v in a.basis_vectors() {
        if !b.contains(&f.mul_vec(&v)) {
            return Err(Error::DimensionMismatch(
                "map does not send the source subspace into the target subspace".into(),
            ));
        }
    }
    let src = a.complement_indices();
    let dst = b.complement_indices();
    let cols: Vec<Vec<u32>> = src
        .iter()
        .map(|&j| {
            let img = b.reduce(&f.column(j));
            dst.iter().map(|&i| img[i]).collect()
        })
        .collect();
    Ok(FpMatrix::from_col_vectors(f.field(), dst.len(), &cols))
}

/// Precomputed solver for `A x = y` returning the canonical particular
/// solution: free variables zero, pivot variables read off the RREF.
#[derive(Debug, Clone)]
pub struct LinearSolver {
    cols: usize,
    rank: usize,
    pivots: Vec<usize>,
    transform: FpMatrix,
}

impl LinearSolver {
    pub fn new(a: &FpMatrix) -> Self {
        let f = a.field();
        let n = a.cols();
        let mut aug = a.hstack(&FpMatrix::identity(f, a.rows()));
        let pivots = aug.rref_prefix_in_place(n);
        let rows: Vec<usize> = (0..a.rows()).collect();
        let tcols: Vec<usize> = (n..n + a.rows()).collect();
        LinearSolver {
            cols: n,
            rank: pivots.len(),
            pivots,
            transform: aug.select(&rows, &tcols),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn solve(&self, y: &[u32]) -> Option<Vec<u32>> {
        let z = self.transform.mul_vec(y);
        if z[self.rank..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (k, &c) in self.pivots.iter().enumerate() {
            x[c] = z[k];
        }
        Some(x)
    }
}

/// The quotient `top / bottom` of nested subspaces with a fixed choice of
/// representatives for a basis.
#[derive(Debug, Clone)]
pub struct SubQuotient {
    top: Subspace,
    bottom: Subspace,
    reps: Vec<Vec<u32>>,
    solver: LinearSolver,
}

impl SubQuotient {
    pub fn new(top: Subspace, bottom: Subspace) -> Result<Self> {
        if !top.contains_subspace(&bottom) {
            return Err(Error::DimensionMismatch("bottom is not contained in top".into()));
        }
        let f = top.field();
        let mut span = bottom.clone();
        let mut reps = Vec::new();
        for v in top.basis_vectors() {
            if !span.contains(&v) {
                span = Subspace::row_space(&span.basis().vstack(&FpMatrix::from_row_vectors(
                    f,
                    top.ambient_dim(),
                    std::slice::from_ref(&v),
                )));
                reps.push(v);
            }
        }
        Ok(Self::with_reps(top, bottom, reps))
    }

    fn with_reps(top: Subspace, bottom: Subspace, reps: Vec<Vec<u32>>) -> Self {
        let f = top.field();
        let mut cols = reps.clone();
        cols.extend(bottom.basis_vectors());
        let solver = LinearSolver::new(&FpMatrix::from_col_vectors(f, top.ambient_dim(), &cols));
        SubQuotient {
            top,
            bottom,
            reps,
            solver,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }
    pub fn top(&self) -> &Subspace {
        &self.top
    }
    pub fn bottom(&self) -> &Subspace {
        &self.bottom
    }
    pub fn reps(&self) -> &[Vec<u32>] {
        &self.reps
    }

    /// Coordinates of the class of `v` (which must lie in `top`).
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let x = self.solver.solve(v)?;
        Some(x[..self.reps.len()].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let fld = f(5);
        assert!(kernel_basis(&FpMatrix::identity(fld, 4)).is_zero());
        assert_eq!(kernel_basis(&FpMatrix::zeros(fld, 2, 3)), Subspace::full(fld, 3));
    }

    #[test]
    fn kernel_of_all_ones_row_over_f3() {
        let fld = f(3);
        let m = FpMatrix::from_rows(fld, &[vec![1, 1]]);
        // Enumerate all 9 vectors.
        let mut brute = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                if (a + b) % 3 == 0 {
                    brute.push(vec![a, b]);
                }
            }
        }
        let expected = Subspace::span(fld, 2, &brute);
        assert_eq!(kernel_basis(&m), expected);
        assert_eq!(expected, Subspace::span(fld, 2, &[vec![1, 2]]));
    }

    #[test]
    fn subspace_identities() {
        let fld = f(5);
        let w = Subspace::span(fld, 3, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let full = Subspace::full(fld, 3);
        assert_eq!(full.intersect(&w).unwrap(), w);
        assert_eq!(w.sum(&w).unwrap(), w);
        let x = Subspace::span(fld, 2, &[vec![1, 0]]);
        let y = Subspace::span(fld, 2, &[vec![0, 1]]);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert!(matches!(x.sum(&w), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn induced_map_on_quotients() {
        let fld = f(3);
        // f = identity on F^2, A = span(e0), B = span(e0) -> identity on the e1 class.
        let a = Subspace::span(fld, 2, &[vec![1, 0]]);
        let m = induced_quotient_map(&FpMatrix::identity(fld, 2), &a, &a).unwrap();
        assert_eq!(m, FpMatrix::identity(fld, 1));
        // Projection onto e1 does not map span(e1) into span(e0).
        let b = Subspace::span(fld, 2, &[vec![0, 1]]);
        assert!(induced_quotient_map(&FpMatrix::identity(fld, 2), &b, &a).is_err());
    }

    #[test]
    fn solver_particular_solution() {
        let fld = f(7);
        let a = FpMatrix::from_rows(fld, &[vec![1, 2, 0], vec![0, 0, 1], vec![1, 2, 1]]);
        let s = LinearSolver::new(&a);
        assert_eq!(s.rank(), 2);
        let x = s.solve(&[3, 4, 0]).unwrap();
        assert_eq!(x, vec![3, 0, 4]);
        assert_eq!(a.mul_vec(&x), vec![3, 4, 0]);
        assert!(s.solve(&[1, 0, 0]).is_none());
    }

    #[test]
    fn subquotient_coordinates() {
        let fld = f(5);
        let top = Subspace::full(fld, 3);
        let bottom = Subspace::span(fld, 3, &[vec![1, 1, 0]]);
        let q = SubQuotient::new(top, bottom).unwrap();
        assert_eq!(q.dim(), 2);
        // e0 and -e1 are in the same class.
        assert_eq!(q.coords(&[1, 0, 0]), q.coords(&[0, 4, 0]));
        assert_eq!(q.coords(&[1, 1, 0]).unwrap(), vec![0, 0]);
    }
}
