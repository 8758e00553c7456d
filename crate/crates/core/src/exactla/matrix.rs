use std::fmt;

use rayon::prelude::*;

use super::field::{FpScalar, PrimeField};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

// Below this many multiply-adds per pivot the elimination stays sequential.
const PAR_THRESHOLD: usize = 1 << 15;

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        debug_assert!(data.iter().all(|&v| v < field.p()));
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Build from signed integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(field: PrimeField, cols: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        FpMatrix {
            field,
            rows: vectors.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_col_vectors(field: PrimeField, rows: usize, vectors: &[Vec<u32>]) -> Self {
        let cols = vectors.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, &x) in v.iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.p());
        self.data[i * self.cols + j] = v;
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar {
            value: self.get(i, j),
            p: self.field.p(),
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    if *a != 0 && *b != 0 {
                        acc = (acc + *a as u64 * *b as u64) % p;
                    }
                }
                acc as u32
            })
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    if b != 0 {
                        *slot = (*slot + a * b as u64) % p;
                    }
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FpMatrix { data, ..*self }
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut out = Self::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        FpMatrix::from_raw(self.field, self.rows, cols, data)
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix::from_raw(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref_in_place().len()
    }

    pub fn rref(&self) -> Rref {
        let mut work = self.clone();
        let pivot_cols = work.rref_in_place();
        let rank = pivot_cols.len();
        Rref {
            matrix: work,
            rank,
            pivot_cols,
        }
    }

    /// Gauss-Jordan elimination restricted to the first `limit` columns.
    /// Returns the pivot columns; rows beyond the rank end up zero in
    /// those columns.
    pub(crate) fn rref_prefix_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..limit.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                let (lo, hi) = self.data.split_at_mut(piv * cols);
                lo[r * cols..(r + 1) * cols].swap_with_slice(&mut hi[..cols]);
            }
            let inv = f.inv(self.data[r * cols + c]);
            let nz: Vec<(usize, u64)> = {
                let row = &mut self.data[r * cols..(r + 1) * cols];
                let mut nz = Vec::new();
                for (k, slot) in row.iter_mut().enumerate().skip(c) {
                    if *slot != 0 {
                        *slot = f.mul(*slot, inv);
                        nz.push((k, *slot as u64));
                    }
                }
                nz
            };
            let eliminate = |row: &mut [u32]| {
                let a = row[c];
                if a == 0 {
                    return;
                }
                let factor = p - a as u64;
                for &(k, v) in &nz {
                    row[k] = ((row[k] as u64 + factor * v) % p) as u32;
                }
            };
            let pivot_row = r;
            if self.rows * nz.len() >= PAR_THRESHOLD {
                self.data
                    .par_chunks_mut(cols)
                    .enumerate()
                    .filter(|(i, _)| *i != pivot_row)
                    .for_each(|(_, row)| eliminate(row));
            } else {
                for (i, row) in self.data.chunks_mut(cols).enumerate() {
                    if i != pivot_row {
                        eliminate(row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        self.rref_prefix_in_place(self.cols)
    }

    /// Keep only the first `n` rows.
    pub(crate) fn truncate_rows(&mut self, n: usize) {
        self.rows = n.min(self.rows);
        self.data.truncate(self.rows * self.cols);
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{} [", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Rref {
    /// The nonzero rows.
    pub fn nonzero_rows(&self) -> FpMatrix {
        let mut m = self.matrix.clone();
        m.truncate_rows(self.rank);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    // Plain Gaussian elimination without any of the fast paths.
    fn naive_rank(m: &FpMatrix) -> usize {
        let fld = m.field();
        let mut rows = m.row_vectors();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(pr) = (rank..rows.len()).find(|&i| rows[i][c] != 0) {
                rows.swap(rank, pr);
                let inv = fld.inv(rows[rank][c]);
                let pivot = rows[rank].clone();
                for row in rows.iter_mut().skip(rank + 1) {
                    let factor = fld.mul(row[c], inv);
                    for (x, &pv) in row.iter_mut().zip(&pivot) {
                        *x = fld.sub(*x, fld.mul(factor, pv));
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rref_identity() {
        let id = FpMatrix::identity(f(5), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero() {
        let z = FpMatrix::zeros(f(2), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let m = FpMatrix::from_rows(f(5), &[vec![2, 4], vec![1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, FpMatrix::from_rows(f(5), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(naive_rank(&m), 1);
    }

    #[test]
    fn rank_matches_naive_on_larger_inputs() {
        // Large enough to take the parallel elimination path.
        let fld = f(7);
        let (rows, cols) = (300, 260);
        let mut seed = 12345u64;
        let data = (0..rows * cols)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 33) % 7) as u32
            })
            .collect();
        let m = FpMatrix::from_raw(fld, rows, cols, data);
        let low = m.select(&(0..rows).collect::<Vec<_>>(), &(0..40).collect::<Vec<_>>());
        let m = m.hstack(&low.scale(3));
        assert_eq!(m.rank(), naive_rank(&m));
    }

    #[test]
    fn product_and_transpose() {
        let fld = f(3);
        let a = FpMatrix::from_rows(fld, &[vec![1, 2], vec![0, 1]]);
        let b = FpMatrix::from_rows(fld, &[vec![2, 0], vec![1, 1]]);
        assert_eq!(a.mul(&b), FpMatrix::from_rows(fld, &[vec![4, 2], vec![1, 1]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul_vec(&[1, 1]), vec![0, 1]);
    }
}
