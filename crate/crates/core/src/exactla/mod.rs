//! Exact dense linear algebra over prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::{FpScalar, PrimeField, DEFAULT_PRIME};
pub use matrix::{FpMatrix, Rref};
pub use subspace::{
    image_basis, induced_quotient_map, kernel_basis, subspace_contains, subspace_intersect, subspace_sum, LinearSolver,
    SubQuotient, Subspace,
};

/// Reduced row-echelon form, rank and pivot columns.
pub fn rref(m: &FpMatrix) -> (FpMatrix, usize, Vec<usize>) {
    let r = m.rref();
    (r.matrix, r.rank, r.pivot_cols)
}

/// `a + c·b` in place, entrywise mod p.
pub fn axpy(field: PrimeField, a: &mut [u32], c: u32, b: &[u32]) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if y != 0 {
            *x = field.add(*x, field.mul(c, y));
        }
    }
}
