//! Graded Artinian quotient rings, their ideals, and the quotient maps
//! between them.

mod groebner;
mod ideal;
mod poly;
mod ring;
mod spec;

pub use groebner::{groebner_basis, reduce};
pub use ideal::{
    annihilator, check_nc, make_ideal, nc_holds, power_of_maximal_ideal, quotient_ring, QuotientMap, RingIdeal,
};
pub use poly::{parse_polynomial, Monomial, Polynomial};
pub use ring::{QuotientRing, Ring, RingElement, SparseVec};
pub use spec::{ideal_from_strs, parse_ring, ring_from_strs, split_top_level, RingSpec};

/// `R ↦ R(x)` where every element is a polynomial in the ring's variables.
pub fn normal_form(ring: &Ring, f: &Polynomial) -> crate::Result<RingElement> {
    ring.normal_form(f)
}

/// Ideal of `ring` generated by the given polynomials.
pub fn ideal(ring: &Ring, gens: &[Polynomial]) -> crate::Result<RingIdeal> {
    make_ideal(ring, gens)
}

#[cfg(test)]
mod tests;
