use std::sync::Arc;

use serde_json::json;

use super::poly::{Monomial, Polynomial};
use super::ring::{QuotientRing, Ring};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, FpMatrix, Subspace};
use crate::report::{CheckReport, Verdict, Witness};

/// An ideal of a quotient ring: chosen generators plus the k-subspace they
/// generate.
#[derive(Clone)]
pub struct RingIdeal {
    ring: Ring,
    gens: Vec<Vec<u32>>,
    subspace: Subspace,
}

impl RingIdeal {
    pub fn from_elements(ring: &Ring, gens: Vec<Vec<u32>>) -> Self {
        let dim = ring.dim();
        let gens: Vec<Vec<u32>> = gens.into_iter().filter(|g| g.iter().any(|&c| c != 0)).collect();
        let mut span = Vec::with_capacity(gens.len() * dim);
        for g in &gens {
            assert_eq!(g.len(), dim, "generator length must equal dim_k R");
            for b in 0..dim {
                span.push(ring.mul_basis(b, g));
            }
        }
        RingIdeal {
            ring: Arc::clone(ring),
            subspace: Subspace::span(ring.field(), dim, &span),
            gens,
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_elements(ring, Vec::new())
    }

    /// The maximal ideal, generated by the degree-one standard monomials.
    pub fn maximal(ring: &Ring) -> Self {
        let gens = ring
            .linear_basis()
            .iter()
            .map(|&i| {
                let mut e = vec![0u32; ring.dim()];
                e[i] = 1;
                e
            })
            .collect();
        Self::from_elements(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }
    /// `dim_k I`.
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.subspace.is_zero()
    }
    pub fn contains(&self, v: &[u32]) -> bool {
        self.subspace.contains(v)
    }

    pub fn product(&self, other: &RingIdeal) -> RingIdeal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        RingIdeal::from_elements(&self.ring, gens)
    }

    pub fn sum(&self, other: &RingIdeal) -> RingIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        RingIdeal::from_elements(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> RingIdeal {
        let mut out = RingIdeal::from_elements(&self.ring, vec![self.ring.one()]);
        for _ in 0..k {
            out = out.product(self);
        }
        out
    }

    /// `m·I`.
    pub fn times_maximal(&self) -> RingIdeal {
        RingIdeal::maximal(&self.ring).product(self)
    }

    /// `μ(I) = dim_k I/mI`.
    pub fn mu(&self) -> usize {
        self.dim() - self.times_maximal().dim()
    }

    /// Same ideal, keeping only generators that are independent modulo
    /// `mI` and the generators kept before them.
    pub fn trimmed(&self) -> RingIdeal {
        let mut span = self.times_maximal().subspace;
        let mut kept = Vec::new();
        for g in &self.gens {
            if !span.contains(g) {
                span = span
                    .sum(&Subspace::span(
                        self.ring.field(),
                        self.ring.dim(),
                        std::slice::from_ref(g),
                    ))
                    .expect("same ambient");
                kept.push(g.clone());
            }
        }
        RingIdeal {
            ring: Arc::clone(&self.ring),
            gens: kept,
            subspace: self.subspace.clone(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| self.ring.homogeneous_degree(g).is_some())
    }

    pub fn format_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format_element(g)).collect()
    }

    pub fn format_gens_or_zero(&self) -> Vec<String> {
        if self.gens.is_empty() {
            vec!["0".into()]
        } else {
            self.format_gens()
        }
    }
}

impl std::fmt::Debug for RingIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.format_gens().join(", "))
    }
}

/// The ideal generated by the normal forms of `gens`.
pub fn make_ideal(ring: &Ring, gens: &[Polynomial]) -> Result<RingIdeal> {
    let coords = gens
        .iter()
        .map(|g| ring.normal_form(g).map(|e| e.coords))
        .collect::<Result<Vec<_>>>()?;
    Ok(RingIdeal::from_elements(ring, coords))
}

/// Whether `I ∩ m² = mI`.
pub fn nc_holds(ideal: &RingIdeal) -> bool {
    nc_witness(ideal).is_none()
}

fn nc_witness(ideal: &RingIdeal) -> Option<Vec<u32>> {
    let ring = ideal.ring();
    let m = RingIdeal::maximal(ring);
    let m2 = m.product(&m);
    let mi = m.product(ideal);
    let meet = ideal.subspace().intersect(m2.subspace()).expect("same ambient");
    meet.basis_vectors().into_iter().find(|v| !mi.contains(v))
}

/// The necessary condition `I ∩ m² = mI`; a failure carries an element of
/// `(I ∩ m²) \ mI`.
pub fn check_nc(ideal: &RingIdeal) -> CheckReport {
    let ring = ideal.ring();
    let mi = ideal.times_maximal();
    let verdict = match nc_witness(ideal) {
        None => Verdict::holds("NC"),
        Some(w) => Verdict::fails(
            "NC",
            Witness::new(
                Some(1),
                format!("{} lies in I∩m² but not in mI", ring.format_element(&w)),
            )
            .with_data(json!({ "element": ring.format_element(&w) })),
        ),
    };
    CheckReport::new(verdict).with_data(json!({
        "dim_I": ideal.dim(),
        "dim_mI": mi.dim(),
        "mu_I": ideal.mu(),
        "mI_gens": mi.trimmed().format_gens(),
    }))
}

/// `(0 :_R I)` with a trimmed generating set.
pub fn annihilator(ideal: &RingIdeal) -> RingIdeal {
    let ring = ideal.ring();
    let dim = ring.dim();
    if ideal.gens().is_empty() {
        return RingIdeal::from_elements(ring, vec![ring.one()]);
    }
    let mut stacked = FpMatrix::zeros(ring.field(), 0, dim);
    for g in ideal.gens() {
        stacked = stacked.vstack(&ring.mult_matrix(g));
    }
    let ker = kernel_basis(&stacked);
    RingIdeal::from_elements(ring, ker.basis_vectors()).trimmed()
}

/// Returns `p` when the ring is `k[x_1..x_n]/(x_1..x_n)^p` with `p ≥ 2`,
/// recognised from its Hilbert function.
pub fn power_of_maximal_ideal(ring: &QuotientRing) -> Option<u32> {
    if !ring.is_graded() {
        return None;
    }
    let n = ring.embdim() as u64;
    let h = ring.hilbert_function();
    let binom = |a: u64, b: u64| -> u64 { (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1)) };
    let matches = h
        .iter()
        .enumerate()
        .all(|(d, &v)| n > 0 && v as u64 == binom(n + d as u64 - 1, d as u64));
    let p = h.len() as u32;
    (matches && p >= 2).then_some(p)
}

/// A surjection `R → S = R/I` with `S` minimally presented.
#[derive(Clone)]
pub struct QuotientMap {
    pub source: Ring,
    pub target: Ring,
    /// Trimmed generators of `I`.
    pub ideal: RingIdeal,
    /// Image of each source variable as a polynomial in the target variables.
    pub var_images: Vec<Polynomial>,
    /// `dim S × dim R` matrix of the k-linear map on monomial bases.
    pub matrix: FpMatrix,
    /// Linear generators of `I`, a basis of `I ∩ R_1`.
    pub linear_gens: Vec<Vec<u32>>,
    /// Source variable index of each target variable.
    pub kept: Vec<usize>,
}

impl QuotientMap {
    /// Apply to a source element.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }

    /// A minimal generating set of the source maximal ideal that starts
    /// with the linear generators of `I` and continues with the kept
    /// variables.
    pub fn adapted_generators(&self) -> Vec<Vec<u32>> {
        let r = &self.source;
        let mut gens = self.linear_gens.clone();
        for &v in &self.kept {
            gens.push(r.var_normal_form(v).to_vec());
        }
        gens
    }

    /// For each adapted generator: the index of its image among the target's
    /// degree-one basis, or `None` when it maps to zero.
    pub fn adapted_images(&self) -> Vec<Option<usize>> {
        let s = &self.target;
        let mut out = vec![None; self.linear_gens.len()];
        out.extend((0..self.kept.len()).map(|j| Some(s.linear_basis()[j])));
        out
    }
}

/// `S = R/I`, presented minimally: linear forms of `I` eliminate variables,
/// so the defining ideal of `S` lies in the square of its maximal ideal.
pub fn quotient_ring(ideal: &RingIdeal) -> Result<QuotientMap> {
    let r = ideal.ring();
    if !r.is_graded() {
        return Err(Error::NotGraded("quotient_ring needs a graded ring".into()));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NonHomogeneousIdeal(format!("{:?}", ideal.format_gens())));
    }
    let ideal = ideal.trimmed();
    if ideal.gens().iter().any(|g| r.homogeneous_degree(g) == Some(0)) {
        return Err(Error::UnitIdeal(format!("{:?}", ideal.format_gens())));
    }
    let field = r.field();
    let n = r.nvars();
    let linear_gens: Vec<Vec<u32>> = ideal
        .gens()
        .iter()
        .filter(|g| r.homogeneous_degree(g) == Some(1))
        .cloned()
        .collect();
    // Standard variables in variable order and their basis positions.
    let standard: Vec<usize> = (0..n).filter(|&i| r.index_of(&Monomial::var(n, i)).is_some()).collect();
    let pos: Vec<usize> = standard
        .iter()
        .map(|&i| r.index_of(&Monomial::var(n, i)).unwrap())
        .collect();
    let rows: Vec<Vec<u32>> = linear_gens
        .iter()
        .map(|g| pos.iter().map(|&b| g[b]).collect())
        .collect();
    let red = FpMatrix::from_row_vectors(field, standard.len(), &rows).rref();
    let mut pivot_row = vec![None; standard.len()];
    for (k, &c) in red.pivot_cols.iter().enumerate() {
        pivot_row[c] = Some(k);
    }
    let kept_local: Vec<usize> = (0..standard.len()).filter(|&c| pivot_row[c].is_none()).collect();
    let kept: Vec<usize> = kept_local.iter().map(|&c| standard[c]).collect();
    let m = kept.len();
    let s_var = |local: usize| -> Polynomial {
        let j = kept_local.iter().position(|&c| c == local).unwrap();
        Polynomial::var(field, m, j)
    };
    // Image of each standard variable.
    let std_images: Vec<Polynomial> = (0..standard.len())
        .map(|c| match pivot_row[c] {
            None => s_var(c),
            Some(k) => {
                let mut img = Polynomial::zero(field, m);
                for &w in &kept_local {
                    let a = red.matrix.get(k, w);
                    if a != 0 {
                        img = img.add(&s_var(w).scale(field.neg(a)));
                    }
                }
                img
            }
        })
        .collect();
    let var_images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let nf = r.var_normal_form(i);
            let mut img = Polynomial::zero(field, m);
            for (c, &b) in pos.iter().enumerate() {
                if nf[b] != 0 {
                    img = img.add(&std_images[c].scale(nf[b]));
                }
            }
            img
        })
        .collect();
    let mut relations: Vec<Polynomial> = r.groebner().iter().map(|g| g.substitute(&var_images, m)).collect();
    relations.extend(ideal.gens().iter().map(|g| r.lift(g).substitute(&var_images, m)));
    let names: Vec<String> = kept.iter().map(|&i| r.vars()[i].clone()).collect();
    let s = Arc::new(QuotientRing::new(field, names, relations)?);
    let cols: Vec<Vec<u32>> = r
        .basis()
        .iter()
        .map(|mono| {
            let p = Polynomial::term(field, mono.clone(), 1).substitute(&var_images, m);
            s.nf_coords(&p)
        })
        .collect();
    let matrix = FpMatrix::from_col_vectors(field, s.dim(), &cols);
    Ok(QuotientMap {
        source: Arc::clone(r),
        target: s,
        ideal,
        var_images,
        matrix,
        linear_gens,
        kept,
    })
}
