use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_basis, reduce};
use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::exactla::{axpy, FpMatrix, PrimeField};

/// Sparse coordinate vector: `(basis index, nonzero coefficient)` pairs in
/// increasing index order.
pub type SparseVec = Vec<(usize, u32)>;

/// A finite-dimensional quotient `k[x_1..x_n]/J` with its standard monomial
/// basis (sorted by degree, then degrevlex) and a lazily filled table of
/// basis products.
pub struct QuotientRing {
    field: PrimeField,
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    groebner: Vec<Polynomial>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    degrees: Vec<u32>,
    graded: bool,
    /// Basis indices of the degree-one standard monomials, in variable order.
    linear: Vec<usize>,
    /// Normal form of each variable.
    var_nf: Vec<Vec<u32>>,
    products: Vec<OnceLock<SparseVec>>,
}

/// Shared handle; rings are immutable apart from the product cache.
pub type Ring = Arc<QuotientRing>;

impl QuotientRing {
    pub fn new(field: PrimeField, vars: Vec<String>, relations: Vec<Polynomial>) -> Result<Self> {
        let n = vars.len();
        for r in &relations {
            if r.nvars() != n {
                return Err(Error::VariableMismatch(format!(
                    "relation has {} variables, ring has {n}",
                    r.nvars()
                )));
            }
        }
        let relations: Vec<Polynomial> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let graded = relations.iter().all(Polynomial::is_homogeneous);
        let groebner = groebner_basis(&relations);
        if groebner
            .iter()
            .any(|g| g.leading().is_some_and(|(m, _)| m.degree() == 0))
        {
            return Err(Error::UnitIdeal("relations generate the unit ideal".into()));
        }
        let leads: Vec<Monomial> = groebner.iter().map(|g| g.leading().unwrap().0.clone()).collect();
        for (i, name) in vars.iter().enumerate() {
            if !leads.iter().any(|m| m.pure_power_var() == Some(i)) {
                return Err(Error::NotArtinian(name.clone()));
            }
        }
        // Standard monomials form an order ideal; grow it degree by degree.
        let is_standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
        let mut basis = vec![Monomial::one(n)];
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut next: Vec<Monomial> = Vec::new();
            for m in &frontier {
                for i in 0..n {
                    let c = m.mul(&Monomial::var(n, i));
                    if is_standard(&c) && !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort();
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let degrees: Vec<u32> = basis.iter().map(Monomial::degree).collect();
        let linear: Vec<usize> = (0..n)
            .filter_map(|i| index.get(&Monomial::var(n, i)).copied())
            .collect();
        let dim = basis.len();
        let mut ring = QuotientRing {
            field,
            vars,
            relations,
            groebner,
            basis,
            index,
            degrees,
            graded,
            linear,
            var_nf: Vec::new(),
            products: (0..dim * dim).map(|_| OnceLock::new()).collect(),
        };
        ring.var_nf = (0..n).map(|i| ring.nf_coords(&Polynomial::var(field, n, i))).collect();
        Ok(ring)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }
    pub fn groebner(&self) -> &[Polynomial] {
        &self.groebner
    }
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_graded(&self) -> bool {
        self.graded
    }
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }
    /// Highest degree carrying a basis element.
    pub fn top_degree(&self) -> u32 {
        *self.degrees.last().unwrap()
    }
    /// Basis indices of the given degree (contiguous because of the sort).
    pub fn degree_range(&self, d: u32) -> Range<usize> {
        let lo = self.degrees.partition_point(|&e| e < d);
        let hi = self.degrees.partition_point(|&e| e <= d);
        lo..hi
    }
    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.degree_range(d).len()).collect()
    }
    /// Basis indices of the degree-one standard monomials: a minimal
    /// generating set of the maximal ideal.
    pub fn linear_basis(&self) -> &[usize] {
        &self.linear
    }
    /// `dim m/m²`.
    pub fn embdim(&self) -> usize {
        self.linear.len()
    }
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
    pub fn var_normal_form(&self, i: usize) -> &[u32] {
        &self.var_nf[i]
    }

    pub fn nf_coords(&self, f: &Polynomial) -> Vec<u32> {
        let r = reduce(f, &self.groebner);
        let mut v = vec![0u32; self.dim()];
        for (m, c) in r.terms() {
            v[self.index[m]] = c.value;
        }
        v
    }

    pub fn normal_form(self: &Arc<Self>, f: &Polynomial) -> Result<RingElement> {
        if f.nvars() != self.nvars() || f.field() != self.field {
            return Err(Error::VariableMismatch(format!(
                "polynomial in {} variables over F_{}, ring has {} over F_{}",
                f.nvars(),
                f.field().p(),
                self.nvars(),
                self.field.p()
            )));
        }
        Ok(RingElement {
            ring: Arc::clone(self),
            coords: self.nf_coords(f),
        })
    }

    /// Polynomial whose normal form has the given coordinates.
    pub fn lift(&self, coords: &[u32]) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.nvars(),
            coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.basis[i].clone(), c)),
        )
    }

    /// Product of basis elements `i` and `j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.products[a * self.dim() + b].get_or_init(|| {
            let m = self.basis[a].mul(&self.basis[b]);
            if let Some(&k) = self.index.get(&m) {
                return vec![(k, 1)];
            }
            let v = self.nf_coords(&Polynomial::term(self.field, m, 1));
            v.into_iter().enumerate().filter(|(_, c)| *c != 0).collect()
        })
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = f.mul(x, y);
                for &(k, z) in self.basis_product(i, j) {
                    out[k] = f.add(out[k], f.mul(c, z));
                }
            }
        }
        out
    }

    /// `b_i · v`, accumulated into `out` with coefficient `c`.
    pub fn mul_basis_into(&self, i: usize, c: u32, v: &[u32], out: &mut [u32]) {
        let f = self.field;
        for (j, &y) in v.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let cy = f.mul(c, y);
            for &(k, z) in self.basis_product(i, j) {
                out[k] = f.add(out[k], f.mul(cy, z));
            }
        }
    }

    pub fn mul_basis(&self, i: usize, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        self.mul_basis_into(i, 1, v, &mut out);
        out
    }

    /// Matrix of multiplication by `a` on the monomial basis.
    pub fn mult_matrix(&self, a: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim())
            .map(|j| {
                let mut e = vec![0u32; self.dim()];
                e[j] = 1;
                self.mul(a, &e)
            })
            .collect();
        FpMatrix::from_col_vectors(self.field, self.dim(), &cols)
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        v[0] = 1;
        v
    }

    /// Degree of a homogeneous nonzero element; `None` for zero or
    /// inhomogeneous coordinates.
    pub fn homogeneous_degree(&self, v: &[u32]) -> Option<u32> {
        let mut degs = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| self.degrees[i]);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn format_element(&self, v: &[u32]) -> String {
        self.lift(v).format(&self.vars)
    }

    pub fn add_scaled(&self, a: &mut [u32], c: u32, b: &[u32]) {
        axpy(self.field, a, c, b)
    }
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| r.format(&self.vars)).collect();
        write!(
            f,
            "F_{}[{}]/({}) (dim {})",
            self.field.p(),
            self.vars.join(","),
            rels.join(", "),
            self.dim()
        )
    }
}

/// An element of a quotient ring in monomial-basis coordinates.
#[derive(Clone)]
pub struct RingElement {
    pub ring: Ring,
    pub coords: Vec<u32>,
}

impl RingElement {
    pub fn new(ring: &Ring, coords: Vec<u32>) -> Self {
        assert_eq!(coords.len(), ring.dim(), "coordinate length must equal dim_k R");
        RingElement {
            ring: Arc::clone(ring),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        RingElement::new(&self.ring, self.ring.mul(&self.coords, &other.coords))
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut c = self.coords.clone();
        axpy(self.ring.field(), &mut c, 1, &other.coords);
        RingElement::new(&self.ring, c)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.coords == other.coords
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_element(&self.coords))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_element(&self.coords))
    }
}
