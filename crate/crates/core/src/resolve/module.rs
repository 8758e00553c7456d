use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, PrimeField, Subspace};
use crate::ringcore::{Ring, RingIdeal};

/// A finite-dimensional graded module over a quotient ring, given by a
/// graded k-basis and the action of each degree-one generator of `m`.
#[derive(Clone)]
pub struct FDModule {
    ring: Ring,
    degrees: Vec<i32>,
    /// One matrix per entry of `ring.linear_basis()`.
    actions: Vec<FpMatrix>,
    label: String,
    monomial_actions: OnceLock<Vec<FpMatrix>>,
}

impl std::fmt::Debug for FDModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FDModule")
            .field("label", &self.label)
            .field("degrees", &self.degrees)
            .finish()
    }
}

impl FDModule {
    /// Build from explicit actions; checks that they commute and raise
    /// degree by one.
    pub fn from_actions(
        ring: &Ring,
        degrees: Vec<i32>,
        actions: Vec<FpMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !ring.is_graded() {
            return Err(Error::NotGraded("modules need a graded ring".into()));
        }
        let n = degrees.len();
        if actions.len() != ring.embdim() || actions.iter().any(|a| a.rows() != n || a.cols() != n) {
            return Err(Error::DimensionMismatch("one n×n action per generator of m".into()));
        }
        for a in &actions {
            for r in 0..n {
                for c in 0..n {
                    if a.get(r, c) != 0 && degrees[r] != degrees[c] + 1 {
                        return Err(Error::DimensionMismatch(format!(
                            "action maps degree {} to degree {}",
                            degrees[c], degrees[r]
                        )));
                    }
                }
            }
        }
        for (i, a) in actions.iter().enumerate() {
            for b in &actions[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return Err(Error::DimensionMismatch("actions do not commute".into()));
                }
            }
        }
        let m = FDModule {
            ring: ring.clone(),
            degrees,
            actions,
            label: label.into(),
            monomial_actions: OnceLock::new(),
        };
        m.check_relations()?;
        Ok(m)
    }

    /// The residue field `k`, in degree 0.
    pub fn residue_field(ring: &Ring) -> Result<Self> {
        let f = ring.field();
        let actions = (0..ring.embdim()).map(|_| FpMatrix::zeros(f, 1, 1)).collect();
        Self::from_actions(ring, vec![0], actions, "k")
    }

    /// `R/I` on the monomials outside the leading positions of `I`.
    pub fn cyclic(ideal: &RingIdeal) -> Result<Self> {
        let ring = ideal.ring();
        let sub = ideal.subspace();
        let keep = sub.complement_indices();
        let pos = |j: usize| keep.binary_search(&j).ok();
        let f = ring.field();
        let n = keep.len();
        let actions = ring
            .linear_basis()
            .iter()
            .map(|&x| {
                let mut a = FpMatrix::zeros(f, n, n);
                for (c, &b) in keep.iter().enumerate() {
                    let mut e = vec![0u32; ring.dim()];
                    e[b] = 1;
                    let v = sub.reduce(&ring.mul_basis(x, &e));
                    for (j, &val) in v.iter().enumerate() {
                        if val != 0 {
                            a.set(pos(j).expect("reduced vectors live on the complement"), c, val);
                        }
                    }
                }
                a
            })
            .collect();
        let degrees = keep.iter().map(|&b| ring.degree_of(b) as i32).collect();
        let label = format!("R/({})", ideal.format_gens_or_zero().join(", "));
        Self::from_actions(ring, degrees, actions, label)
    }

    /// `I` as a module, on the reduced echelon basis of its subspace.
    pub fn ideal(ideal: &RingIdeal) -> Result<Self> {
        let ring = ideal.ring();
        let sub = ideal.subspace();
        Self::submodule_of_ring(ring, sub, format!("({})", ideal.format_gens_or_zero().join(", ")))
    }

    fn submodule_of_ring(ring: &Ring, sub: &Subspace, label: String) -> Result<Self> {
        let f = ring.field();
        let basis = sub.basis_vectors();
        let n = basis.len();
        let mut degrees = Vec::with_capacity(n);
        for v in &basis {
            let d = ring
                .homogeneous_degree(v)
                .ok_or_else(|| Error::NonHomogeneousIdeal(label.clone()))?;
            degrees.push(d as i32);
        }
        let actions = ring
            .linear_basis()
            .iter()
            .map(|&x| {
                let cols: Vec<Vec<u32>> = basis
                    .iter()
                    .map(|v| sub.coordinates(&ring.mul_basis(x, v)).expect("ideal is closed under m"))
                    .collect();
                FpMatrix::from_col_vectors(f, n, &cols)
            })
            .collect();
        Self::from_actions(ring, degrees, actions, label)
    }

    pub fn direct_sum(&self, other: &FDModule) -> Result<Self> {
        let (a, b) = (self.dim(), other.dim());
        let f = self.field();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| {
                let top = x.hstack(&FpMatrix::zeros(f, a, b));
                let bottom = FpMatrix::zeros(f, b, a).hstack(y);
                top.vstack(&bottom)
            })
            .collect();
        let mut degrees = self.degrees.clone();
        degrees.extend(&other.degrees);
        Self::from_actions(
            &self.ring,
            degrees,
            actions,
            format!("{} ⊕ {}", self.label, other.label),
        )
    }

    /// The same module with every degree shifted by `s`.
    pub fn shifted(&self, s: i32) -> Self {
        let mut m = self.clone();
        m.degrees.iter_mut().for_each(|d| *d += s);
        m.monomial_actions = OnceLock::new();
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }
    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Action of each monomial basis element of the ring.
    pub fn monomial_actions(&self) -> &[FpMatrix] {
        self.monomial_actions.get_or_init(|| {
            let ring = &self.ring;
            let n = self.dim();
            let f = self.field();
            let var_actions: Vec<FpMatrix> = (0..ring.nvars())
                .map(|i| {
                    let nf = ring.var_normal_form(i);
                    let mut a = FpMatrix::zeros(f, n, n);
                    for (k, &lb) in ring.linear_basis().iter().enumerate() {
                        if nf[lb] != 0 {
                            a = a.add(&self.actions[k].scale(nf[lb]));
                        }
                    }
                    a
                })
                .collect();
            ring.basis()
                .iter()
                .map(|mono| {
                    let mut a = FpMatrix::identity(f, n);
                    for (i, &e) in mono.0.iter().enumerate() {
                        for _ in 0..e {
                            a = var_actions[i].mul(&a);
                        }
                    }
                    a
                })
                .collect()
        })
    }

    /// `r · v` for a ring element `r` in monomial coordinates.
    pub fn act(&self, r: &[u32], v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0u32; self.dim()];
        for (b, &c) in r.iter().enumerate() {
            if c != 0 {
                crate::exactla::axpy(f, &mut out, c, &self.monomial_actions()[b].mul_vec(v));
            }
        }
        out
    }

    /// Every defining relation of the ring acts as zero.
    fn check_relations(&self) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        let ring = &self.ring;
        let f = self.field();
        let n = self.dim();
        let var_actions: Vec<FpMatrix> = (0..ring.nvars())
            .map(|i| {
                let nf = ring.var_normal_form(i);
                let mut a = FpMatrix::zeros(f, n, n);
                for (k, &lb) in ring.linear_basis().iter().enumerate() {
                    if nf[lb] != 0 {
                        a = a.add(&self.actions[k].scale(nf[lb]));
                    }
                }
                a
            })
            .collect();
        for rel in ring.relations() {
            let mut total = FpMatrix::zeros(f, n, n);
            for (mono, c) in rel.terms() {
                let mut a = FpMatrix::identity(f, n);
                for (i, &e) in mono.0.iter().enumerate() {
                    for _ in 0..e {
                        a = var_actions[i].mul(&a);
                    }
                }
                total = total.add(&a.scale(c.value));
            }
            if !total.is_zero() {
                return Err(Error::DimensionMismatch(format!(
                    "relation {} does not act as zero",
                    rel.format(ring.vars())
                )));
            }
        }
        Ok(())
    }
}

/// A degree-preserving module homomorphism.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: FDModule,
    pub target: FDModule,
    /// `dim target × dim source`.
    pub matrix: FpMatrix,
}

impl ModuleMap {
    pub fn new(source: FDModule, target: FDModule, matrix: FpMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("map matrix has the wrong shape".into()));
        }
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                if matrix.get(r, c) != 0 && target.degrees()[r] != source.degrees()[c] {
                    return Err(Error::DimensionMismatch("map does not preserve degree".into()));
                }
            }
        }
        for (a, b) in source.actions().iter().zip(target.actions()) {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::LiftFailure("map does not commute with the ring action".into()));
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &FDModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: FpMatrix::identity(m.field(), m.dim()),
        }
    }

    /// `R/I → k`.
    pub fn projection_to_residue_field(ideal: &RingIdeal) -> Result<Self> {
        let source = FDModule::cyclic(ideal)?;
        let target = FDModule::residue_field(ideal.ring())?;
        let f = source.field();
        let mut m = FpMatrix::zeros(f, 1, source.dim());
        for (c, &d) in source.degrees().iter().enumerate() {
            if d == 0 {
                m.set(0, c, 1);
            }
        }
        Self::new(source, target, m)
    }

    /// `J ↪ I` for ideals `J ⊆ I`, in the echelon bases of both.
    pub fn inclusion(small: &RingIdeal, big: &RingIdeal) -> Result<Self> {
        let source = FDModule::ideal(small)?;
        let target = FDModule::ideal(big)?;
        let f = source.field();
        let cols: Vec<Vec<u32>> = small
            .subspace()
            .basis_vectors()
            .iter()
            .map(|v| {
                big.subspace()
                    .coordinates(v)
                    .ok_or_else(|| Error::DimensionMismatch("ideals are not nested".into()))
            })
            .collect::<Result<_>>()?;
        let rows = target.dim();
        Self::new(source, target, FpMatrix::from_col_vectors(f, rows, &cols))
    }
}
