#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use largehom::exactla::FpMatrix;
use largehom::resolve::{minimal_resolution, FDModule};
use largehom::ringcore::{nc_holds, ring_from_strs, Ring, RingIdeal};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub struct Instance {
    pub label: String,
    pub ideal: RingIdeal,
}

impl Instance {
    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }
}

/// A random homogeneous element of degree `d`.
pub fn random_form(rng: &mut ChaCha8Rng, ring: &Ring, d: u32) -> Vec<u32> {
    let p = ring.field().p();
    let mut v = vec![0u32; ring.dim()];
    for i in ring.degree_range(d) {
        v[i] = rng.gen_range(0..p);
    }
    v
}

fn label(ring: &Ring, rels: &[String], ideal: &RingIdeal) -> String {
    format!(
        "p={} k[{}]/({}) I=({})",
        ring.field().p(),
        ring.vars().join(","),
        rels.join(","),
        ideal.format_gens_or_zero().join(", ")
    )
}

/// A random 1-form, generic (all coefficients nonzero) half the time.
pub fn random_linear(rng: &mut ChaCha8Rng, ring: &Ring) -> Vec<u32> {
    let p = ring.field().p();
    let lo = if rng.gen_bool(0.5) { 1 } else { 0 };
    let mut v = vec![0u32; ring.dim()];
    for i in ring.degree_range(1) {
        v[i] = rng.gen_range(lo..p);
    }
    v
}

/// `k[x_1..x_n]/(x_1^{a_1},…,x_n^{a_n})`, `n ≤ 3`, `a_i ∈ {2,3}`, with a
/// random ideal of 1-forms. A homogeneous ideal satisfies NC exactly when
/// it is generated in degree 1, so this is the whole NC corpus.
pub fn ci_instance(rng: &mut ChaCha8Rng) -> Instance {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let n = [1, 2, 2, 3, 3, 3][rng.gen_range(0..6)];
    let rels: Vec<String> = (0..n)
        .map(|i| format!("{}^{}", VARS[i], rng.gen_range(2..=3)))
        .collect();
    let rel_refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    let ring = ring_from_strs(p, &VARS[..n], &rel_refs).unwrap();
    let r = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=n) };
    let gens = (0..r).map(|_| random_linear(rng, &ring)).collect();
    let ideal = RingIdeal::from_elements(&ring, gens).trimmed();
    assert!(nc_holds(&ideal));
    Instance {
        label: label(&ring, &rels, &ideal),
        ideal,
    }
}

const SHAPES: &[&[&str]] = &[
    &["x^2", "y^2", "z^2"],
    &["x^2", "xy", "xz", "y^2", "z^2"],
    &["x^2", "xy", "y^2"],
    &["x^2", "y^3"],
    &["x^2-y^2", "xy"],
    &["x^3", "y^2", "xy"],
    &["x^2", "xy", "y^3", "z^2", "yz", "xz"],
    &["x^2", "y^2", "z^2", "xyz"],
    &["x^3"],
];

/// Rings from a fixed list of shapes with random ideals of 1- and 2-forms;
/// NC may fail.
pub fn general_instance(rng: &mut ChaCha8Rng) -> Instance {
    let shape = SHAPES[rng.gen_range(0..SHAPES.len())];
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let nvars = VARS.iter().filter(|v| shape.iter().any(|r| r.contains(*v))).count();
    let ring = ring_from_strs(p, &VARS[..nvars], shape).unwrap();
    let r = rng.gen_range(1..=2);
    let gens = (0..r)
        .map(|_| {
            let d = if rng.gen_bool(0.7) { 1 } else { 2 };
            random_form(rng, &ring, d)
        })
        .collect();
    let ideal = RingIdeal::from_elements(&ring, gens).trimmed();
    let rels: Vec<String> = shape.iter().map(|s| s.to_string()).collect();
    Instance {
        label: label(&ring, &rels, &ideal),
        ideal,
    }
}

/// `dim Tor_i(k, M)` for `i ≤ n`, from a resolution of `k` tensored
/// with `M`.
pub fn tor_k_m(r: &Ring, m: &FDModule, n: usize) -> Vec<usize> {
    let res = minimal_resolution(&FDModule::residue_field(r).unwrap(), n + 1);
    let cx = res.complex();
    let f = r.field();
    let dm = m.dim();
    let dim = r.dim();
    let diff = |i: usize| -> FpMatrix {
        let mut d = FpMatrix::zeros(f, cx.rank(i - 1) * dm, cx.rank(i) * dm);
        for g in 0..cx.rank(i) {
            for &(idx, c) in cx.boundary(i, g) {
                let (h, b) = (idx / dim, idx % dim);
                let act = &m.monomial_actions()[b];
                for a in 0..dm {
                    for t in 0..dm {
                        let z = f.mul(c, act.get(t, a));
                        if z != 0 {
                            let old = d.get(h * dm + t, g * dm + a);
                            d.set(h * dm + t, g * dm + a, f.add(old, z));
                        }
                    }
                }
            }
        }
        d
    };
    (0..=n)
        .map(|i| {
            let z = cx.rank(i) * dm - if i == 0 { 0 } else { diff(i).rank() };
            z - diff(i + 1).rank()
        })
        .collect()
}

/// A small module: `R/J`, `J`, or `k ⊕ R/J` for a random ideal `J`.
pub fn random_module(rng: &mut ChaCha8Rng) -> FDModule {
    let inst = general_instance(rng);
    let j = &inst.ideal;
    match rng.gen_range(0..3) {
        0 => FDModule::cyclic(j).unwrap(),
        1 => FDModule::ideal(j).unwrap(),
        _ => FDModule::residue_field(j.ring())
            .unwrap()
            .direct_sum(&FDModule::cyclic(j).unwrap())
            .unwrap(),
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
