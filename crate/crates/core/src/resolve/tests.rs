use proptest::prelude::*;

use super::*;
use crate::exactla::FpMatrix;
use crate::koszul::ring_homology;
use crate::ringcore::{ideal_from_strs, quotient_ring, ring_from_strs, RingIdeal};

fn ring(p: u64, vars: &[&str], rels: &[&str]) -> Ring {
    ring_from_strs(p, vars, rels).unwrap()
}

fn k(r: &Ring) -> FDModule {
    FDModule::residue_field(r).unwrap()
}

fn e3() -> Ring {
    ring(5, &["x", "y", "z"], &["x^2", "y^2", "z^2"])
}

fn sec3() -> Ring {
    ring(5, &["x", "y", "z"], &["x^2", "xy", "xz", "y^2", "z^2"])
}

#[test]
fn residue_field_of_dual_numbers() {
    let r = ring(5, &["x"], &["x^2"]);
    let res = minimal_resolution(&k(&r), 5);
    assert_eq!(res.betti(), vec![1; 6]);
    for i in 1..=5 {
        // Every differential is multiplication by x.
        assert_eq!(res.complex().boundary(i, 0), &vec![(1, 1)]);
    }
}

#[test]
fn closed_form_betti_numbers() {
    let r = ring(3, &["x", "y"], &["x^2", "y^2"]);
    assert_eq!(poincare_coeffs(&k(&r), 4), vec![1, 2, 3, 4, 5]);
    let r = ring(3, &["x", "y"], &["x^2", "xy", "y^2"]);
    assert_eq!(poincare_coeffs(&k(&r), 5), vec![1, 2, 4, 8, 16, 32]);
    let zero = FDModule::ideal(&ideal_from_strs(&r, &["0"]).unwrap()).unwrap();
    assert_eq!(poincare_coeffs(&zero, 3), vec![0; 4]);
}

#[test]
fn graded_betti_tables() {
    let r = ring(5, &["x", "y"], &["x^2", "y^2"]);
    let t = betti_table(&k(&r), 4);
    assert!(t.is_linear(0));
    assert_eq!(t.totals(), vec![1, 2, 3, 4, 5]);
    let cyc = FDModule::cyclic(&ideal_from_strs(&r, &["x"]).unwrap()).unwrap();
    assert_eq!(poincare_coeffs(&cyc, 3)[0], 1);
}

#[test]
fn tor_maps_of_identity_and_projection() {
    let r = e3();
    let m = k(&r);
    for t in tor_comparison(&ModuleMap::identity(&m), 4).unwrap() {
        assert_eq!(t.matrix, FpMatrix::identity(r.field(), t.matrix.rows()));
    }
    let i = ideal_from_strs(&r, &["x+y+z"]).unwrap();
    let maps = tor_comparison(&ModuleMap::projection_to_residue_field(&i).unwrap(), 4).unwrap();
    assert!(maps[0].injective());
    assert!(maps.iter().any(|t| !t.injective()));
}

#[test]
fn inclusion_of_m_times_ideal_is_zero_on_tor() {
    let r = ring(5, &["x", "y"], &["x^2", "y^2"]);
    let i = ideal_from_strs(&r, &["x"]).unwrap();
    let mi = i.times_maximal();
    let maps = tor_comparison(&ModuleMap::inclusion(&mi, &i).unwrap(), 4).unwrap();
    assert_eq!(maps.len(), 5);
    assert!(maps.iter().all(TorMap::is_zero));
}

#[test]
fn tor_of_residue_fields() {
    let r = sec3();
    let zero = quotient_ring(&ideal_from_strs(&r, &["0"]).unwrap()).unwrap();
    for t in tor_kk_map(&zero, 4).unwrap() {
        assert!(t.injective() && t.surjective());
    }
    let q = quotient_ring(&ideal_from_strs(&r, &["x"]).unwrap()).unwrap();
    assert!(tor_kk_map(&q, 5).unwrap().iter().all(TorMap::surjective));
    let q = quotient_ring(&ideal_from_strs(&e3(), &["x+y+z"]).unwrap()).unwrap();
    let maps = tor_kk_map(&q, 3).unwrap();
    assert!(maps[..3].iter().all(TorMap::surjective));
    assert!(!maps[3].surjective());
}

#[test]
fn linear_parts() {
    let r = ring(5, &["x", "y"], &["x^2", "y^2"]);
    let ld = linearity_defect(&k(&r), 4).unwrap();
    assert!(ld.koszul_to_n);
    assert_eq!(ld.max_nonzero, Some(0));

    let r = ring(5, &["x"], &["x^3"]);
    let ld = linearity_defect(&k(&r), 4).unwrap();
    assert!(!ld.koszul_to_n);
    assert_eq!(ld.betti.get(1, 1), 1);
    assert_eq!(ld.betti.get(2, 3), 1);
    assert_eq!(ld.diagonal_betti, Some(false));

    let r = ring(5, &["x", "y"], &["x^2-y^2", "xy"]);
    assert_eq!(r.top_degree(), 2);
    let cyc = FDModule::cyclic(&ideal_from_strs(&r, &["x"]).unwrap()).unwrap();
    let ld = linearity_defect(&cyc, 4).unwrap();
    assert!(ld.koszul_to_n);
    assert_eq!(ld.diagonal_betti, Some(true));
}

/// `dim Tor_i(k, M)` from the resolution of `k` tensored with `M`.
fn tor_k_m(r: &Ring, m: &FDModule, n: usize) -> Vec<usize> {
    let res = minimal_resolution(&k(r), n + 1);
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

fn fixtures() -> Vec<Ring> {
    vec![
        e3(),
        sec3(),
        ring(2, &["x", "y"], &["x^2", "y^2"]),
        ring(3, &["x", "y"], &["x^2", "xy", "y^2"]),
        ring(5, &["x", "y"], &["x^2-y^2", "xy"]),
        ring(5, &["x"], &["x^3"]),
    ]
}

#[test]
fn second_betti_number_of_residue_field() {
    for r in fixtures() {
        let n = r.embdim();
        let b = poincare_coeffs(&k(&r), 2);
        assert_eq!(b[2], n * (n - 1) / 2 + ring_homology(&r).dim(1));
        let t = betti_table(&k(&r), 3);
        for (i, row) in t.entries.iter().enumerate() {
            assert!(row.keys().all(|&j| j >= i as i32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn balancedness(which in 0usize..6, coeffs in prop::collection::vec(0u32..5, 0..12), as_ideal in any::<bool>()) {
        let r = &fixtures()[which];
        let f = r.field();
        let gens: Vec<Vec<u32>> = coeffs
            .chunks(r.dim().max(1))
            .map(|c| {
                let mut v = vec![0u32; r.dim()];
                // Homogeneous of degree one or two.
                let deg = if c.len() % 2 == 0 { 1 } else { 2 };
                for (k, b) in r.degree_range(deg).enumerate() {
                    v[b] = f.reduce(*c.get(k).unwrap_or(&0) as i64);
                }
                v
            })
            .collect();
        let ideal = RingIdeal::from_elements(r, gens);
        let m = if as_ideal { FDModule::ideal(&ideal).unwrap() } else { FDModule::cyclic(&ideal).unwrap() };
        prop_assert_eq!(poincare_coeffs(&m, 4), tor_k_m(r, &m, 4));
    }
}
