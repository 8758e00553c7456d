use proptest::prelude::*;

use super::*;
use crate::report::Status;

fn ring(p: u64, vars: &[&str], rels: &[&str]) -> Ring {
    ring_from_strs(p, vars, rels).unwrap()
}

#[test]
fn dimensions() {
    assert_eq!(ring(5, &["x", "y", "z"], &["x^2", "y^2", "z^2"]).dim(), 8);
    let r = ring(5, &["x"], &["x^2"]);
    assert_eq!(r.dim(), 2);
    assert_eq!(r.basis().iter().map(|m| m.degree()).collect::<Vec<_>>(), vec![0, 1]);
    let r = ring(5, &["x", "y", "z"], &["x^2", "y^2", "z^2", "xy", "xz"]);
    assert_eq!(r.dim(), 5);
    assert_eq!(r.hilbert_function(), vec![1, 3, 1]);
}

#[test]
fn non_artinian_and_unit() {
    let f = crate::exactla::PrimeField::new(5).unwrap();
    let vars = vec!["x".to_string(), "y".to_string()];
    let x2 = parse_polynomial("x^2", &vars, f).unwrap();
    let err = QuotientRing::new(f, vars.clone(), vec![x2]).unwrap_err();
    assert_eq!(err.kind(), "NotArtinian");
    let one = parse_polynomial("1+x", &vars, f).unwrap();
    let x = parse_polynomial("x", &vars, f).unwrap();
    assert_eq!(
        QuotientRing::new(f, vars, vec![one, x]).unwrap_err().kind(),
        "UnitIdeal"
    );
}

#[test]
fn normal_form_of_square() {
    let r = ring(5, &["x", "y", "z"], &["x^2", "y^2", "z^2"]);
    let f = parse_polynomial("(x+y+z)^2", r.vars(), r.field()).unwrap();
    let nf = r.normal_form(&f).unwrap();
    assert_eq!(
        nf.to_string(),
        r.normal_form(&parse_polynomial("2xy+2xz+2yz", r.vars(), r.field()).unwrap())
            .unwrap()
            .to_string()
    );
    assert!(!nf.is_zero());
}

#[test]
fn linear_form_ideal() {
    let r = ring(5, &["x", "y", "z"], &["x^2", "y^2", "z^2"]);
    let i = ideal_from_strs(&r, &["x+y+z"]).unwrap();
    // R/I has basis 1, y, z.
    assert_eq!(i.dim(), 5);
    assert_eq!(i.mu(), 1);
    let rep = check_nc(&i);
    assert_eq!(rep.verdict.status, Status::HoldsDecisive);
    let q = quotient_ring(&i).unwrap();
    assert_eq!(q.target.embdim(), 2);
    assert_eq!(q.target.dim(), 3);
    assert_eq!(q.kept, vec![1, 2]);
}

#[test]
fn nc_failure_has_witness() {
    let r = ring(3, &["x"], &["x^3"]);
    let i = ideal_from_strs(&r, &["x^2"]).unwrap();
    let rep = check_nc(&i);
    assert_eq!(rep.verdict.status, Status::FailsDecisive);
    assert_eq!(rep.verdict.witness.as_ref().unwrap().data["element"], "x^2");
}

#[test]
fn zero_ideal_is_nc() {
    let r = ring(3, &["x", "y"], &["x^2", "y^2"]);
    let i = ideal_from_strs(&r, &["0"]).unwrap();
    assert!(i.is_zero());
    assert!(nc_holds(&i));
}

#[test]
fn quotient_by_variable() {
    let r = ring(5, &["x", "y", "z"], &["x^2", "y^2", "z^2", "xy", "xz"]);
    let i = ideal_from_strs(&r, &["x"]).unwrap();
    let q = quotient_ring(&i).unwrap();
    assert_eq!(q.target.vars(), &["y".to_string(), "z".to_string()]);
    assert_eq!(q.target.dim(), 4);
    assert_eq!(q.matrix.rank(), 4);
}

#[test]
fn quotient_by_maximal_ideal() {
    let r = ring(2, &["x", "y"], &["x^2", "y^2"]);
    let q = quotient_ring(&RingIdeal::maximal(&r)).unwrap();
    assert_eq!(q.target.dim(), 1);
    assert_eq!(q.target.embdim(), 0);
}

#[test]
fn annihilators() {
    let r = ring(3, &["x"], &["x^2"]);
    let x = ideal_from_strs(&r, &["x"]).unwrap();
    assert_eq!(annihilator(&x).subspace(), x.subspace());
    let r = ring(3, &["x", "y"], &["x^2", "y^2"]);
    let ann = annihilator(&RingIdeal::maximal(&r));
    assert_eq!(ann.dim(), 1);
    assert_eq!(ann.subspace(), ideal_from_strs(&r, &["xy"]).unwrap().subspace());
}

#[test]
fn powers_of_maximal_ideal() {
    let r = ring(5, &["x", "y", "z"], &["x^3", "y^3", "z^3"]);
    assert_eq!(power_of_maximal_ideal(&r), None);
    let r = ring(5, &["x", "y"], &["x^3", "x^2y", "xy^2", "y^3"]);
    assert_eq!(power_of_maximal_ideal(&r), Some(3));
    let r = ring(5, &["x", "y"], &["x^2", "y^2"]);
    assert_eq!(power_of_maximal_ideal(&r), None);
}

#[test]
fn juxtaposed_variables_bind_exponents_locally() {
    let r = ring(5, &["x", "y"], &["x^3", "y^3"]);
    let a = parse_polynomial("xy^2", r.vars(), r.field()).unwrap();
    let b = parse_polynomial("x*y^2", r.vars(), r.field()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn spec_text() {
    let text = "# comment\np = 5\nvars = x, y\nrelations = x^2, y^2\nideal = x+y\ntruncation = 4\n";
    let spec = RingSpec::parse(text).unwrap();
    assert_eq!(spec.truncation, Some(4));
    assert_eq!(spec.ideal.as_deref(), Some(&["x+y".to_string()][..]));
    assert_eq!(spec.build_ring().unwrap().dim(), 4);
    assert_eq!(RingSpec::parse("p = 5\nvars = x\n").unwrap_err().kind(), "ParseError");
    assert_eq!(
        RingSpec::parse("p = 4\nvars = x\nrelations = x^2")
            .unwrap()
            .build_ring()
            .unwrap_err()
            .kind(),
        "NotPrime"
    );
    assert_eq!(split_top_level("(x+y)^2, x, f(a,b)"), vec!["(x+y)^2", "x", "f(a,b)"]);
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), 0u32..5), 0..6)
}

fn build(r: &Ring, terms: &[(Vec<u32>, u32)]) -> Polynomial {
    Polynomial::from_terms(
        r.field(),
        r.nvars(),
        terms.iter().map(|(e, c)| (Monomial(e.clone()), *c)),
    )
}

proptest! {
    #[test]
    fn normal_form_is_multiplicative(a in arb_poly(2), b in arb_poly(2)) {
        let r = ring(5, &["x", "y"], &["x^3", "xy^2-x^2y", "y^3"]);
        let (fa, fb) = (build(&r, &a), build(&r, &b));
        let lhs = r.normal_form(&fa.mul(&fb)).unwrap();
        let rhs = r.normal_form(&fa).unwrap().mul(&r.normal_form(&fb).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn minimal_generators_bounded(gens in prop::collection::vec(arb_poly(3), 1..4)) {
        let r = ring(3, &["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        let polys: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
        let i = make_ideal(&r, &polys).unwrap();
        prop_assert!(i.mu() <= polys.len());
        let t = i.trimmed();
        prop_assert_eq!(t.subspace(), i.subspace());
    }
}
