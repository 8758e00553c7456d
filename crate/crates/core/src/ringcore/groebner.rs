//! Buchberger's algorithm under degrevlex.

use std::collections::BTreeSet;

use super::poly::{Monomial, Polynomial};

/// Fully reduce `f` modulo `basis` (every term, not just the leading one).
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = f.field();
    let mut rem = Polynomial::zero(field, f.nvars());
    let mut work = f.clone();
    // Peel the largest term each round: either cancel it against a leading
    // term or move it to the remainder.
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c)) {
        match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = lm.quotient_of(&m);
                let coef = field.mul(c, field.inv(lc));
                work = work.sub(&g.mul_term(&q, coef));
            }
            None => {
                rem.add_term(m.clone(), c);
                work.add_term(m, field.neg(c));
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (lf, cf) = f.leading().unwrap();
    let (lg, cg) = g.leading().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l), field.inv(cf));
    let b = g.mul_term(&lg.quotient_of(&l), field.inv(cg));
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// leading monomial.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(Polynomial::monic).collect();
    if basis.iter().any(|g| g.leading().unwrap().0.degree() == 0) {
        let g = &basis[0];
        return vec![Polynomial::constant(g.field(), g.nvars(), 1)];
    }
    // Pairs keyed by (lcm degree, i, j) for the normal selection strategy.
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let lcm_deg =
        |b: &[Polynomial], i: usize, j: usize| b[i].leading().unwrap().0.lcm(b[j].leading().unwrap().0).degree();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lcm_deg(&basis, i, j), i, j));
        }
    }
    while let Some(&pair) = pairs.iter().next() {
        pairs.remove(&pair);
        let (_, i, j) = pair;
        let (li, lj) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        if li.coprime(lj) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.leading().unwrap().0.degree() == 0 {
            return vec![r];
        }
        basis.push(r);
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.insert((lcm_deg(&basis, k, n), k, n));
        }
    }
    interreduce(basis)
}

fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<Polynomial> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    for g in sorted {
        let lm: &Monomial = g.leading().unwrap().0;
        if minimal.iter().any(|h| h.leading().unwrap().0.divides(lm)) {
            continue;
        }
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, _) = minimal[i].leading().unwrap();
        let mut head = Polynomial::term(minimal[i].field(), lm.clone(), 1);
        let tail = minimal[i].sub(&head);
        head = head.add(&reduce(&tail, &others));
        reduced.push(head);
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::ringcore::poly::parse_polynomial;

    fn polys(src: &[&str], vars: &[&str], p: u64) -> Vec<Polynomial> {
        let f = PrimeField::new(p).unwrap();
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        src.iter().map(|s| parse_polynomial(s, &v, f).unwrap()).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let g = polys(&["x^2", "y^2", "z^2"], &["x", "y", "z"], 5);
        let gb = groebner_basis(&g);
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn gorenstein_relations_gain_a_cubic() {
        // (x^2 - y^2, xy): leading terms xy < x^2, then y^3.
        let g = polys(&["x^2-y^2", "xy"], &["x", "y"], 5);
        let gb = groebner_basis(&g);
        let expected = polys(&["xy", "x^2-y^2", "y^3"], &["x", "y"], 5);
        assert_eq!(gb, expected);
    }

    #[test]
    fn reduction_by_basis_is_canonical() {
        let g = groebner_basis(&polys(&["x^2-y^2", "xy"], &["x", "y"], 7));
        let a = reduce(&polys(&["x^2"], &["x", "y"], 7)[0], &g);
        let b = reduce(&polys(&["y^2"], &["x", "y"], 7)[0], &g);
        assert_eq!(a, b);
    }

    #[test]
    fn unit_ideal() {
        let gb = groebner_basis(&polys(&["x", "x+1"], &["x"], 3));
        assert_eq!(gb, polys(&["1"], &["x"], 3));
    }
}
