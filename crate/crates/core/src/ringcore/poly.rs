use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{FpScalar, PrimeField};

/// Exponent vector, ordered by degree reverse lexicographic order with
/// `x_1 > x_2 > … > x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable index if this is a pure power `x_i^e`, `e ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn format(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // Smaller exponent in the last differing variable wins.
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `k[x_1..x_n]`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        Self::term(field, Monomial::one(nvars), field.reduce(c))
    }

    pub fn term(field: PrimeField, m: Monomial, c: u32) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if c % field.p() != 0 {
            terms.insert(m, c % field.p());
        }
        Polynomial { field, nvars, terms }
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), 1)
    }

    pub fn from_terms(field: PrimeField, nvars: usize, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FpScalar)> {
        let p = self.field.p();
        self.terms.iter().map(move |(m, &c)| (m, FpScalar { value: c, p }))
    }
    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        let c = c % self.field.p();
        if c == 0 {
            return;
        }
        let f = self.field;
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot = f.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(self.field.p() - 1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.field;
        let c = c % f.p();
        let terms = if c == 0 {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect()
        };
        Polynomial { terms, ..self.clone() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.field;
        let c = c % f.p();
        let terms = if c == 0 {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(t, &a)| (t.mul(m), f.mul(a, c))).collect()
        };
        Polynomial { terms, ..self.clone() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, &c) in &other.terms {
            for (t, &a) in &self.terms {
                out.add_term(t.mul(m), self.field.mul(a, c));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.field, self.nvars, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(self.field.inv(c)),
            None => self.clone(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Degree of the leading term (total degree for homogeneous input).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        Polynomial { terms, ..self.clone() }
    }

    /// Replace variable `i` by `images[i]`, which live in a ring with
    /// `target_nvars` variables.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let f = self.field;
        let mut out = Polynomial::zero(f, target_nvars);
        for (m, &c) in &self.terms {
            let mut t = Polynomial::constant(f, target_nvars, c as i64);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            let sc = self.field.signed(c);
            let mag = sc.unsigned_abs();
            if i == 0 {
                if sc < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if sc < 0 { " - " } else { " + " });
            }
            let mono = m.format(vars);
            match (mag, mono.as_str()) {
                (_, "1") => s.push_str(&mag.to_string()),
                (1, _) => s.push_str(&mono),
                _ => s.push_str(&format!("{mag}*{mono}")),
            }
        }
        s
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&vars))
    }
}

/// Parse a polynomial over the given variables.
///
/// Accepts signed sums of terms such as `3x^2*y - y^3 + 1`, juxtaposed
/// variables (`xy` when `x` and `y` are variables), and parenthesised
/// subexpressions raised to integer powers (`(x+y+z)^2`).
pub fn parse_polynomial(src: &str, vars: &[String], field: PrimeField) -> Result<Polynomial> {
    let mut parser = PolyParser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        vars,
        field,
    };
    let p = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    field: PrimeField,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        let src: String = self.chars.iter().collect();
        Error::ParseError(format!("{msg} at offset {} in `{src}`", self.pos))
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.field, self.nvars());
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer too large"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let p = self.field.p() as u64;
                let v = self.chars[start..self.pos]
                    .iter()
                    .fold(0u64, |acc, c| (acc * 10 + c.to_digit(10).unwrap() as u64) % p);
                Ok(Polynomial::constant(self.field, self.nvars(), v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                // One variable per atom, so `xy^2` reads as `x*y^2`.
                let mut end = self.pos;
                while matches!(self.chars.get(end), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
                    end += 1;
                }
                let word: String = self.chars[self.pos..end].iter().collect();
                let best = self
                    .vars
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| word.starts_with(v.as_str()))
                    .max_by_key(|(_, v)| v.len());
                match best {
                    Some((i, v)) => {
                        self.pos += v.chars().count();
                        Ok(Polynomial::var(self.field, self.nvars(), i))
                    }
                    None => Err(Error::VariableMismatch(format!(
                        "unknown variable `{word}` at offset {}",
                        self.pos
                    ))),
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
