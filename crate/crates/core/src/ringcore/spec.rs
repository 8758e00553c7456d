//! The ring-spec text format:
//!
//! ```text
//! p = 5
//! vars = x, y, z
//! relations = x^2, y^2, z^2
//! ideal = x+y+z
//! truncation = 6
//! ```
//!
//! `ideal` and `truncation` are optional; `#` starts a comment.

use std::sync::Arc;

use super::ideal::{make_ideal, RingIdeal};
use super::poly::{parse_polynomial, Polynomial};
use super::ring::{QuotientRing, Ring};
use crate::error::{Error, Result};
use crate::exactla::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub p: u64,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub ideal: Option<Vec<String>>,
    pub truncation: Option<usize>,
}

/// Split on commas that are not inside parentheses.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (mut p, mut vars, mut relations, mut ideal, mut truncation) = (None, None, None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::ParseError(format!(
                    "line {}: expected `key = value`",
                    lineno + 1
                )));
            };
            let value = value.trim();
            let dup = |k: &str| Error::ParseError(format!("line {}: duplicate key `{k}`", lineno + 1));
            match key.trim() {
                "p" => {
                    let v: u64 = value
                        .parse()
                        .map_err(|_| Error::ParseError(format!("line {}: bad prime `{value}`", lineno + 1)))?;
                    if p.replace(v).is_some() {
                        return Err(dup("p"));
                    }
                }
                "vars" => {
                    let vs: Vec<String> = split_top_level(value);
                    if vs.is_empty() || !vs.iter().all(|v| is_ident(v)) {
                        return Err(Error::ParseError(format!("line {}: bad variable list", lineno + 1)));
                    }
                    for (i, v) in vs.iter().enumerate() {
                        if vs[..i].contains(v) {
                            return Err(Error::ParseError(format!("repeated variable `{v}`")));
                        }
                    }
                    if vars.replace(vs).is_some() {
                        return Err(dup("vars"));
                    }
                }
                "relations" => {
                    if relations.replace(split_top_level(value)).is_some() {
                        return Err(dup("relations"));
                    }
                }
                "ideal" => {
                    if ideal.replace(split_top_level(value)).is_some() {
                        return Err(dup("ideal"));
                    }
                }
                "truncation" => {
                    let n: usize = value
                        .parse()
                        .map_err(|_| Error::ParseError(format!("line {}: bad truncation `{value}`", lineno + 1)))?;
                    if truncation.replace(n).is_some() {
                        return Err(dup("truncation"));
                    }
                }
                other => {
                    return Err(Error::ParseError(format!("line {}: unknown key `{other}`", lineno + 1)));
                }
            }
        }
        Ok(RingSpec {
            p: p.ok_or_else(|| Error::ParseError("missing `p`".into()))?,
            vars: vars.ok_or_else(|| Error::ParseError("missing `vars`".into()))?,
            relations: relations.ok_or_else(|| Error::ParseError("missing `relations`".into()))?,
            ideal,
            truncation,
        })
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.p)
    }

    pub fn relation_polys(&self) -> Result<Vec<Polynomial>> {
        let f = self.field()?;
        self.relations
            .iter()
            .map(|r| parse_polynomial(r, &self.vars, f))
            .collect()
    }

    pub fn build_ring(&self) -> Result<Ring> {
        let f = self.field()?;
        Ok(Arc::new(QuotientRing::new(
            f,
            self.vars.clone(),
            self.relation_polys()?,
        )?))
    }

    /// Ideal of `ring` from generator strings.
    pub fn ideal_in(ring: &Ring, gens: &[String]) -> Result<RingIdeal> {
        let polys = gens
            .iter()
            .map(|g| parse_polynomial(g, ring.vars(), ring.field()))
            .collect::<Result<Vec<_>>>()?;
        make_ideal(ring, &polys)
    }
}

/// Parse ring-spec text into a ring.
pub fn parse_ring(text: &str) -> Result<Ring> {
    RingSpec::parse(text)?.build_ring()
}

/// Build a ring from a prime, variable names and relation strings.
pub fn ring_from_strs(p: u64, vars: &[&str], relations: &[&str]) -> Result<Ring> {
    RingSpec {
        p,
        vars: vars.iter().map(|s| s.to_string()).collect(),
        relations: relations.iter().map(|s| s.to_string()).collect(),
        ideal: None,
        truncation: None,
    }
    .build_ring()
}

/// Ideal from generator strings; `"0"` gives the zero ideal.
pub fn ideal_from_strs(ring: &Ring, gens: &[&str]) -> Result<RingIdeal> {
    let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    RingSpec::ideal_in(ring, &gens)
}
