//! The q-wedge space `V_aff^{⊗n} / N` and its normally ordered basis.
//!
//! A pure wedge `u_1 ∧ ... ∧ u_n` is normally ordered when every adjacent
//! pair has `H(u_m ⊗ u_{m+1}) > 0`. [`straighten`] rewrites any wedge into
//! that basis using the rules of [`straighten2`].

mod action;
mod relations;
mod slice;
mod straighten;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affinization::{global_wt, level_l, normally_ordered, AffLabel, Weight};
use crate::qfield::{Coefficient, LaurentPoly};

pub use action::{apply_on_factors, uq_apply_wedge};
pub use relations::{
    base_relation_for, base_relations, lemma_audit, shift_relation, smear_relation, AuditRow, Pair, Relation,
};
pub use slice::{slice_basis, slice_rank, slice_solve, SliceRank, SliceSolution};
pub use straighten::{straighten, straighten2, straighten_terms, StraightenConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedgeError {
    #[error("straightening exceeded its fuel of {0} rewrites")]
    FuelExhausted(u64),
    #[error("no reduction of {u}^{w} found after {widenings} window widenings")]
    SliceSolveFailed { u: AffLabel, w: AffLabel, widenings: usize },
    #[error("membership certificate failed for {0}")]
    Certificate(String),
    #[error("wedges of different arity: {0} and {1}")]
    ArityMismatch(usize, usize),
}

/// Coefficient rings the straightening engine can run over.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul_laurent(&self, p: &LaurentPoly) -> Self;
}

impl Scalar for Coefficient {
    fn zero() -> Self {
        Coefficient::zero()
    }
    fn is_zero(&self) -> bool {
        Coefficient::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        Coefficient::mul_laurent(self, p)
    }
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        self.mul_ref(p)
    }
}

/// Parses a wedge monomial such as `v2^z^-1v0` or `zv1, v0`: each factor
/// ends at its `v<j>`, and `^`, `∧`, commas and spaces between factors are
/// ignored.
pub fn parse_factors(s: &str) -> Result<Vec<AffLabel>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if cur.is_empty() && matches!(c, '^' | '∧' | ',' | ' ' | '\t') {
            continue;
        }
        cur.push(c);
        if c == 'v' {
            let d = chars.next().ok_or_else(|| format!("factor {cur:?} has no color"))?;
            cur.push(d);
            out.push(cur.parse::<AffLabel>()?);
            cur.clear();
        }
    }
    if !cur.is_empty() {
        return Err(format!("trailing input {cur:?}"));
    }
    if out.is_empty() {
        return Err("empty wedge".into());
    }
    Ok(out)
}

pub fn is_normally_ordered(factors: &[AffLabel]) -> bool {
    factors.windows(2).all(|p| normally_ordered(p[0], p[1]))
}

pub fn wedge_weight(factors: &[AffLabel]) -> Weight {
    factors.iter().map(|b| global_wt(*b)).sum()
}

pub fn wedge_l(factors: &[AffLabel]) -> i64 {
    factors.iter().map(|b| level_l(*b)).sum()
}

/// A linear combination of pure wedges of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector<C = Coefficient> {
    arity: usize,
    terms: BTreeMap<Vec<AffLabel>, C>,
}

impl<C: Scalar> WedgeVector<C> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn pure(factors: Vec<AffLabel>, c: C) -> Self {
        let mut v = Self::zero(factors.len());
        v.add_term(factors, &c);
        v
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, factors: Vec<AffLabel>, c: &C) {
        assert_eq!(factors.len(), self.arity, "wedge arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign(c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &Self) -> Result<(), WedgeError> {
        if other.arity != self.arity && !other.is_zero() {
            return Err(WedgeError::ArityMismatch(self.arity, other.arity));
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
        Ok(())
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.mul_laurent(p));
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<AffLabel>, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Vec<AffLabel>, C> {
        self.terms
    }

    pub fn from_terms(arity: usize, terms: BTreeMap<Vec<AffLabel>, C>) -> Self {
        let mut v = Self::zero(arity);
        for (k, c) in terms {
            v.add_term(k, &c);
        }
        v
    }

    pub fn coeff(&self, factors: &[AffLabel]) -> Option<&C> {
        self.terms.get(factors)
    }

    /// Number of stored terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normally_ordered(&self) -> bool {
        self.terms.keys().all(|k| is_normally_ordered(k))
    }
}

impl WedgeVector<Coefficient> {
    pub fn straightened(&self) -> Result<Self, WedgeError> {
        straighten(self, &StraightenConfig::default())
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().map(|(k, c)| (k.as_slice(), c)))
    }
}

/// Human form such as `(q^4-1) v0^zv1 - q^2 v1^zv0`.
pub fn render_terms<'a>(it: impl Iterator<Item = (&'a [AffLabel], &'a Coefficient)>) -> String {
    render_terms_with_tail(it, None)
}

/// Like [`render_terms`] with a symbol wedged onto the end of every term.
pub fn render_terms_with_tail<'a>(
    it: impl Iterator<Item = (&'a [AffLabel], &'a Coefficient)>,
    tail: Option<&str>,
) -> String {
    let mut out = String::new();
    for (idx, (factors, c)) in it.enumerate() {
        let (neg, mag) = coefficient_parts(c);
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut body: Vec<String> = factors.iter().map(|b| b.to_string()).collect();
        body.extend(tail.map(str::to_string));
        let body = if body.is_empty() { "1".to_string() } else { body.join("^") };
        if mag.is_empty() {
            out.push_str(&body);
        } else {
            out.push_str(&mag);
            out.push(' ');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn coefficient_parts(c: &Coefficient) -> (bool, String) {
    if let Some(p) = c.as_laurent() {
        if p.len() == 1 {
            let (k, r) = p.terms().next().expect("one term");
            let neg = r < &crate::qfield::Rat::from_integer(0.into());
            let abs = if neg { -r.clone() } else { r.clone() };
            let mut s = String::new();
            let unit = abs == crate::qfield::Rat::from_integer(1.into());
            if !unit {
                s.push_str(&abs.to_string());
            }
            match k {
                0 => {}
                1 => s.push('q'),
                _ => s.push_str(&format!("q^{k}")),
            }
            return (neg, s);
        }
        return (false, format!("({})", compact_poly(p)));
    }
    (false, format!("({})/({})", compact_poly(c.numerator()), compact_poly(&c.denominator().to_laurent())))
}

/// Descending-exponent form without spaces, e.g. `q^4-1`.
pub fn compact_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let one = crate::qfield::Rat::from_integer(1.into());
    let mut s = String::new();
    for (i, (k, c)) in p.terms().rev().enumerate() {
        let neg = c < &crate::qfield::Rat::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        if neg {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        let unit = abs == one;
        if !unit || k == 0 {
            s.push_str(&abs.to_string());
        }
        match k {
            0 => {}
            1 => s.push('q'),
            _ => s.push_str(&format!("q^{k}")),
        }
    }
    s
}

impl fmt::Display for WedgeVector<Coefficient> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    a: i64,
    j: u8,
}

#[derive(Serialize, Deserialize)]
struct WedgeTermJson {
    factors: Vec<FactorJson>,
    coeff: Coefficient,
}

impl Serialize for WedgeVector<Coefficient> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<WedgeTermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| WedgeTermJson {
                factors: k.iter().map(|b| FactorJson { a: b.a, j: b.j }).collect(),
                coeff: c.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WedgeVector<Coefficient> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<WedgeTermJson>::deserialize(d)?;
        let arity = raw.first().map_or(0, |t| t.factors.len());
        let mut out = WedgeVector::zero(arity);
        for t in raw {
            if t.factors.len() != arity {
                return Err(serde::de::Error::custom("terms of different arity"));
            }
            let mut factors = Vec::with_capacity(arity);
            for f in t.factors {
                if f.j > 2 {
                    return Err(serde::de::Error::custom(format!("color {} out of range", f.j)));
                }
                factors.push(AffLabel::new(f.a, f.j));
            }
            out.add_term(factors, &t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> AffLabel {
        s.parse().unwrap()
    }

    #[test]
    fn factor_parsing() {
        assert_eq!(parse_factors("v2^z^-1v0").unwrap(), vec![l("v2"), l("z^-1v0")]);
        assert_eq!(parse_factors("zv1, v0").unwrap(), vec![l("zv1"), l("v0")]);
        assert!(parse_factors("v3").is_err());
        assert!(parse_factors("v1^z").is_err());
        assert!(parse_factors("").is_err());
    }

    #[test]
    fn render_matches_expected_shape() {
        let mut v = WedgeVector::zero(2);
        v.add_term(vec![l("v1"), l("zv0")], &Coefficient::from(LaurentPoly::from_ints(&[(2, -1)])));
        v.add_term(vec![l("v0"), l("zv1")], &Coefficient::from(LaurentPoly::from_ints(&[(4, 1), (0, -1)])));
        assert_eq!(v.render(), "(q^4-1) v0^zv1 - q^2 v1^zv0");
        let w = WedgeVector::pure(vec![l("v2"), l("v0")], -Coefficient::q_pow(4));
        assert_eq!(w.render(), "-q^4 v2^v0");
        assert_eq!(WedgeVector::<Coefficient>::zero(2).render(), "0");
    }

    #[test]
    fn json_round_trip() {
        let mut v = WedgeVector::zero(2);
        v.add_term(vec![l("v1"), l("zv0")], &Coefficient::q_pow(2));
        v.add_term(vec![l("z^-1v2"), l("v0")], &Coefficient::from_int(3));
        let s = serde_json::to_string(&v).unwrap();
        let back: WedgeVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<WedgeVector>(
            r#"[{"factors":[{"a":0,"j":3}],"coeff":{"num":[[0,"1"]],"den":[]}}]"#
        )
        .is_err());
    }

    #[test]
    fn compact_forms() {
        assert_eq!(compact_poly(&LaurentPoly::from_ints(&[(1, 1), (-1, 1)])), "q+q^-1");
        assert_eq!(compact_poly(&LaurentPoly::from_ints(&[(3, 2), (0, -5)])), "2q^3-5");
    }
}
