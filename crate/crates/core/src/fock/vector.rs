use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FockConfig, FockError, GroundSeq};
use crate::affinization::{energy_h, global_wt, AffLabel, Weight};
use crate::qfield::{Coefficient, LaurentPoly};
use crate::wedge::{render_terms_with_tail, straighten_terms, StraightenConfig, WedgeVector};

/// An element of `F_m` modulo `q^precision`.
///
/// Each key is a prefix `u_m ∧ ... ∧ u_{m+L-1}` standing for
/// `prefix ∧ vac_{m+L}`. In canonical form every prefix is normally ordered,
/// its last factor is normally ordered against `b°_{m+L}`, it does not end
/// in `b°_{m+L-1}`, and every coefficient is truncated below `q^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    m: i64,
    seq: GroundSeq,
    precision: usize,
    terms: BTreeMap<Vec<AffLabel>, LaurentPoly>,
}

impl FockVector {
    pub fn zero(m: i64, seq: GroundSeq, precision: usize) -> Self {
        Self { m, seq, precision, terms: BTreeMap::new() }
    }

    pub fn vacuum(m: i64, seq: GroundSeq, precision: usize) -> Self {
        let mut v = Self::zero(m, seq, precision);
        if precision > 0 {
            v.terms.insert(Vec::new(), LaurentPoly::one());
        }
        v
    }

    /// Builds a vector from raw prefixes and normalizes it.
    pub fn from_prefixes(
        m: i64,
        seq: GroundSeq,
        precision: usize,
        terms: impl IntoIterator<Item = (Vec<AffLabel>, LaurentPoly)>,
        cfg: &FockConfig,
    ) -> Result<Self, FockError> {
        let terms = normalize_terms(m, seq, precision, terms, cfg)?;
        Ok(Self { m, seq, precision, terms })
    }

    pub(crate) fn from_canonical(
        m: i64,
        seq: GroundSeq,
        precision: usize,
        terms: BTreeMap<Vec<AffLabel>, LaurentPoly>,
    ) -> Self {
        Self { m, seq, precision, terms }
    }

    pub fn sector(&self) -> i64 {
        self.m
    }

    pub fn seq(&self) -> GroundSeq {
        self.seq
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Longest explicit prefix.
    pub fn max_prefix(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<AffLabel>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, prefix: &[AffLabel]) -> LaurentPoly {
        self.terms.get(prefix).cloned().unwrap_or_default()
    }

    /// Number of stored terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar `c` if the vector is `c · vac_m`.
    pub fn vacuum_scalar(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn truncated(&self, precision: usize) -> Self {
        let p = precision.min(self.precision);
        let terms =
            self.terms.iter().map(|(k, c)| (k.clone(), c.truncated(p as i64))).filter(|(_, c)| !c.is_zero()).collect();
        Self { m: self.m, seq: self.seq, precision: p, terms }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), FockError> {
        if self.m != other.m || self.seq != other.seq {
            return Err(FockError::Incompatible { left: (self.m, self.seq), right: (other.m, other.seq) });
        }
        Ok(())
    }

    /// Sum at the smaller of the two precisions.
    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        self.check_compatible(other)?;
        let p = self.precision.min(other.precision);
        let mut out = self.truncated(p);
        for (k, c) in &other.terms {
            let e = out.terms.entry(k.clone()).or_default();
            *e += &c.truncated(p as i64);
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FockError> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    /// Multiplies by a polynomial with nonnegative exponents.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        assert!(c.min_exp().is_none_or(|k| k >= 0), "scaling by negative powers loses precision");
        let n = self.precision as i64;
        let terms =
            self.terms.iter().map(|(k, x)| (k.clone(), x.mul_truncated(c, n))).filter(|(_, x)| !x.is_zero()).collect();
        Self { terms, ..self.clone() }
    }

    /// Weight of each term: `Σ wt(prefix) + λ_{m+L}`.
    pub fn term_weights(&self) -> BTreeMap<Vec<AffLabel>, Weight> {
        self.terms.keys().map(|k| (k.clone(), prefix_weight(self.m, self.seq, k))).collect()
    }

    /// The common weight of a homogeneous vector; `None` for the zero vector
    /// or if terms disagree (see [`Self::term_weights`]).
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|k| prefix_weight(self.m, self.seq, k));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn render(&self) -> String {
        let coeffs: Vec<(Vec<AffLabel>, Coefficient)> =
            self.terms.iter().rev().map(|(k, c)| (k.clone(), Coefficient::from(c.clone()))).collect();
        let body = render_terms_with_tail(coeffs.iter().map(|(k, c)| (k.as_slice(), c)), Some("vac"));
        format!("{body} + O(q^{})", self.precision)
    }
}

pub(crate) fn prefix_weight(m: i64, seq: GroundSeq, prefix: &[AffLabel]) -> Weight {
    prefix.iter().map(|b| global_wt(*b)).sum::<Weight>() + seq.lambda(m + prefix.len() as i64)
}

/// `v ∧ f` for a finite wedge `v` of arity `r`; the result lies in `F_{m-r}`.
pub fn wedge_front(v: &WedgeVector, f: &FockVector, cfg: &FockConfig) -> Result<FockVector, FockError> {
    let r = v.arity() as i64;
    let mut raw: Vec<(Vec<AffLabel>, LaurentPoly)> = Vec::new();
    for (k, c) in v.terms() {
        let c = c.as_laurent().ok_or(FockError::NonLaurent)?;
        for (fk, fc) in &f.terms {
            let mut key = k.clone();
            key.extend_from_slice(fk);
            raw.push((key, c.mul_ref(fc)));
        }
    }
    if let Some(k) = raw.iter().filter_map(|(_, c)| c.min_exp()).min().filter(|k| *k < 0) {
        return Err(FockError::PrecisionExhausted { have: f.precision, lost: (-k) as usize });
    }
    FockVector::from_prefixes(f.m - r, f.seq, f.precision, raw, cfg)
}

/// Brings raw `prefix ∧ vac_{m+L}` terms into canonical form.
///
/// A prefix is straightened; if its last factor is not normally ordered
/// against `b°_{m+L}` one ground period is appended and the term is
/// straightened again. Each such round moves a defect deeper at the cost of
/// at least one power of `q`, so terms die once their valuation reaches the
/// precision; [`FockConfig::max_prefix`] bounds the frontier.
pub(crate) fn normalize_terms(
    m: i64,
    seq: GroundSeq,
    precision: usize,
    terms: impl IntoIterator<Item = (Vec<AffLabel>, LaurentPoly)>,
    cfg: &FockConfig,
) -> Result<BTreeMap<Vec<AffLabel>, LaurentPoly>, FockError> {
    let n = precision as i64;
    let prune = move |c: &mut LaurentPoly| c.truncate(n);
    let scfg = StraightenConfig { fuel: cfg.fuel, ..StraightenConfig::default() };
    let mut pending: Vec<(Vec<AffLabel>, LaurentPoly)> = terms.into_iter().collect();
    let mut done: BTreeMap<Vec<AffLabel>, LaurentPoly> = BTreeMap::new();
    while !pending.is_empty() {
        let straightened = straighten_terms(pending.drain(..), &scfg, Some(&prune))?;
        for (mut k, c) in straightened {
            let len = k.len() as i64;
            if len > 0 && energy_h(k[k.len() - 1], seq.ground(m + len)) <= 0 {
                if k.len() >= cfg.max_prefix(seq) {
                    return Err(FockError::FrontierCap { prefix_len: k.len(), cap: cfg.max_prefix(seq) });
                }
                k.extend(seq.ground_run(m + len, seq.period()));
                pending.push((k, c));
                continue;
            }
            while let Some(last) = k.last() {
                if *last != seq.ground(m + k.len() as i64 - 1) {
                    break;
                }
                k.pop();
            }
            let e = done.entry(k).or_default();
            *e += &c;
        }
    }
    done.retain(|_, c| !c.is_zero());
    Ok(done)
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    a: i64,
    j: u8,
}

#[derive(Serialize, Deserialize)]
struct FockTermJson {
    factors: Vec<FactorJson>,
    coeff: Coefficient,
}

#[derive(Serialize, Deserialize)]
struct FockJson {
    m: i64,
    seq: GroundSeq,
    #[serde(rename = "L")]
    l: usize,
    precision: usize,
    terms: Vec<FockTermJson>,
}

impl Serialize for FockVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FockJson {
            m: self.m,
            seq: self.seq,
            l: self.max_prefix(),
            precision: self.precision,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(k, c)| FockTermJson {
                    factors: k.iter().map(|b| FactorJson { a: b.a, j: b.j }).collect(),
                    coeff: Coefficient::from(c.clone()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    /// Accepts any representatives and normalizes them.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = FockJson::deserialize(d)?;
        let mut terms = Vec::new();
        for t in raw.terms {
            let c = t
                .coeff
                .as_laurent()
                .cloned()
                .ok_or_else(|| D::Error::custom("coefficient must be a Laurent polynomial"))?;
            let mut k = Vec::new();
            for f in t.factors {
                if f.j > 2 {
                    return Err(D::Error::custom(format!("color {} out of range", f.j)));
                }
                k.push(AffLabel::new(f.a, f.j));
            }
            terms.push((k, c));
        }
        FockVector::from_prefixes(raw.m, raw.seq, raw.precision, terms, &FockConfig::default())
            .map_err(D::Error::custom)
    }
}
