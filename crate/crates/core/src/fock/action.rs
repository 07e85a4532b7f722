use std::collections::BTreeMap;

use super::vector::{normalize_terms, prefix_weight};
use super::{FockConfig, FockError, FockVector};
use crate::affinization::{act_on_label, t_exponent, AffLabel, Generator};
use crate::crystal::Node;
use crate::qfield::LaurentPoly;

/// An operator that acts on one tensor site at a time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SiteOp {
    E(Node),
    F(Node),
    /// Multiplication by `z^a` (the boson `B_a`).
    Z(i64),
}

impl SiteOp {
    fn act(self, b: AffLabel) -> Option<(AffLabel, LaurentPoly)> {
        match self {
            SiteOp::E(i) => act_on_label(Generator::E(i), b),
            SiteOp::F(i) => act_on_label(Generator::F(i), b),
            SiteOp::Z(a) => Some((b.shifted(a), LaurentPoly::one())),
        }
    }
}

struct Term<'a> {
    m: i64,
    f: &'a FockVector,
    prefix: &'a [AffLabel],
}

impl Term<'_> {
    fn label(&self, r: usize) -> AffLabel {
        self.prefix.get(r).copied().unwrap_or_else(|| self.f.seq().ground(self.m + r as i64))
    }

    /// Exponent of the group-like factors the coproduct attaches to site `r`.
    fn multiplier(&self, op: SiteOp, r: usize) -> i64 {
        let len = self.prefix.len();
        match op {
            SiteOp::E(i) => -(0..r).map(|s| t_exponent(i, self.label(s))).sum::<i64>(),
            SiteOp::F(i) => {
                let end = len.max(r + 1);
                let explicit: i64 = (r + 1..end).map(|s| t_exponent(i, self.label(s))).sum();
                explicit + self.f.seq().lambda(self.m + end as i64).pairing(i)
            }
            SiteOp::Z(_) => 0,
        }
    }

    /// Raw prefix after acting at site `r`, with its coefficient multiplier.
    fn contribution(&self, op: SiteOp, r: usize) -> Option<(Vec<AffLabel>, LaurentPoly)> {
        let (b, c) = op.act(self.label(r))?;
        let mut k: Vec<AffLabel> = (0..self.prefix.len().max(r + 1)).map(|s| self.label(s)).collect();
        k[r] = b;
        Some((k, c.shift(self.multiplier(op, r))))
    }
}

/// Number of powers of `q` lost to negative exponents in the multipliers.
fn precision_loss(f: &FockVector, op: SiteOp) -> usize {
    let p = f.seq().period();
    let mut worst = 0i64;
    for (k, _) in f.terms() {
        let t = Term { m: f.sector(), f, prefix: k };
        for r in 0..k.len() + 2 * p {
            if let Some((_, c)) = t.contribution(op, r) {
                worst = worst.min(c.min_exp().unwrap_or(0));
            }
        }
    }
    (-worst) as usize
}

/// `Σ_r (op at site r)` on `f`, summed to an adaptive depth: the ground
/// sites are visited one period at a time until two consecutive periods
/// contribute nothing modulo the output precision.
pub(crate) fn apply_site_sum(f: &FockVector, op: SiteOp, cfg: &FockConfig) -> Result<FockVector, FockError> {
    let lost = precision_loss(f, op);
    if lost >= f.precision() {
        return Err(FockError::PrecisionExhausted { have: f.precision(), lost });
    }
    let n = f.precision() - lost;
    let (m, seq, p) = (f.sector(), f.seq(), f.seq().period());
    let mut out: BTreeMap<Vec<AffLabel>, LaurentPoly> = BTreeMap::new();
    let merge = |out: &mut BTreeMap<Vec<AffLabel>, LaurentPoly>, part: BTreeMap<Vec<AffLabel>, LaurentPoly>| {
        for (k, c) in part {
            *out.entry(k).or_default() += &c;
        }
    };
    for (k, c) in f.terms() {
        let t = Term { m, f, prefix: k };
        let raw = |r: usize| t.contribution(op, r).map(|(nk, x)| (nk, x.mul_truncated(c, n as i64)));
        let explicit = normalize_terms(m, seq, n, (0..k.len()).filter_map(raw), cfg)?;
        merge(&mut out, explicit);
        let mut r = k.len();
        let mut quiet = 0;
        while quiet < 2 {
            if r >= cfg.max_prefix(seq) {
                return Err(FockError::FrontierCap { prefix_len: r, cap: cfg.max_prefix(seq) });
            }
            let block = normalize_terms(m, seq, n, (r..r + p).filter_map(raw), cfg)?;
            quiet = if block.is_empty() { quiet + 1 } else { 0 };
            merge(&mut out, block);
            r += p;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(FockVector::from_canonical(m, seq, n, out))
}

/// Action of `e_i`, `f_i`, `t_i^{±1}` on a Fock vector.
pub fn uq_apply_fock(g: Generator, f: &FockVector, cfg: &FockConfig) -> Result<FockVector, FockError> {
    match g {
        Generator::E(i) => apply_site_sum(f, SiteOp::E(i), cfg),
        Generator::F(i) => apply_site_sum(f, SiteOp::F(i), cfg),
        Generator::T(i) | Generator::TInv(i) => {
            let sign = if matches!(g, Generator::T(_)) { 1 } else { -1 };
            let exps: BTreeMap<Vec<AffLabel>, i64> =
                f.terms().map(|(k, _)| (k.clone(), sign * prefix_weight(f.sector(), f.seq(), k).pairing(i))).collect();
            let lost = (-exps.values().copied().min().unwrap_or(0)).max(0) as usize;
            if lost >= f.precision() && !f.is_zero() {
                return Err(FockError::PrecisionExhausted { have: f.precision(), lost });
            }
            let n = f.precision().saturating_sub(lost);
            let terms = f
                .terms()
                .map(|(k, c)| (k.clone(), c.shift(exps[k]).truncated(n as i64)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            Ok(FockVector::from_canonical(f.sector(), f.seq(), n, terms))
        }
    }
}
