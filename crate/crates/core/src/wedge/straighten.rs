use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::relations::{base_relation_for, Pair};
use super::{Scalar, WedgeError, WedgeVector};
use crate::affinization::{energy_h, level_l, AffLabel};
use crate::qfield::{Coefficient, LaurentPoly};

#[derive(Clone, Debug)]
pub struct StraightenConfig {
    /// Maximum number of pair rewrites before giving up.
    pub fuel: u64,
    /// Window widenings allowed in [`super::slice_solve`].
    pub max_widen: usize,
}

impl Default for StraightenConfig {
    fn default() -> Self {
        Self { fuel: 1_000_000, max_widen: 8 }
    }
}

type Rule = Vec<(Pair, LaurentPoly)>;
type RuleCache = RwLock<HashMap<(u8, u8, i64), Arc<Rule>>>;

/// Rules keyed by `(i, j, a - c)`; stored with the second factor at `z^0`.
fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The normally ordered expansion of `u ∧ w` as `(pair, coefficient)` terms.
pub(crate) fn pair_rule(u: AffLabel, w: AffLabel) -> Rule {
    if energy_h(u, w) > 0 {
        return vec![((u, w), LaurentPoly::one())];
    }
    let key = (u.j, w.j, u.a - w.a);
    let hit = cache().read().expect("rule cache").get(&key).cloned();
    let rule = match hit {
        Some(r) => r,
        None => {
            let r = Arc::new(compute_rule(AffLabel::new(u.a - w.a, u.j), AffLabel::new(0, w.j)));
            cache().write().expect("rule cache").insert(key, r.clone());
            r
        }
    };
    rule.iter().map(|((x, y), c)| ((x.shifted(w.a), y.shifted(w.a)), c.clone())).collect()
}

fn compute_rule(u: AffLabel, w: AffLabel) -> Rule {
    let h = energy_h(u, w);
    debug_assert!(h <= 0);
    if h == 0 {
        let rel = base_relation_for(u.j, w.j);
        let head = rel.head().expect("base relation head");
        debug_assert_eq!(head, (u, w));
        return rel.terms().filter(|(p, _)| **p != head).map(|(p, c)| (*p, -c)).collect();
    }
    // u' ∧ zw + u ∧ w = (z⊗1 + 1⊗z)(u' ∧ w) with u' = z⁻¹u.
    let up = u.shifted(-1);
    let mut acc: BTreeMap<Pair, LaurentPoly> = BTreeMap::new();
    let mut push = |rule: Rule, scale: &LaurentPoly| {
        for (p, c) in rule {
            let e = acc.entry(p).or_default();
            *e += &c.mul_ref(scale);
        }
    };
    push(pair_rule(up, w.shifted(1)), &LaurentPoly::from_int(-1));
    for ((x, y), c) in pair_rule(up, w) {
        push(pair_rule(x.shifted(1), y), &c);
        push(pair_rule(x, y.shifted(1)), &c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Straightens a two-factor wedge `u ∧ w`.
pub fn straighten2(u: AffLabel, w: AffLabel) -> Result<WedgeVector, WedgeError> {
    let mut out = WedgeVector::zero(2);
    for ((x, y), c) in pair_rule(u, w) {
        out.add_term(vec![x, y], &Coefficient::from(c));
    }
    Ok(out)
}

/// Rewrites in descending order of `Σ (n - m) l(u_m)`, which every rule
/// strictly decreases, so contributions to one wedge merge before expanding.
fn measure(factors: &[AffLabel]) -> i64 {
    let n = factors.len() as i64;
    factors.iter().enumerate().map(|(m, b)| (n - m as i64) * level_l(*b)).sum()
}

/// Core loop over an arbitrary coefficient ring. `prune` may modify a
/// coefficient in place (for example truncate it); zero results are dropped.
pub fn straighten_terms<C: Scalar>(
    input: impl IntoIterator<Item = (Vec<AffLabel>, C)>,
    cfg: &StraightenConfig,
    prune: Option<&dyn Fn(&mut C)>,
) -> Result<BTreeMap<Vec<AffLabel>, C>, WedgeError> {
    let mut work: BTreeMap<(i64, Vec<AffLabel>), C> = BTreeMap::new();
    let push = |work: &mut BTreeMap<(i64, Vec<AffLabel>), C>, k: Vec<AffLabel>, mut c: C| {
        if let Some(p) = prune {
            p(&mut c);
        }
        if c.is_zero() {
            return;
        }
        let e = work.entry((measure(&k), k)).or_insert_with(C::zero);
        e.add_assign(&c);
    };
    for (k, c) in input {
        push(&mut work, k, c);
    }
    let mut out: BTreeMap<Vec<AffLabel>, C> = BTreeMap::new();
    let mut fuel = cfg.fuel;
    while let Some(((_, k), c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        let Some(m) = (0..k.len().saturating_sub(1)).find(|&m| energy_h(k[m], k[m + 1]) <= 0) else {
            let e = out.entry(k).or_insert_with(C::zero);
            e.add_assign(&c);
            continue;
        };
        if fuel == 0 {
            return Err(WedgeError::FuelExhausted(cfg.fuel));
        }
        fuel -= 1;
        for ((x, y), r) in pair_rule(k[m], k[m + 1]) {
            let mut nk = k.clone();
            nk[m] = x;
            nk[m + 1] = y;
            push(&mut work, nk, c.mul_laurent(&r));
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Straightens every term of `v` into the normally ordered basis.
pub fn straighten<C: Scalar>(v: &WedgeVector<C>, cfg: &StraightenConfig) -> Result<WedgeVector<C>, WedgeError> {
    let terms = straighten_terms(v.terms().map(|(k, c)| (k.clone(), c.clone())), cfg, None)?;
    Ok(WedgeVector::from_terms(v.arity(), terms))
}
