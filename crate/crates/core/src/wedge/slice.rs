//! Independent straightening by exact elimination inside a finite slice.
//!
//! A two-factor slice is fixed by `a + c` and `i + j`. Inside an `l`-window
//! we list every shifted, smeared base relation whose monomials fit, then
//! eliminate the non-normally-ordered columns over ℚ(q). The combination
//! used is kept so membership in `N` can be re-checked by direct summation.

use std::collections::BTreeMap;

use super::relations::{base_relations, shift_relation, smear_relation, Pair, Relation};
use super::{WedgeError, WedgeVector};
use crate::affinization::{energy_h, level_l, AffLabel, Weight};
use crate::qfield::Coefficient;

#[derive(Clone, Debug)]
pub struct SliceSolution {
    pub target: Pair,
    pub result: WedgeVector,
    pub window: (i64, i64),
    pub widenings: usize,
    /// `target - result = Σ λ_k R_k`.
    pub combination: Vec<(Relation, Coefficient)>,
}

impl SliceSolution {
    /// Re-sums the certificate and checks it vanishes identically.
    pub fn verify(&self) -> bool {
        let mut acc: BTreeMap<Pair, Coefficient> = BTreeMap::new();
        let mut add = |p: Pair, c: Coefficient| {
            let e = acc.entry(p).or_insert_with(Coefficient::zero);
            *e = &*e + &c;
        };
        add(self.target, Coefficient::one());
        for (k, c) in self.result.terms() {
            add((k[0], k[1]), -c);
        }
        for (rel, lam) in &self.combination {
            for (p, c) in rel.terms() {
                add(*p, -(lam.mul_laurent(c)));
            }
        }
        acc.values().all(Coefficient::is_zero)
    }
}

type Row = BTreeMap<usize, Coefficient>;

fn relations_in_window(s: i64, t: u8, lo: i64, hi: i64) -> Vec<Relation> {
    let inside = |r: &Relation| {
        r.terms().all(|((x, y), _)| {
            let (lx, ly) = (level_l(*x), level_l(*y));
            lo <= lx && lx <= hi && lo <= ly && ly <= hi
        })
    };
    let mut out = Vec::new();
    for base in base_relations() {
        let ((hu, hw), _) = base.terms().next().expect("nonempty");
        if hu.j + hw.j != t {
            continue;
        }
        let s_base = hu.a + hw.a;
        let mut r = base.clone();
        for k in 0..=(hi - lo + 2) {
            let rest = s - s_base - k;
            if rest.rem_euclid(2) == 0 {
                let cand = shift_relation(&r, rest / 2);
                if inside(&cand) {
                    let mut cand = cand;
                    cand.name = format!("{}(smear^{k}, shift {})", base.name, rest / 2);
                    out.push(cand);
                }
            }
            r = smear_relation(&r);
        }
    }
    out
}

fn try_window(u: AffLabel, w: AffLabel, lo: i64, hi: i64) -> Option<(WedgeVector, Vec<(Relation, Coefficient)>)> {
    let rels = relations_in_window(u.a + w.a, u.j + w.j, lo, hi);
    let mut cols: Vec<Pair> = rels.iter().flat_map(|r| r.terms().map(|(p, _)| *p)).collect();
    cols.push((u, w));
    cols.sort_by_key(|(x, y)| (energy_h(*x, *y) > 0, -level_l(*x), x.j, *y));
    cols.dedup();
    let index: BTreeMap<Pair, usize> = cols.iter().enumerate().map(|(i, p)| (*p, i)).collect();

    // pivot column -> (row, combination over `rels`)
    let mut pivots: BTreeMap<usize, (Row, Row)> = BTreeMap::new();
    let reduce = |row: &mut Row, combo: &mut Row, pivots: &BTreeMap<usize, (Row, Row)>| {
        let mut col = 0;
        while let Some((&c, v)) = row.range(col..).next() {
            col = c + 1;
            let Some((prow, pcombo)) = pivots.get(&c) else { continue };
            let factor = v.checked_div(&prow[&c]).expect("pivot nonzero");
            for (k, x) in prow {
                let e = row.entry(*k).or_insert_with(Coefficient::zero);
                *e = &*e - &(&factor * x);
            }
            for (k, x) in pcombo {
                let e = combo.entry(*k).or_insert_with(Coefficient::zero);
                *e = &*e - &(&factor * x);
            }
            row.retain(|_, x| !x.is_zero());
            combo.retain(|_, x| !x.is_zero());
        }
    };
    for (idx, r) in rels.iter().enumerate() {
        let mut row: Row = r.terms().map(|(p, c)| (index[p], Coefficient::from(c.clone()))).collect();
        let mut combo: Row = [(idx, Coefficient::one())].into();
        reduce(&mut row, &mut combo, &pivots);
        if let Some((&lead, _)) = row.iter().next() {
            pivots.insert(lead, (row, combo));
        }
    }
    let mut target: Row = [(index[&(u, w)], Coefficient::one())].into();
    let mut combo = Row::new();
    reduce(&mut target, &mut combo, &pivots);
    if target.keys().any(|&c| energy_h(cols[c].0, cols[c].1) <= 0) {
        return None;
    }
    let mut result = WedgeVector::zero(2);
    for (c, x) in target {
        result.add_term(vec![cols[c].0, cols[c].1], &x);
    }
    // target - result = -(combo applied to rels)
    let combination = combo.into_iter().map(|(k, lam)| (rels[k].clone(), -lam)).collect();
    Some((result, combination))
}

/// Straightens `u ∧ w` by elimination, widening the window up to `max_widen`
/// times; the returned certificate is already verified.
pub fn slice_solve(u: AffLabel, w: AffLabel, max_widen: usize) -> Result<SliceSolution, WedgeError> {
    let (lo0, hi0) = (level_l(u).min(level_l(w)), level_l(u).max(level_l(w)));
    for k in 0..=max_widen {
        let window = (lo0 - k as i64, hi0 + k as i64);
        if let Some((result, combination)) = try_window(u, w, window.0, window.1) {
            let sol = SliceSolution { target: (u, w), result, window, widenings: k, combination };
            if !sol.verify() {
                return Err(WedgeError::Certificate(format!("{u}^{w}")));
            }
            return Ok(sol);
        }
    }
    Err(WedgeError::SliceSolveFailed { u, w, widenings: max_widen })
}

fn rank(rows: Vec<Row>) -> usize {
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for mut row in rows {
        let mut col = 0;
        while let Some((&c, v)) = row.range(col..).next() {
            col = c + 1;
            let Some(prow) = pivots.get(&c) else { continue };
            let factor = v.checked_div(&prow[&c]).expect("pivot nonzero");
            for (k, x) in prow {
                let e = row.entry(*k).or_insert_with(Coefficient::zero);
                *e = &*e - &(&factor * x);
            }
            row.retain(|_, x| !x.is_zero());
        }
        if let Some((&lead, _)) = row.iter().next() {
            pivots.insert(lead, row);
        }
    }
    pivots.len()
}

/// Ranks of the windowed relation matrix of a two-factor slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceRank {
    pub monomials: usize,
    pub normally_ordered: usize,
    pub relation_rank: usize,
    /// Rank after deleting the normally ordered columns.
    pub pivot_rank: usize,
}

impl SliceRank {
    /// No combination of relations is supported on normally ordered
    /// monomials alone, i.e. those monomials stay independent modulo `N`.
    pub fn independent(&self) -> bool {
        self.relation_rank == self.pivot_rank
    }

    /// Every non-normally-ordered monomial is eliminated.
    pub fn spanning(&self) -> bool {
        self.pivot_rank == self.monomials - self.normally_ordered
    }
}

/// Rank data for the slice with `a + c = s`, `i + j = t` inside `window`.
pub fn slice_rank(s: i64, t: u8, window: (i64, i64)) -> SliceRank {
    let (lo, hi) = window;
    let rels = relations_in_window(s, t, lo, hi);
    let mut cols: Vec<Pair> = Vec::new();
    for i in 0..=2u8 {
        let Some(j) = t.checked_sub(i).filter(|j| *j <= 2) else { continue };
        for a in (lo - 2)..=(hi + 2) {
            let (u, w) = (AffLabel::new(a, i), AffLabel::new(s - a, j));
            let (lu, lw) = (level_l(u), level_l(w));
            if lo <= lu && lu <= hi && lo <= lw && lw <= hi {
                cols.push((u, w));
            }
        }
    }
    cols.sort_by_key(|(x, y)| (energy_h(*x, *y) > 0, -level_l(*x), x.j, *y));
    let index: BTreeMap<Pair, usize> = cols.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let rows: Vec<Row> =
        rels.iter().map(|r| r.terms().map(|(p, c)| (index[p], Coefficient::from(c.clone()))).collect()).collect();
    let nno: Vec<Row> = rows
        .iter()
        .map(|r| {
            r.iter().filter(|(c, _)| energy_h(cols[**c].0, cols[**c].1) <= 0).map(|(c, x)| (*c, x.clone())).collect()
        })
        .collect();
    SliceRank {
        monomials: cols.len(),
        normally_ordered: cols.iter().filter(|(x, y)| energy_h(*x, *y) > 0).count(),
        relation_rank: rank(rows),
        pivot_rank: rank(nno),
    }
}

/// Normally ordered `n`-wedges with every factor's `l` in `window` and the
/// given total weight.
pub fn slice_basis(n: usize, weight: Weight, window: (i64, i64)) -> Vec<Vec<AffLabel>> {
    let (lo, hi) = window;
    // The weight fixes Σa and Σj, hence the total l.
    if weight.c1.rem_euclid(2) != 0 {
        return Vec::new();
    }
    let target_l = 2 * weight.d - (n as i64 - weight.c1 / 2);
    let labels: Vec<AffLabel> = (lo..=hi)
        .flat_map(|l| {
            (0..=2u8)
                .filter(move |j| (l + *j as i64).rem_euclid(2) == 0)
                .map(move |j| AffLabel::new((l + j as i64) / 2, j))
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let ctx = BasisCtx { labels: &labels, n, target: weight, target_l, lo, hi };
    ctx.dfs(Weight::default(), 0, &mut cur, &mut out);
    out
}

struct BasisCtx<'a> {
    labels: &'a [AffLabel],
    n: usize,
    target: Weight,
    target_l: i64,
    lo: i64,
    hi: i64,
}

impl BasisCtx<'_> {
    fn dfs(&self, acc: Weight, acc_l: i64, cur: &mut Vec<AffLabel>, out: &mut Vec<Vec<AffLabel>>) {
        if cur.len() == self.n {
            if acc == self.target {
                out.push(cur.clone());
            }
            return;
        }
        for b in self.labels {
            if cur.last().is_some_and(|prev| energy_h(*prev, *b) <= 0) {
                continue;
            }
            let l = acc_l + level_l(*b);
            let rest = (self.n - cur.len() - 1) as i64;
            if l + rest * self.lo > self.target_l || l + rest * self.hi < self.target_l {
                continue;
            }
            cur.push(*b);
            self.dfs(acc + crate::affinization::global_wt(*b), l, cur, out);
            cur.pop();
        }
    }
}
