use std::cmp::Reverse;
use std::collections::BTreeMap;

use serde::Serialize;

use super::{cell_weight, enum_wedges, CharacterError};
use crate::affinization::{global_wt, AffLabel, Generator};
use crate::boson::boson_apply;
use crate::crystal::Node;
use crate::fock::{uq_apply_fock, FockConfig, FockVector, GroundSeq};
use crate::qfield::{LaurentPoly, TruncSeries};
use crate::wedge::slice_basis;

/// Rank and enumerated dimension of one weight cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCell {
    pub depth: usize,
    pub offset: i64,
    pub fock_dim: u64,
    pub rank: usize,
    /// Rank recomputed with four more powers of `q`.
    pub rank_refined: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HwSpanReport {
    pub m: i64,
    pub seq: GroundSeq,
    pub depth: usize,
    pub precision: usize,
    /// `e_0, e_1` and `B_1..B_D` (at least `B_1`) kill the vacuum.
    pub highest_weight: bool,
    pub cells: Vec<SpanCell>,
    pub passed: bool,
}

/// Applies words in `f0, f1, B_{-1}, ..., B_{-D}` of δ-depth at most `depth`
/// to `vac_m` modulo `q^n`, and compares the rank in each weight cell with the
/// number of normally ordered wedges there.
pub fn hw_span_check(
    m: i64,
    seq: GroundSeq,
    depth: usize,
    n: usize,
    cfg: &FockConfig,
) -> Result<HwSpanReport, CharacterError> {
    if depth > 3 {
        return Err(CharacterError::DepthTooLarge(depth));
    }
    let vac = FockVector::vacuum(m, seq, n);
    let mut highest_weight = true;
    for i in [Node::Zero, Node::One] {
        highest_weight &= uq_apply_fock(Generator::E(i), &vac, cfg)?.is_zero();
    }
    for a in 1..=depth.max(1) as i64 {
        highest_weight &= boson_apply(a, &vac, cfg)?.is_zero();
    }
    let coarse = span_ranks(m, seq, depth, n, cfg)?;
    let fine = span_ranks(m, seq, depth, n + 4, cfg)?;
    let fock = enum_wedges(m, seq, depth)?;
    let mut keys: Vec<(usize, i64)> =
        fock.cells().map(|(k, _)| k).chain(coarse.keys().copied()).chain(fine.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let cells: Vec<SpanCell> = keys
        .into_iter()
        .map(|(d, s)| SpanCell {
            depth: d,
            offset: s,
            fock_dim: fock.get(d, s),
            rank: coarse.get(&(d, s)).copied().unwrap_or(0),
            rank_refined: fine.get(&(d, s)).copied().unwrap_or(0),
        })
        .collect();
    let passed = highest_weight && cells.iter().all(|c| c.rank as u64 == c.fock_dim && c.rank == c.rank_refined);
    Ok(HwSpanReport { m, seq, depth, precision: n, highest_weight, cells, passed })
}

fn span_ranks(
    m: i64,
    seq: GroundSeq,
    depth: usize,
    n: usize,
    cfg: &FockConfig,
) -> Result<BTreeMap<(usize, i64), usize>, CharacterError> {
    let mut pending: BTreeMap<(usize, Reverse<i64>), Vec<FockVector>> = BTreeMap::new();
    pending.insert((0, Reverse(0)), vec![FockVector::vacuum(m, seq, n)]);
    let mut ranks = BTreeMap::new();
    while let Some(((d, Reverse(s)), cands)) = pending.pop_first() {
        let chosen: Vec<FockVector> = independent_rows(&cands).into_iter().map(|i| cands[i].clone()).collect();
        ranks.insert((d, s), chosen.len());
        for v in &chosen {
            let mut push = |d2: usize, s2: i64, w: FockVector| {
                if d2 <= depth && !w.is_zero() {
                    pending.entry((d2, Reverse(s2))).or_default().push(w);
                }
            };
            push(d, s - 1, uq_apply_fock(Generator::F(Node::One), v, cfg)?);
            if d < depth {
                push(d + 1, s + 1, uq_apply_fock(Generator::F(Node::Zero), v, cfg)?);
            }
            for a in 1..=(depth - d) {
                push(d + a, s, boson_apply(-(a as i64), v, cfg)?);
            }
        }
    }
    Ok(ranks)
}

struct Row {
    prec: i64,
    entries: BTreeMap<Vec<AffLabel>, LaurentPoly>,
}

impl Row {
    fn min_entry(&self) -> Option<(i64, &Vec<AffLabel>)> {
        self.entries.iter().filter_map(|(k, c)| c.valuation().map(|v| (v, k))).min()
    }
}

/// Indices of a maximal independent subset, for vectors whose coefficients
/// are Laurent series known modulo `q^{precision}`. Pivots are chosen with
/// minimal valuation so no row loses absolute precision.
fn independent_rows(vs: &[FockVector]) -> Vec<usize> {
    let mut rows: Vec<Row> = vs
        .iter()
        .map(|v| Row { prec: v.precision() as i64, entries: v.terms().map(|(k, c)| (k.clone(), c.clone())).collect() })
        .collect();
    let mut live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].entries.is_empty()).collect();
    let mut pivots = Vec::new();
    loop {
        let best = live.iter().filter_map(|&i| rows[i].min_entry().map(|(v, k)| (v, i, k.clone()))).min();
        let Some((v, p, key)) = best else { break };
        live.retain(|&i| i != p);
        pivots.push(p);
        let pivot = std::mem::replace(&mut rows[p], Row { prec: 0, entries: BTreeMap::new() });
        let cp = &pivot.entries[&key];
        for &r in &live {
            let Some(cr) = rows[r].entries.get(&key).cloned() else { continue };
            let prec = rows[r].prec.min(pivot.prec);
            let unit = TruncSeries::from_laurent(&cp.shift(-v), (pivot.prec - v) as usize)
                .and_then(|u| u.inv_unit())
                .expect("pivot has minimal valuation")
                .to_laurent();
            let factor = cr.shift(-v).mul_truncated(&unit, prec - v);
            let row = &mut rows[r];
            row.prec = prec;
            for (k, c) in &pivot.entries {
                let e = row.entries.entry(k.clone()).or_default();
                *e -= &factor.mul_truncated(c, prec);
            }
            for c in row.entries.values_mut() {
                c.truncate(prec);
            }
            row.entries.retain(|_, c| !c.is_zero());
        }
        rows[p] = pivot;
        live.retain(|&i| !rows[i].entries.is_empty());
    }
    pivots.sort();
    pivots
}

/// Recounts the cells of depth at most `depth` (at most 2) by listing
/// normally ordered prefixes of length `2·depth + 2` with [`slice_basis`] and
/// keeping those that join the ground state; returns mismatching cells as
/// `(d, s, enumerated, recounted)`.
pub fn slice_count_check(m: i64, seq: GroundSeq, depth: usize) -> Result<Vec<(usize, i64, u64, u64)>, CharacterError> {
    let fock = enum_wedges(m, seq, depth)?;
    let len = 2 * depth + 2;
    let tail = seq.ground(m + len as i64);
    let lambda = seq.lambda(m);
    let rest = seq.lambda(m + len as i64);
    let window = (-(len as i64), 2);
    let mut bad = Vec::new();
    let mut offsets: Vec<i64> = fock.cells().map(|(k, _)| k.1).collect();
    offsets.sort();
    offsets.dedup();
    let (lo, hi) = (offsets.first().copied().unwrap_or(0) - 1, offsets.last().copied().unwrap_or(0) + 1);
    for d in 0..=depth {
        for s in lo..=hi {
            let target = cell_weight(lambda, d, s) - rest;
            let count = slice_basis(len, target, window)
                .into_iter()
                .filter(|w| crate::affinization::normally_ordered(*w.last().expect("nonempty"), tail))
                .inspect(|w| {
                    debug_assert_eq!(w.iter().map(|b| global_wt(*b)).sum::<crate::affinization::Weight>(), target)
                })
                .count() as u64;
            if count != fock.get(d, s) {
                bad.push((d, s, fock.get(d, s), count));
            }
        }
    }
    Ok(bad)
}
