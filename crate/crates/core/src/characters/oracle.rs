//! Weight multiplicities of level-2 integrable highest-weight modules of
//! affine sl2 by the Freudenthal recursion, truncated in δ-depth.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{CharacterError, MultTable};
use crate::affinization::{simple_root, Weight};
use crate::crystal::Node;
use crate::qfield::Rat;

/// Twice the normalized invariant form, so everything stays integral:
/// `(Λ0|Λ0) = 0`, `(Λ1|Λ1) = 1/2`, `(Λ0|Λ1) = 0`, `(Λi|δ) = 1`, `(δ|δ) = 0`.
pub fn form2(x: Weight, y: Weight) -> i64 {
    x.c1 * y.c1 + 2 * x.level() * y.d + 2 * y.level() * x.d
}

const RHO: Weight = Weight::new(1, 1, 0);

fn delta(n: i64) -> Weight {
    Weight::new(0, 0, n)
}

/// Positive roots `α` with depth `n ≤ max_n`, paired with `(n, s-shift)` so
/// that `μ + kα` sits at depth `d - kn` and offset `s + k·shift`.
fn positive_roots(max_n: i64) -> Vec<(Weight, i64, i64)> {
    let a1 = simple_root(Node::One);
    let mut out = vec![(a1, 0, 1)];
    for n in 1..=max_n {
        out.push((a1 + delta(n), n, 1));
        out.push((delta(n) - a1, n, -1));
        out.push((delta(n), n, 0));
    }
    out
}

/// Multiplicities of `V(λ)` on the cells `λ + s α1 - d δ`, `d ≤ depth`.
pub fn oracle_irr_character(lambda: Weight, depth: usize) -> Result<MultTable, CharacterError> {
    if lambda.level() != 2 || lambda.c0 < 0 || lambda.c1 < 0 {
        return Err(CharacterError::BadHighestWeight(lambda));
    }
    let roots = positive_roots(depth as i64);
    let lr = form2(lambda + RHO, lambda + RHO);
    let mut mult: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let get = |mult: &BTreeMap<(i64, i64), i64>, d: i64, s: i64| mult.get(&(d, s)).copied().unwrap_or(0);
    let mut table = MultTable::new(lambda, depth);
    for d in 0..=depth as i64 {
        // (μ|μ) ≤ (λ|λ) bounds the offsets: 2s² + 2s·c1 ≤ 4d.
        let (lo, hi) = offset_range(lambda.c1, d);
        for s in (lo..=hi).rev() {
            // μ = λ - dα0 - (d - s)α1 needs d - s ≥ 0.
            if d - s < 0 {
                continue;
            }
            let mu = lambda + Weight::new(-2 * s, 2 * s, -d);
            if d == 0 && s == 0 {
                mult.insert((0, 0), 1);
                table.add(0, 0, 1);
                continue;
            }
            let mut rhs = 0i64;
            for (alpha, n, shift) in &roots {
                let mut k = 1;
                loop {
                    let (dk, sk) = (d - k * n, s + k * shift);
                    if dk < 0 || dk - sk < 0 || (*n == 0 && sk > hi) {
                        break;
                    }
                    let m = get(&mult, dk, sk);
                    if m != 0 {
                        let nu = mu + Weight::new(k * alpha.c0, k * alpha.c1, k * alpha.d);
                        rhs += form2(nu, *alpha) * m;
                    }
                    if *n == 0 && k > 4 * (depth as i64 + 2) {
                        break;
                    }
                    k += 1;
                }
            }
            let lhs = lr - form2(mu + RHO, mu + RHO);
            if lhs == 0 {
                if rhs != 0 {
                    return Err(CharacterError::Freudenthal { depth: d, offset: s, detail: "zero norm gap".into() });
                }
                continue;
            }
            let val = Rat::new((2 * rhs).into(), lhs.into());
            if !val.is_integer() || val < Rat::zero() {
                return Err(CharacterError::Freudenthal { depth: d, offset: s, detail: format!("value {val}") });
            }
            let v: i64 = val.to_integer().try_into().expect("small");
            if v != 0 {
                mult.insert((d, s), v);
                table.add(d as usize, s, v as u64);
            }
        }
    }
    Ok(table)
}

/// Offsets `s` with `2s² + 2s·c1 ≤ 4d`.
pub(crate) fn offset_range(c1: i64, d: i64) -> (i64, i64) {
    let ok = |s: i64| 2 * s * s + 2 * s * c1 <= 4 * d;
    let mut lo = 0;
    while ok(lo - 1) {
        lo -= 1;
    }
    let mut hi = 0;
    while ok(hi + 1) {
        hi += 1;
    }
    (lo, hi)
}

/// Partition numbers `p(0..=n)`.
pub fn boson_partition_character(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}
