use super::{CharacterError, MultTable};
use crate::affinization::{AffLabel, Weight};
use crate::fock::GroundSeq;

/// Counts normally ordered semi-infinite sequences of `F_m` by weight cell.
///
/// Positions are filled right to left starting at `support - 1`, with the
/// ground state beyond. At position `p` the normal-ordering constraint gives
/// `a_p ≤ a_{p+1} + min(j_p, 2 - j_{p+1}) - 1`, and the depth spent at `p`
/// is `a°_p - a_p ≥ 0`, so the remaining budget prunes the search.
pub fn enum_wedges_with_support(
    m: i64,
    seq: GroundSeq,
    depth: usize,
    support: usize,
) -> Result<MultTable, CharacterError> {
    let mut table = MultTable::new(seq.lambda(m), depth);
    let mut walker = Walker { m, seq, depth: depth as i64, table: &mut table };
    let start = seq.ground(m + support as i64);
    walker.fill(support as i64 - 1, start, 0, 0)?;
    Ok(table)
}

/// [`enum_wedges_with_support`] with support `2D + 2`; a sequence that
/// differs from the ground state at position `P` costs depth at least about
/// `(P + 1) / 2`, which the tests re-check by enlarging the support.
pub fn enum_wedges(m: i64, seq: GroundSeq, depth: usize) -> Result<MultTable, CharacterError> {
    enum_wedges_with_support(m, seq, depth, 2 * depth + 2)
}

struct Walker<'a> {
    m: i64,
    seq: GroundSeq,
    depth: i64,
    table: &'a mut MultTable,
}

impl Walker<'_> {
    fn fill(&mut self, p: i64, next: AffLabel, used: i64, s: i64) -> Result<(), CharacterError> {
        if p < 0 {
            self.table.add(used as usize, s, 1);
            return Ok(());
        }
        let ground = self.seq.ground(self.m + p);
        for j in 0..=2u8 {
            let hi = next.a + (j as i64).min(2 - next.j as i64) - 1;
            if hi > ground.a {
                return Err(CharacterError::PositiveDepthStep { position: p, bound: hi, ground });
            }
            let lo = ground.a - (self.depth - used);
            for a in lo..=hi {
                let spent = ground.a - a;
                self.fill(p - 1, AffLabel::new(a, j), used + spent, s + ground.j as i64 - j as i64)?;
            }
        }
        Ok(())
    }
}

/// Weight of the cell `(depth, s)` relative to `λ`: `λ + s α1 - depth δ`.
pub fn cell_weight(lambda: Weight, depth: usize, s: i64) -> Weight {
    lambda + Weight::new(-2 * s, 2 * s, -(depth as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_and_one_for_b() {
        let t = enum_wedges(0, GroundSeq::B, 1).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 0), 3);
    }

    #[test]
    fn support_is_large_enough() {
        for seq in GroundSeq::ALL {
            for m in [0, 1] {
                for d in 0..=4 {
                    let base = enum_wedges(m, seq, d).unwrap();
                    let wide = enum_wedges_with_support(m, seq, d, 2 * d + 6).unwrap();
                    assert_eq!(base, wide, "{seq} m={m} D={d}");
                }
            }
        }
    }

    #[test]
    fn mirror_symmetry() {
        for (seq, m) in [(GroundSeq::B, 0), (GroundSeq::A, 0), (GroundSeq::A, 1)] {
            let t = enum_wedges(m, seq, 5).unwrap();
            let c1 = seq.lambda(m).c1;
            for ((d, s), v) in t.cells() {
                assert_eq!(t.get(d, -c1 - s), v, "{seq} m={m} cell ({d},{s})");
            }
        }
    }
}
