//! Characters of the Fock space `F_m`: enumeration of normally ordered
//! semi-infinite wedges by weight, the irreducible-character oracle, and the
//! factorization of the Fock character into `ch V(λ_m)` times the boson
//! partition function.
//!
//! Weights are indexed by cells `(d, s)` meaning `λ_m + s α1 - d δ`.

mod enumerate;
mod oracle;
mod span;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::affinization::{AffLabel, Weight};
use crate::boson::BosonError;
use crate::fock::{FockError, GroundSeq};

pub use enumerate::{cell_weight, enum_wedges, enum_wedges_with_support};
pub use oracle::{boson_partition_character, form2, oracle_irr_character};
pub use span::{hw_span_check, slice_count_check, HwSpanReport, SpanCell};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("normal ordering allows a_{position} = {bound} above the ground value {ground}")]
    PositiveDepthStep { position: i64, bound: i64, ground: AffLabel },
    #[error("{0} is not a dominant level-2 weight")]
    BadHighestWeight(Weight),
    #[error("Freudenthal recursion failed at depth {depth}, offset {offset}: {detail}")]
    Freudenthal { depth: i64, offset: i64, detail: String },
    #[error("depth {0} exceeds the span-check limit of 3")]
    DepthTooLarge(usize),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Boson(#[from] BosonError),
}

/// Multiplicities on the cells `(d, s)` for `d ≤ depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    lambda: Weight,
    depth: usize,
    cells: BTreeMap<(usize, i64), u64>,
}

impl MultTable {
    pub fn new(lambda: Weight, depth: usize) -> Self {
        Self { lambda, depth, cells: BTreeMap::new() }
    }

    pub fn lambda(&self) -> Weight {
        self.lambda
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn add(&mut self, depth: usize, s: i64, count: u64) {
        if count > 0 {
            *self.cells.entry((depth, s)).or_insert(0) += count;
        }
    }

    pub fn get(&self, depth: usize, s: i64) -> u64 {
        self.cells.get(&(depth, s)).copied().unwrap_or(0)
    }

    /// Sum over offsets at one depth.
    pub fn total(&self, depth: usize) -> u64 {
        self.cells.range((depth, i64::MIN)..=(depth, i64::MAX)).map(|(_, v)| v).sum()
    }

    /// Nonzero cells in `(d, s)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, i64), u64)> + '_ {
        self.cells.iter().map(|(&k, &v)| (k, v))
    }

    fn offset_span(&self) -> Option<(i64, i64)> {
        let lo = self.cells.keys().map(|k| k.1).min()?;
        let hi = self.cells.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Text table: one row per depth, one column per offset.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let Some((lo, hi)) = self.offset_span() else {
            return "(empty)\n".into();
        };
        let _ = write!(out, "{:>5} |", "d\\s");
        for s in lo..=hi {
            let _ = write!(out, "{s:>6}");
        }
        out.push('\n');
        out.push_str(&"-".repeat(7 + 6 * (hi - lo + 1) as usize));
        out.push('\n');
        for d in 0..=self.depth {
            let _ = write!(out, "{d:>5} |");
            for s in lo..=hi {
                let _ = write!(out, "{:>6}", self.get(d, s));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MultTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize)]
struct CellJson {
    depth: usize,
    offset: i64,
    weight: Weight,
    mult: u64,
}

impl Serialize for MultTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cells: Vec<CellJson> = self
            .cells()
            .map(|((d, off), mult)| CellJson { depth: d, offset: off, weight: cell_weight(self.lambda, d, off), mult })
            .collect();
        let mut st = s.serialize_struct("MultTable", 3)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("depth", &self.depth)?;
        st.serialize_field("cells", &cells)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub depth: usize,
    pub offset: i64,
    pub fock: u64,
    pub predicted: u64,
}

/// Cell-by-cell comparison of the Fock table with `ch V(λ_m) · Π 1/(1 - e^{-nδ})`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterReport {
    pub m: i64,
    pub seq: GroundSeq,
    pub depth: usize,
    pub lambda: Weight,
    pub fock: MultTable,
    pub oracle: MultTable,
    pub predicted: MultTable,
    pub mismatches: Vec<CellMismatch>,
    pub passed: bool,
}

impl CharacterReport {
    /// Fock table, oracle table, and the per-cell check.
    pub fn render(&self) -> String {
        let mut out = format!("sector m={} seq={} lambda={} depth<={}\n", self.m, self.seq, self.lambda, self.depth);
        out.push_str("\nFock multiplicities:\n");
        out.push_str(&self.fock.render());
        out.push_str("\nirreducible multiplicities:\n");
        out.push_str(&self.oracle.render());
        out.push_str("\nconvolution check:\n");
        let keys: std::collections::BTreeSet<(usize, i64)> =
            self.fock.cells().chain(self.predicted.cells()).map(|(k, _)| k).collect();
        for (d, s) in keys {
            let (a, b) = (self.fock.get(d, s), self.predicted.get(d, s));
            let tag = if a == b { "ok" } else { "MISMATCH" };
            let _ = writeln!(out, "  d={d} s={s:>3}: fock={a:>5} predicted={b:>5} {tag}");
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

/// `Σ_e p(e) · mult_V(d - e, s)`.
pub fn convolve(oracle: &MultTable) -> MultTable {
    let p = boson_partition_character(oracle.depth());
    let mut out = MultTable::new(oracle.lambda(), oracle.depth());
    for ((d, s), v) in oracle.cells() {
        for (e, pe) in p.iter().enumerate().take(oracle.depth() - d + 1) {
            out.add(d + e, s, v * pe);
        }
    }
    out
}

/// Checks that the enumerated Fock character factors as the irreducible
/// character of `λ_m` times the boson partition function, up to depth `depth`.
pub fn verify_character(m: i64, seq: GroundSeq, depth: usize) -> Result<CharacterReport, CharacterError> {
    let lambda = seq.lambda(m);
    let fock = enum_wedges(m, seq, depth)?;
    let oracle = oracle_irr_character(lambda, depth)?;
    let predicted = convolve(&oracle);
    let keys: std::collections::BTreeSet<(usize, i64)> =
        fock.cells().chain(predicted.cells()).map(|(k, _)| k).collect();
    let mismatches: Vec<CellMismatch> = keys
        .into_iter()
        .map(|(d, s)| CellMismatch { depth: d, offset: s, fock: fock.get(d, s), predicted: predicted.get(d, s) })
        .filter(|c| c.fock != c.predicted)
        .collect();
    let passed = mismatches.is_empty();
    Ok(CharacterReport { m, seq, depth, lambda, fock, oracle, predicted, mismatches, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_small_depth() {
        for (seq, m) in [(GroundSeq::B, 0), (GroundSeq::A, 0), (GroundSeq::A, 1)] {
            let r = verify_character(m, seq, 4).unwrap();
            assert!(r.passed, "{seq} m={m}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn b_depth_one_fixture() {
        let r = verify_character(0, GroundSeq::B, 1).unwrap();
        assert_eq!(r.fock.get(1, 0), 3);
        assert_eq!(r.oracle.get(1, 0), 2);
    }

    #[test]
    fn two_lambda_one_string() {
        let t = oracle_irr_character(Weight::new(0, 2, 0), 3).unwrap();
        assert_eq!(t.get(0, -1), 1);
    }

    #[test]
    fn render_and_json() {
        let r = verify_character(0, GroundSeq::B, 2).unwrap();
        assert!(r.render().contains("PASS"));
        let v = serde_json::to_value(&r.fock).unwrap();
        assert_eq!(v["cells"][0]["mult"], 1);
    }
}
