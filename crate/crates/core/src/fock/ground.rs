use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affinization::{global_wt, AffLabel, Weight};

/// The two ground-state sequences of the level-2 perfect crystal.
///
/// - `A`: `b°_m = z b2` for even `m`, `b0` for odd `m`
/// - `B`: `b°_m = b1` for all `m`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroundSeq {
    A,
    B,
}

impl GroundSeq {
    pub const ALL: [GroundSeq; 2] = [GroundSeq::A, GroundSeq::B];

    pub fn period(self) -> usize {
        match self {
            GroundSeq::A => 2,
            GroundSeq::B => 1,
        }
    }

    pub fn ground(self, m: i64) -> AffLabel {
        match self {
            GroundSeq::A if m.rem_euclid(2) == 0 => AffLabel::new(1, 2),
            GroundSeq::A => AffLabel::new(0, 0),
            GroundSeq::B => AffLabel::new(0, 1),
        }
    }

    /// Weight of `vac_m`, normalized so that `λ_m = wt(b°_m) + λ_{m+1}`
    /// holds exactly. For `A` this is `2Λ0 + δ` at `m = 0` and `2Λ1` at
    /// `m = 1`, drifting by `-δ` per period.
    pub fn lambda(self, m: i64) -> Weight {
        match self {
            GroundSeq::A => {
                let k = m.div_euclid(2);
                if m.rem_euclid(2) == 0 {
                    Weight::new(2, 0, 1 - k)
                } else {
                    Weight::new(0, 2, -k)
                }
            }
            GroundSeq::B => Weight::new(1, 1, 0),
        }
    }

    /// `b°_m, ..., b°_{m+len-1}`.
    pub fn ground_run(self, m: i64, len: usize) -> impl Iterator<Item = AffLabel> {
        (0..len as i64).map(move |r| self.ground(m + r))
    }

    /// Checks `λ_m = wt(b°_m) + λ_{m+1}` on `lo..hi`.
    pub fn lambda_recursion_holds(self, lo: i64, hi: i64) -> bool {
        (lo..hi).all(|m| self.lambda(m) == global_wt(self.ground(m)) + self.lambda(m + 1))
    }
}

impl fmt::Display for GroundSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundSeq::A => "A",
            GroundSeq::B => "B",
        })
    }
}

impl FromStr for GroundSeq {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(GroundSeq::A),
            "B" | "b" => Ok(GroundSeq::B),
            other => Err(format!("unknown ground sequence {other:?}; expected A or B")),
        }
    }
}
