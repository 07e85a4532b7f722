//! The level-2 Fock spaces `F_m` modulo `q^N`.
//!
//! A vector is stored as finitely many normally ordered prefixes in front of
//! the shifted vacuum `vac_{m+L} = b°_{m+L} ∧ b°_{m+L+1} ∧ ...`. Operators
//! that act on every tensor site are summed site by site until the deep
//! contributions vanish modulo the working precision.

mod action;
mod ground;
mod vector;

use thiserror::Error;

use crate::affinization::{energy_h, AffLabel};
use crate::qfield::Coefficient;
use crate::wedge::{WedgeError, WedgeVector};

pub use action::uq_apply_fock;
pub(crate) use action::{apply_site_sum, SiteOp};
pub use ground::GroundSeq;
pub use vector::{wedge_front, FockVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("prefix grew to {prefix_len} factors, beyond the frontier cap {cap}")]
    FrontierCap { prefix_len: usize, cap: usize },
    #[error("operator needs {lost} powers of q but only {have} are known")]
    PrecisionExhausted { have: usize, lost: usize },
    #[error("vectors live in different spaces: {left:?} vs {right:?}")]
    Incompatible { left: (i64, GroundSeq), right: (i64, GroundSeq) },
    #[error("wedge coefficients must be Laurent polynomials")]
    NonLaurent,
    #[error(transparent)]
    Wedge(#[from] WedgeError),
}

#[derive(Clone, Debug)]
pub struct FockConfig {
    /// Frontier cap in ground periods: the longest explicit prefix allowed
    /// while normalizing or summing sites is this many periods.
    pub frontier_periods: usize,
    /// Rewrite budget for each straightening pass.
    pub fuel: u64,
}

impl FockConfig {
    pub fn max_prefix(&self, seq: GroundSeq) -> usize {
        self.frontier_periods * seq.period()
    }
}

impl Default for FockConfig {
    fn default() -> Self {
        Self { frontier_periods: 64, fuel: 1_000_000 }
    }
}

/// `b ∧ vac_{m+1}` for every `b` with `l` in `window` and `H(b ⊗ b°_{m+1}) ≤ 0`,
/// paired with whether it vanishes modulo `q^precision`.
pub fn annihilation_check(
    seq: GroundSeq,
    m: i64,
    window: (i64, i64),
    precision: usize,
    cfg: &FockConfig,
) -> Result<Vec<(AffLabel, bool)>, FockError> {
    let vac = FockVector::vacuum(m + 1, seq, precision);
    let mut out = Vec::new();
    for l in window.0..=window.1 {
        for j in 0..=2u8 {
            if (l + j as i64).rem_euclid(2) != 0 {
                continue;
            }
            let b = AffLabel::new((l + j as i64) / 2, j);
            if energy_h(b, seq.ground(m + 1)) > 0 {
                continue;
            }
            let v = WedgeVector::pure(vec![b], Coefficient::one());
            out.push((b, wedge_front(&v, &vac, cfg)?.is_zero()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affinization::{simple_root, Generator};
    use crate::crystal::Node;
    use crate::qfield::LaurentPoly;

    fn l(s: &str) -> AffLabel {
        s.parse().unwrap()
    }

    fn act(g: &str, f: &FockVector) -> FockVector {
        uq_apply_fock(g.parse().unwrap(), f, &FockConfig::default()).unwrap()
    }

    #[test]
    fn annihilation_on_window() {
        for seq in GroundSeq::ALL {
            for m in [0, 1] {
                let rows = annihilation_check(seq, m, (-4, 4), 20, &FockConfig::default()).unwrap();
                assert!(!rows.is_empty());
                for (b, zero) in rows {
                    assert!(zero, "{b} ^ vac_{} ({seq})", m + 1);
                }
            }
        }
    }

    #[test]
    fn worked_vacuum_identities_b() {
        let n = 20;
        let vac = FockVector::vacuum(0, GroundSeq::B, n + 4);
        let t1 = act("t1", &vac);
        assert_eq!(t1.vacuum_scalar(), Some(LaurentPoly::q_pow(1)));
        assert!(act("e1", &vac).is_zero());
        let f1 = act("f1", &vac);
        assert!(f1.precision() >= n);
        assert_eq!(f1.len(), 1);
        assert_eq!(f1.coeff(&[l("v2")]), LaurentPoly::one());
        assert_eq!(f1.weight(), Some(vac.weight().unwrap() - simple_root(Node::One)));
    }

    fn commutator_identity(f: &FockVector, i: Node) -> (FockVector, FockVector) {
        let cfg = FockConfig::default();
        let ef = uq_apply_fock(Generator::E(i), &uq_apply_fock(Generator::F(i), f, &cfg).unwrap(), &cfg).unwrap();
        let fe = uq_apply_fock(Generator::F(i), &uq_apply_fock(Generator::E(i), f, &cfg).unwrap(), &cfg).unwrap();
        let lhs = ef.sub(&fe).unwrap().scale(&LaurentPoly::from_ints(&[(0, -1), (2, 1)]));
        // (t - t⁻¹)/(q - q⁻¹) multiplied by q - q⁻¹, then by q to stay in ℤ[q]:
        let t = uq_apply_fock(Generator::T(i), f, &cfg).unwrap();
        let ti = uq_apply_fock(Generator::TInv(i), f, &cfg).unwrap();
        let rhs = t.sub(&ti).unwrap().scale(&LaurentPoly::q_pow(1));
        let lhs = lhs.truncated(rhs.precision());
        (lhs.truncated(lhs.precision().min(rhs.precision())), rhs.truncated(lhs.precision().min(rhs.precision())))
    }

    #[test]
    fn ef_commutator_on_vacua() {
        for seq in GroundSeq::ALL {
            for i in Node::ALL {
                let vac = FockVector::vacuum(0, seq, 16);
                let (lhs, rhs) = commutator_identity(&vac, i);
                assert!(lhs.precision() >= 8);
                assert_eq!(lhs, rhs, "{seq} node {i:?}");
            }
        }
    }

    #[test]
    fn precision_coherence() {
        let hi = act("f0", &act("f1", &FockVector::vacuum(0, GroundSeq::B, 18)));
        let lo = act("f0", &act("f1", &FockVector::vacuum(0, GroundSeq::B, 12)));
        assert_eq!(hi.truncated(lo.precision()), lo);
    }

    #[test]
    fn normal_form_is_stable_under_extension() {
        let cfg = FockConfig::default();
        for seq in GroundSeq::ALL {
            let f = act("f1", &act("f0", &FockVector::vacuum(0, seq, 14)));
            for extra in 1..=2 {
                let ext = extra * seq.period();
                let raw = f.terms().map(|(k, c)| {
                    let mut k = k.clone();
                    k.extend(seq.ground_run(k.len() as i64, ext));
                    (k, c.clone())
                });
                let again = FockVector::from_prefixes(0, seq, f.precision(), raw, &cfg).unwrap();
                assert_eq!(again, f);
            }
        }
    }
}
