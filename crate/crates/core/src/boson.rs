//! The boson operators `B_a = Σ_r 1^{⊗r} ⊗ z^a ⊗ 1^{⊗∞}` and the
//! Heisenberg commutators `[B_a, B_{a'}]` on the vacuum.

use serde::Serialize;
use thiserror::Error;

use crate::fock::{apply_site_sum, FockConfig, FockError, FockVector, GroundSeq, SiteOp};
use crate::qfield::{Coefficient, LaurentPoly, TruncSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BosonError {
    #[error("boson index must be nonzero")]
    ZeroIndex,
    #[error("commutator is not a multiple of the vacuum: {0}")]
    NotScalar(String),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// `B_a f`, summed over sites to the adaptive depth.
pub fn boson_apply(a: i64, f: &FockVector, cfg: &FockConfig) -> Result<FockVector, BosonError> {
    if a == 0 {
        return Err(BosonError::ZeroIndex);
    }
    Ok(apply_site_sum(f, SiteOp::Z(a), cfg)?)
}

/// `(B_a B_{a'} - B_{a'} B_a) vac_m` modulo `q^n`, which must be a scalar
/// multiple of the vacuum; returns that scalar.
pub fn commutator_vac(
    a: i64,
    a2: i64,
    m: i64,
    seq: GroundSeq,
    n: usize,
    cfg: &FockConfig,
) -> Result<TruncSeries, BosonError> {
    let vac = FockVector::vacuum(m, seq, n);
    let ab = boson_apply(a, &boson_apply(a2, &vac, cfg)?, cfg)?;
    let ba = boson_apply(a2, &boson_apply(a, &vac, cfg)?, cfg)?;
    let c = ab.sub(&ba)?;
    let scalar = c.vacuum_scalar().ok_or_else(|| BosonError::NotScalar(c.render()))?;
    TruncSeries::from_laurent(&scalar, n).map_err(|_| BosonError::NotScalar(c.render()))
}

/// `a / (1 - q^{2a})` expanded modulo `q^n`.
pub fn gamma_closed_form(a: i64, n: usize) -> TruncSeries {
    let den = LaurentPoly::from_ints(&[(0, 1), (2 * a, -1)]);
    Coefficient::new(LaurentPoly::from_int(a), den).and_then(|c| c.series_expand(n)).expect("regular at q = 0")
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub a: i64,
    pub seq: GroundSeq,
    pub precision: usize,
    pub measured: TruncSeries,
    /// The closed form, compared in full only for sequence `B`.
    pub expected: Option<TruncSeries>,
    pub passed: bool,
}

/// Checks `γ_a` against `a/(1-q^{2a})` for `B`, and only its constant term
/// against `a` for `A`.
pub fn gamma_check(a: i64, seq: GroundSeq, n: usize, cfg: &FockConfig) -> Result<GammaReport, BosonError> {
    if a <= 0 {
        return Err(BosonError::ZeroIndex);
    }
    let measured = commutator_vac(a, -a, 0, seq, n, cfg)?;
    let (expected, passed) = match seq {
        GroundSeq::B => {
            let e = gamma_closed_form(a, n);
            let ok = e == measured;
            (Some(e), ok)
        }
        GroundSeq::A => (None, measured.coeff(0) == crate::qfield::Rat::from_integer(a.into())),
    };
    Ok(GammaReport { a, seq, precision: n, measured, expected, passed })
}
