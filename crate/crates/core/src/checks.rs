//! The verification suite: nine criteria, each returning one pass/fail line.
//! Shared by the acceptance test target and the `selftest` subcommand.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affinization::{AffLabel, Generator};
use crate::boson::{boson_apply, commutator_vac, gamma_check};
use crate::characters::{hw_span_check, slice_count_check, verify_character};
use crate::crystal::{
    epsilon_weight, export_dot, perfect_check, phi_weight, tensor_square_arrows, wt_cl, CrystalElt, GraphKind, Node,
};
use crate::fock::{annihilation_check, uq_apply_fock, wedge_front, FockConfig, FockVector, GroundSeq};
use crate::qfield::{Coefficient, LaurentPoly};
use crate::wedge::{
    base_relations, is_normally_ordered, lemma_audit, shift_relation, slice_rank, slice_solve, smear_relation,
    straighten, straighten2, uq_apply_wedge, StraightenConfig, WedgeVector,
};

/// Settings for the suite; the defaults are the acceptance settings.
#[derive(Clone, Debug, Serialize)]
pub struct CheckConfig {
    pub vacuum_precision: usize,
    pub boson_precision: usize,
    pub character_depth: usize,
    pub span_depth: usize,
    pub span_precision: usize,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip)]
    pub fock: FockConfig,
    #[serde(skip)]
    pub straighten: StraightenConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            vacuum_precision: 20,
            boson_precision: 16,
            character_depth: 6,
            span_depth: 2,
            span_precision: 16,
            seed: 20_240_601,
            samples: 50,
            fock: FockConfig::default(),
            straighten: StraightenConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

impl CriterionResult {
    /// The result line without timing, for reproducible output.
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("[{tag}] {} {}: {}", self.id, self.name, self.detail)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} ms)", self.line(), self.millis)
    }
}

type Outcome = Result<(bool, String), String>;

fn timed(id: u8, name: &'static str, body: impl FnOnce() -> Outcome) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, passed, detail, millis: start.elapsed().as_millis() }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

pub const NAMES: [&str; 9] = [
    "relation audit",
    "two-wedge basis",
    "vacuum annihilation",
    "vacuum identities",
    "boson suite",
    "character factorization",
    "highest-weight span",
    "crystal checks",
    "module well-definedness",
];

/// Runs one criterion, `1..=9`.
pub fn run_criterion(id: u8, cfg: &CheckConfig) -> CriterionResult {
    let name = NAMES[(id as usize).saturating_sub(1).min(8)];
    match id {
        1 => timed(1, name, relation_audit),
        2 => timed(2, name, || two_wedge_basis(cfg)),
        3 => timed(3, name, || vacuum_annihilation(cfg)),
        4 => timed(4, name, || vacuum_identities(cfg)),
        5 => timed(5, name, || boson_suite(cfg)),
        6 => timed(6, name, || character_factorization(cfg)),
        7 => timed(7, name, || highest_weight_span(cfg)),
        8 => timed(8, name, crystal_checks),
        9 => timed(9, name, || well_definedness(cfg)),
        _ => CriterionResult { id, name: "unknown", passed: false, detail: "no such criterion".into(), millis: 0 },
    }
}

pub fn run_all(cfg: &CheckConfig) -> Vec<CriterionResult> {
    (1..=9).map(|id| run_criterion(id, cfg)).collect()
}

fn relation_audit() -> Outcome {
    let rows = lemma_audit();
    let bad: Vec<&str> = rows.iter().filter(|r| !r.passed()).map(|r| r.relation.as_str()).collect();
    Ok((rows.len() == 9 && bad.is_empty(), format!("{} relations, failing {bad:?}", rows.len())))
}

fn two_wedge_basis(cfg: &CheckConfig) -> Outcome {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for a in -2..=2 {
        for c in -2..=2 {
            for i in 0..=2u8 {
                for j in 0..=2u8 {
                    let (u, w) = (AffLabel::new(a, i), AffLabel::new(c, j));
                    pairs += 1;
                    let r = straighten2(u, w).map_err(err)?;
                    let sol = slice_solve(u, w, cfg.straighten.max_widen).map_err(err)?;
                    let again = straighten(&r, &cfg.straighten).map_err(err)?;
                    if !r.is_normally_ordered() || sol.result != r || !sol.verify() || again != r {
                        failures.push(format!("{u}^{w}"));
                    }
                }
            }
        }
    }
    let mut slices = 0;
    for s in -4..=4 {
        for t in 0..=4u8 {
            slices += 1;
            if !slice_rank(s, t, (-6, 4)).independent() {
                failures.push(format!("slice s={s} t={t}"));
            }
        }
    }
    Ok((failures.is_empty(), format!("{pairs} pairs, {slices} slices, failing {failures:?}")))
}

fn vacuum_annihilation(cfg: &CheckConfig) -> Outcome {
    let n = cfg.vacuum_precision;
    let v0 = WedgeVector::pure(vec![AffLabel::new(0, 0)], Coefficient::one());
    let lead = wedge_front(&v0, &FockVector::vacuum(1, GroundSeq::B, n), &cfg.fock).map_err(err)?.is_zero();
    let mut count = 0;
    let mut bad = Vec::new();
    for seq in GroundSeq::ALL {
        for m in [0, 1] {
            for (b, zero) in annihilation_check(seq, m, (-4, 4), n, &cfg.fock).map_err(err)? {
                count += 1;
                if !zero {
                    bad.push(format!("{b}^vac_{}({seq})", m + 1));
                }
            }
        }
    }
    Ok((lead && bad.is_empty(), format!("v0^vac(B) = 0: {lead}; {count} wedges mod q^{n}, nonzero {bad:?}")))
}

fn vacuum_identities(cfg: &CheckConfig) -> Outcome {
    let n = cfg.vacuum_precision;
    let vac = FockVector::vacuum(0, GroundSeq::B, n);
    let act = |g: Generator, f: &FockVector| uq_apply_fock(g, f, &cfg.fock).map_err(err);
    let mut notes = Vec::new();
    let mut ok = true;
    for i in Node::ALL {
        let t = act(Generator::T(i), &vac)?;
        let good = t.vacuum_scalar() == Some(LaurentPoly::q_pow(1));
        ok &= good;
        notes.push(format!("t{i}: {good}"));
    }
    let e1 = act(Generator::E(Node::One), &vac)?;
    ok &= e1.is_zero();
    notes.push(format!("e1 vac = 0: {}", e1.is_zero()));
    let f1 = act(Generator::F(Node::One), &vac)?;
    let v2 = [AffLabel::new(0, 2)];
    let expected = wedge_front(
        &WedgeVector::pure(v2.to_vec(), Coefficient::one()),
        &FockVector::vacuum(1, GroundSeq::B, n),
        &cfg.fock,
    )
    .map_err(err)?;
    let exact = f1.len() == 1 && f1.coeff(&v2) == LaurentPoly::one() && f1.sub(&expected).map_err(err)?.is_zero();
    ok &= exact;
    notes.push(format!("f1 vac = v2^vac: {exact} (mod q^{})", f1.precision()));
    let ef = act(Generator::E(Node::One), &f1)?;
    let fe = act(Generator::F(Node::One), &e1)?;
    let comm = ef.sub(&fe).map_err(err)?;
    let good = comm.vacuum_scalar() == Some(LaurentPoly::one());
    ok &= good;
    notes.push(format!("[e1,f1] vac = vac: {good} (mod q^{})", comm.precision()));
    Ok((ok, notes.join("; ")))
}

fn boson_suite(cfg: &CheckConfig) -> Outcome {
    let n = cfg.boson_precision;
    let mut bad = Vec::new();
    for seq in GroundSeq::ALL {
        let vac = FockVector::vacuum(0, seq, n);
        for a in 1..=4 {
            if !boson_apply(a, &vac, &cfg.fock).map_err(err)?.is_zero() {
                bad.push(format!("B_{a} vac({seq})"));
            }
        }
        for a in 1..=3 {
            let r = gamma_check(a, seq, n, &cfg.fock).map_err(err)?;
            if !r.passed {
                bad.push(format!("gamma_{a}({seq}) = {}", r.measured));
            }
        }
        let modes: Vec<i64> = (-3..=3).filter(|a| *a != 0).collect();
        for &a in &modes {
            for &b in &modes {
                if a < b && a + b != 0 {
                    let c = commutator_vac(a, b, 0, seq, n, &cfg.fock).map_err(err)?;
                    if !c.is_zero() {
                        bad.push(format!("[B_{a},B_{b}]({seq}) = {c}"));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("mod q^{n}; failing {bad:?}")))
}

fn character_factorization(cfg: &CheckConfig) -> Outcome {
    let d = cfg.character_depth;
    let mut notes = Vec::new();
    let mut ok = true;
    for (seq, m) in [(GroundSeq::A, 0), (GroundSeq::A, 1), (GroundSeq::B, 0)] {
        let r = verify_character(m, seq, d).map_err(err)?;
        ok &= r.passed;
        notes.push(format!("{seq} m={m} ({}): {}", r.lambda, if r.passed { "ok" } else { "mismatch" }));
        if seq == GroundSeq::B {
            let fixture = r.fock.get(1, 0) == 3;
            ok &= fixture;
            notes.push(format!("B depth 1 offset 0 = {}", r.fock.get(1, 0)));
        }
    }
    Ok((ok, format!("depth <= {d}; {}", notes.join("; "))))
}

fn highest_weight_span(cfg: &CheckConfig) -> Outcome {
    let d = cfg.span_depth;
    let r = hw_span_check(0, GroundSeq::B, d, cfg.span_precision, &cfg.fock).map_err(err)?;
    let recount = slice_count_check(0, GroundSeq::B, d).map_err(err)?;
    let cells: Vec<String> =
        r.cells.iter().map(|c| format!("({},{})={}/{}", c.depth, c.offset, c.rank, c.fock_dim)).collect();
    Ok((
        r.passed && recount.is_empty(),
        format!(
            "B depth <= {d} mod q^{} and q^{}; hw conditions {}; rank/dim {}; recount mismatches {recount:?}",
            r.precision,
            r.precision + 4,
            r.highest_weight,
            cells.join(" ")
        ),
    ))
}

/// Arrows of `B ⊗ B` as drawn in the tensor-square diagram.
pub fn diagram_arrows() -> Vec<([CrystalElt; 2], Node, [CrystalElt; 2])> {
    use CrystalElt as E;
    use Node::{One, Zero};
    let mut v = vec![
        ([E::B0, E::B0], One, [E::B0, E::B1]),
        ([E::B0, E::B1], One, [E::B0, E::B2]),
        ([E::B1, E::B0], Zero, [E::B0, E::B0]),
        ([E::B1, E::B1], Zero, [E::B0, E::B1]),
        ([E::B0, E::B2], One, [E::B1, E::B2]),
        ([E::B1, E::B0], One, [E::B1, E::B1]),
        ([E::B1, E::B2], Zero, [E::B1, E::B1]),
        ([E::B2, E::B0], Zero, [E::B1, E::B0]),
        ([E::B1, E::B1], One, [E::B2, E::B1]),
        ([E::B1, E::B2], One, [E::B2, E::B2]),
        ([E::B2, E::B1], Zero, [E::B2, E::B0]),
        ([E::B2, E::B2], Zero, [E::B2, E::B1]),
    ];
    v.sort();
    v
}

fn crystal_checks() -> Outcome {
    let perfect = perfect_check(2).passed();
    let arrows = tensor_square_arrows() == diagram_arrows();
    let dot = export_dot(GraphKind::BTensorB);
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";")).count();
    let wt = CrystalElt::ALL.iter().all(|b| {
        let (w, p, e) = (wt_cl(*b), phi_weight(*b), epsilon_weight(*b));
        w.c0 == p.c0 - e.c0 && w.c1 == p.c1 - e.c1
    });
    Ok((
        perfect && arrows && nodes == 9 && wt,
        format!("perfect(2) {perfect}; BxB {nodes} nodes, arrows match {arrows}; wt = phi - eps {wt}"),
    ))
}

fn random_label(rng: &mut ChaCha8Rng) -> AffLabel {
    AffLabel::new(rng.gen_range(-2..=2), rng.gen_range(0..=2))
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Coefficient {
    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Coefficient::from(LaurentPoly::from_ints(&[(rng.gen_range(0..=3), c)]))
}

fn random_wedge(rng: &mut ChaCha8Rng, arity: usize) -> WedgeVector {
    let mut v = WedgeVector::zero(arity);
    for _ in 0..rng.gen_range(1..=3) {
        let factors = (0..arity).map(|_| random_label(rng)).collect();
        v.add_term(factors, &random_coeff(rng));
    }
    v
}

/// A random element of `N`: a shifted (possibly smeared) relation, placed in
/// two adjacent slots and wedged with a random label when `arity = 3`.
fn random_ideal_element(rng: &mut ChaCha8Rng, arity: usize) -> WedgeVector {
    let rels = base_relations();
    let mut rel = shift_relation(&rels[rng.gen_range(0..rels.len())], rng.gen_range(-2..=2));
    if rng.gen_bool(0.5) {
        rel = smear_relation(&rel);
    }
    let extra = random_label(rng);
    let left = rng.gen_bool(0.5);
    let lam = random_coeff(rng);
    let mut v = WedgeVector::zero(arity);
    for ((x, y), c) in rel.terms() {
        let factors = match (arity, left) {
            (2, _) => vec![*x, *y],
            (_, true) => vec![extra, *x, *y],
            (_, false) => vec![*x, *y, extra],
        };
        v.add_term(factors, &lam.mul_laurent(c));
    }
    v
}

fn well_definedness(cfg: &CheckConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad = Vec::new();
    for k in 0..cfg.samples {
        let arity = rng.gen_range(2..=3);
        let v = random_wedge(&mut rng, arity);
        let g = Generator::CHEVALLEY[rng.gen_range(0..4)];
        let nf = straighten(&v, &cfg.straighten).map_err(err)?;
        let direct = uq_apply_wedge(g, &v).map_err(err)?;
        let via_nf = uq_apply_wedge(g, &nf).map_err(err)?;
        let mut shifted = v.clone();
        shifted.add(&random_ideal_element(&mut rng, arity)).map_err(err)?;
        let nf2 = straighten(&shifted, &cfg.straighten).map_err(err)?;
        let no = nf.terms().all(|(f, _)| is_normally_ordered(f));
        if direct != via_nf || nf2 != nf || !no {
            bad.push(k);
        }
    }
    Ok((bad.is_empty(), format!("seed {}, {} samples, failing {bad:?}", cfg.seed, cfg.samples)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria() {
        let cfg = CheckConfig::default();
        for id in [1, 8] {
            let r = run_criterion(id, &cfg);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn line_format() {
        let r = run_criterion(1, &CheckConfig::default());
        assert!(r.to_string().starts_with("[PASS] 1 relation audit:"));
        assert!(!run_criterion(10, &CheckConfig::default()).passed);
    }

    #[test]
    fn random_ideal_elements_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for arity in [2, 3] {
            for _ in 0..10 {
                let n = random_ideal_element(&mut rng, arity);
                assert!(straighten(&n, &StraightenConfig::default()).unwrap().is_zero());
            }
        }
    }
}
