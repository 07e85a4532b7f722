//! The affinized module `V_aff = V ⊗ ℚ[z, z⁻¹]` in the basis `z^a v_j`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::crystal::{self, ClWeight, CrystalElt, Node};
use crate::qfield::{quantum_int, Coefficient, LaurentPoly};

/// The basis label `z^a b_j` of the affinized crystal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffLabel {
    pub a: i64,
    pub j: u8,
}

impl AffLabel {
    pub const fn new(a: i64, j: u8) -> Self {
        assert!(j <= 2);
        Self { a, j }
    }

    pub fn elt(self) -> CrystalElt {
        CrystalElt::new(self.j).expect("color in 0..=2")
    }

    /// `z^k` applied to the label.
    pub fn shifted(self, k: i64) -> Self {
        Self { a: self.a + k, j: self.j }
    }
}

/// Ordered by `(l, j)`; `l` alone is not injective.
impl Ord for AffLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (level_l(*self), self.j).cmp(&(level_l(*other), other.j))
    }
}

impl PartialOrd for AffLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AffLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            0 => write!(f, "v{}", self.j),
            1 => write!(f, "zv{}", self.j),
            a => write!(f, "z^{a}v{}", self.j),
        }
    }
}

impl FromStr for AffLabel {
    type Err = String;

    /// Parses `v1`, `zv0`, `z^-2v2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (a, rest) = if let Some(r) = s.strip_prefix("z^") {
            let idx = r.find('v').ok_or_else(|| format!("bad label {s:?}"))?;
            let a = r[..idx].parse::<i64>().map_err(|_| format!("bad exponent in {s:?}"))?;
            (a, &r[idx..])
        } else if let Some(r) = s.strip_prefix('z') {
            (1, r)
        } else {
            (0, s)
        };
        let j = rest
            .strip_prefix('v')
            .and_then(|d| d.parse::<u8>().ok())
            .filter(|j| *j <= 2)
            .ok_or_else(|| format!("bad label {s:?}"))?;
        Ok(AffLabel { a, j })
    }
}

/// `l(z^a b_j) = 2a - j`.
pub fn level_l(b: AffLabel) -> i64 {
    2 * b.a - b.j as i64
}

/// Energy function `H(z^a b_i ⊗ z^c b_j) = min{i, 2-j} - a + c`.
pub fn energy_h(b: AffLabel, b2: AffLabel) -> i64 {
    let base = (b.j as i64).min(2 - b2.j as i64);
    base - b.a + b2.a
}

pub fn normally_ordered(b: AffLabel, b2: AffLabel) -> bool {
    energy_h(b, b2) > 0
}

/// Affine weight `c0 Λ0 + c1 Λ1 + d δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Weight {
    pub c0: i64,
    pub c1: i64,
    pub d: i64,
}

impl Weight {
    pub const fn new(c0: i64, c1: i64, d: i64) -> Self {
        Self { c0, c1, d }
    }

    pub fn level(self) -> i64 {
        self.c0 + self.c1
    }

    pub fn classical(self) -> ClWeight {
        ClWeight::new(self.c0, self.c1)
    }

    /// `<h_i, wt>`.
    pub fn pairing(self, i: Node) -> i64 {
        self.classical().pairing(i)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.c0 + o.c0, self.c1 + o.c1, self.d + o.d)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.c0 - o.c0, self.c1 - o.c1, self.d - o.d)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.c0, -self.c1, -self.d)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::default(), |a, b| a + b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L0{:+}L1{:+}delta", self.c0, self.c1, self.d)
    }
}

/// `α1 = 2Λ1 - 2Λ0`, `α0 = δ - α1`.
pub fn simple_root(i: Node) -> Weight {
    match i {
        Node::One => Weight::new(-2, 2, 0),
        Node::Zero => Weight::new(2, -2, 1),
    }
}

/// `wt(z^a v_j) = wt(v_j) + aδ`.
pub fn global_wt(b: AffLabel) -> Weight {
    let cl = crystal::wt_cl(b.elt());
    Weight::new(cl.c0, cl.c1, b.a)
}

/// Chevalley generators and the group-likes `t_i^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    E(Node),
    F(Node),
    T(Node),
    TInv(Node),
}

impl Generator {
    pub const CHEVALLEY: [Generator; 4] =
        [Generator::E(Node::Zero), Generator::E(Node::One), Generator::F(Node::Zero), Generator::F(Node::One)];

    pub fn node(self) -> Node {
        match self {
            Generator::E(i) | Generator::F(i) | Generator::T(i) | Generator::TInv(i) => i,
        }
    }

    /// Weight shift produced by the generator.
    pub fn weight_shift(self) -> Weight {
        match self {
            Generator::E(i) => simple_root(i),
            Generator::F(i) => -simple_root(i),
            _ => Weight::default(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::T(i) => write!(f, "t{i}"),
            Generator::TInv(i) => write!(f, "t{i}inv"),
        }
    }
}

impl FromStr for Generator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let node = |c: &str| match c {
            "0" => Ok(Node::Zero),
            "1" => Ok(Node::One),
            _ => Err(format!("unknown generator {s:?}")),
        };
        let s = s.trim();
        if let Some(r) = s.strip_prefix('t') {
            if let Some(n) = r.strip_suffix("inv") {
                return node(n).map(Generator::TInv);
            }
            return node(r).map(Generator::T);
        }
        if let Some(r) = s.strip_prefix('e') {
            return node(r).map(Generator::E);
        }
        if let Some(r) = s.strip_prefix('f') {
            return node(r).map(Generator::F);
        }
        Err(format!("unknown generator {s:?}"))
    }
}

/// Exponent of `t_i` on `z^a v_j`: `<h_i, wt(b_j)>`.
pub fn t_exponent(i: Node, b: AffLabel) -> i64 {
    crystal::wt_cl(b.elt()).pairing(i)
}

/// Action of a generator on a single basis vector; `None` when it vanishes.
pub fn act_on_label(g: Generator, b: AffLabel) -> Option<(AffLabel, LaurentPoly)> {
    let elt = b.elt();
    match g {
        Generator::E(i) => {
            let t = crystal::e_tilde(i, elt)?;
            let c = quantum_int(crystal::phi(i, elt) + 1).expect("nonnegative");
            let shift = if i == Node::Zero { 1 } else { 0 };
            Some((AffLabel::new(b.a + shift, t.color()), c))
        }
        Generator::F(i) => {
            let t = crystal::f_tilde(i, elt)?;
            let c = quantum_int(crystal::epsilon(i, elt) + 1).expect("nonnegative");
            let shift = if i == Node::Zero { -1 } else { 0 };
            Some((AffLabel::new(b.a + shift, t.color()), c))
        }
        Generator::T(i) => Some((b, LaurentPoly::q_pow(t_exponent(i, b)))),
        Generator::TInv(i) => Some((b, LaurentPoly::q_pow(-t_exponent(i, b)))),
    }
}

/// Finite combination `Σ c_b z^a v_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffVector {
    terms: BTreeMap<AffLabel, Coefficient>,
}

impl AffVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: AffLabel) -> Self {
        let mut v = Self::zero();
        v.add_term(b, &Coefficient::one());
        v
    }

    pub fn add_term(&mut self, b: AffLabel, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(Coefficient::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffLabel, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: AffLabel) -> Coefficient {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c);
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero();
        for (b, v) in &self.terms {
            out.add_term(*b, &(v * c));
        }
        out
    }
}

/// Linear extension of [`act_on_label`].
pub fn uq_apply_vaff(g: Generator, v: &AffVector) -> AffVector {
    let mut out = AffVector::zero();
    for (b, c) in v.terms() {
        if let Some((t, k)) = act_on_label(g, *b) {
            out.add_term(t, &c.mul_laurent(&k));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct AffTermJson {
    a: i64,
    j: u8,
    coeff: Coefficient,
}

impl Serialize for AffVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<AffTermJson> =
            self.terms.iter().map(|(b, c)| AffTermJson { a: b.a, j: b.j, coeff: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<AffTermJson>::deserialize(d)?;
        let mut out = AffVector::zero();
        for t in raw {
            if t.j > 2 {
                return Err(serde::de::Error::custom(format!("color {} out of range", t.j)));
            }
            out.add_term(AffLabel::new(t.a, t.j), &t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn lab(a: i64, j: u8) -> AffLabel {
        AffLabel::new(a, j)
    }

    #[test]
    fn l_values() {
        assert_eq!(level_l(lab(0, 0)), 0);
        assert_eq!(level_l(lab(1, 2)), 0);
        assert_eq!(level_l(lab(1, 1)), 1);
        assert!(lab(0, 0) < lab(1, 2));
    }

    #[test]
    fn energies() {
        assert_eq!(energy_h(lab(0, 1), lab(0, 1)), 1);
        assert_eq!(energy_h(lab(1, 2), lab(0, 1)), 0);
        assert_eq!(energy_h(lab(1, 0), lab(0, 1)), -1);
        assert!(normally_ordered(lab(0, 1), lab(0, 1)));
        assert!(!normally_ordered(lab(0, 0), lab(0, 1)));
        assert!(normally_ordered(lab(0, 2), lab(0, 0)));
    }

    #[test]
    fn energy_properties_on_window() {
        let labels: Vec<AffLabel> = (-3..=3).flat_map(|a| (0..3).map(move |j| lab(a, j))).collect();
        for &u in &labels {
            for &w in &labels {
                for k in -2..=2 {
                    assert_eq!(energy_h(u.shifted(k), w.shifted(k)), energy_h(u, w));
                }
                assert_eq!(energy_h(u.shifted(1), w), energy_h(u, w) - 1);
                if energy_h(u, w) <= 0 {
                    assert!(level_l(u) >= level_l(w), "{u} {w}");
                }
            }
        }
        for a in -3..=3 {
            assert_eq!(energy_h(lab(a, 0), lab(a, 0)), 0);
            assert_eq!(energy_h(lab(a, 2), lab(a, 2)), 0);
        }
    }

    #[test]
    fn generator_actions() {
        let v = |b| AffVector::basis(b);
        let two = Coefficient::from(quantum_int(2).unwrap());
        let f1 = Generator::F(Node::One);
        assert_eq!(uq_apply_vaff(f1, &v(lab(0, 1))), v(lab(0, 2)).scale(&two));
        assert_eq!(uq_apply_vaff(f1, &v(lab(0, 0))), v(lab(0, 1)));
        assert_eq!(uq_apply_vaff(Generator::E(Node::Zero), &v(lab(0, 1))), v(lab(1, 2)).scale(&two));
        assert!(uq_apply_vaff(Generator::E(Node::One), &v(lab(0, 0))).is_zero());
    }

    #[test]
    fn weights() {
        assert_eq!(global_wt(lab(1, 2)), Weight::new(2, -2, 1));
        assert_eq!(global_wt(lab(0, 1)), Weight::new(0, 0, 0));
        assert_eq!(global_wt(lab(-1, 0)), Weight::new(-2, 2, -1));
    }

    #[test]
    fn weight_compatibility_and_t_conjugation() {
        for a in -2..=2 {
            for j in 0..3 {
                let b = lab(a, j);
                for i in Node::ALL {
                    if let Some((t, _)) = act_on_label(Generator::E(i), b) {
                        assert_eq!(global_wt(t) - global_wt(b), simple_root(i));
                        // t_i e_i t_i^{-1} = q^2 e_i
                        let lhs = t_exponent(i, t) - t_exponent(i, b);
                        assert_eq!(lhs, 2);
                    }
                    if let Some((t, _)) = act_on_label(Generator::F(i), b) {
                        assert_eq!(global_wt(b) - global_wt(t), simple_root(i));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_labels_and_generators() {
        for s in ["v0", "zv1", "z^-2v2", "z^3v0"] {
            let b: AffLabel = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        assert!("w1".parse::<AffLabel>().is_err());
        for s in ["e0", "f1", "t1", "t0inv"] {
            assert_eq!(s.parse::<Generator>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn json_form() {
        let mut v = AffVector::basis(lab(1, 2));
        v.add_term(lab(0, 0), &Coefficient::from_int(-3));
        let s = serde_json::to_string(&v).unwrap();
        let back: AffVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(s.contains(r#""a":1,"j":2"#));
    }
}
