//! The three-element perfect crystal `B = {b0, b1, b2}` of level 2 for
//! quantum affine sl2, its tensor-product rule and perfectness checks.
//!
//! The crystal graph is `b0 -1-> b1 -1-> b2` and `b2 -0-> b1 -0-> b0`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

/// Dynkin node of the affine sl2 diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Node {
    Zero,
    One,
}

impl Node {
    pub const ALL: [Node; 2] = [Node::Zero, Node::One];

    pub fn index(self) -> usize {
        match self {
            Node::Zero => 0,
            Node::One => 1,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// One of `b0, b1, b2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CrystalElt(u8);

impl CrystalElt {
    pub const B0: CrystalElt = CrystalElt(0);
    pub const B1: CrystalElt = CrystalElt(1);
    pub const B2: CrystalElt = CrystalElt(2);
    pub const ALL: [CrystalElt; 3] = [Self::B0, Self::B1, Self::B2];

    pub fn new(j: u8) -> Option<Self> {
        (j <= 2).then_some(CrystalElt(j))
    }

    pub fn color(self) -> u8 {
        self.0
    }
}

impl fmt::Display for CrystalElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

/// Classical weight `c0 Λ0 + c1 Λ1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClWeight {
    pub c0: i64,
    pub c1: i64,
}

impl ClWeight {
    pub const fn new(c0: i64, c1: i64) -> Self {
        Self { c0, c1 }
    }

    /// Pairing with the central element `c = h0 + h1`.
    pub fn level(self) -> i64 {
        self.c0 + self.c1
    }

    pub fn pairing(self, i: Node) -> i64 {
        match i {
            Node::Zero => self.c0,
            Node::One => self.c1,
        }
    }

    pub fn is_dominant(self) -> bool {
        self.c0 >= 0 && self.c1 >= 0
    }
}

impl std::ops::Sub for ClWeight {
    type Output = ClWeight;
    fn sub(self, o: ClWeight) -> ClWeight {
        ClWeight::new(self.c0 - o.c0, self.c1 - o.c1)
    }
}

impl fmt::Display for ClWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L0{:+}L1", self.c0, self.c1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KashiwaraOp {
    E,
    F,
}

pub fn epsilon(i: Node, b: CrystalElt) -> i64 {
    let j = b.0 as i64;
    match i {
        Node::One => j,
        Node::Zero => 2 - j,
    }
}

pub fn phi(i: Node, b: CrystalElt) -> i64 {
    let j = b.0 as i64;
    match i {
        Node::One => 2 - j,
        Node::Zero => j,
    }
}

pub fn eps_phi(i: Node, b: CrystalElt) -> (i64, i64) {
    (epsilon(i, b), phi(i, b))
}

/// `ε(b) = Σ ε_i(b) Λ_i`.
pub fn epsilon_weight(b: CrystalElt) -> ClWeight {
    ClWeight::new(epsilon(Node::Zero, b), epsilon(Node::One, b))
}

pub fn phi_weight(b: CrystalElt) -> ClWeight {
    ClWeight::new(phi(Node::Zero, b), phi(Node::One, b))
}

/// `wt(b_j) = 2(1-j)(Λ1 - Λ0)`.
pub fn wt_cl(b: CrystalElt) -> ClWeight {
    let t = 2 * (1 - b.0 as i64);
    ClWeight::new(-t, t)
}

pub fn f_tilde(i: Node, b: CrystalElt) -> Option<CrystalElt> {
    match (i, b.0) {
        (Node::One, j) if j < 2 => Some(CrystalElt(j + 1)),
        (Node::Zero, j) if j > 0 => Some(CrystalElt(j - 1)),
        _ => None,
    }
}

pub fn e_tilde(i: Node, b: CrystalElt) -> Option<CrystalElt> {
    match (i, b.0) {
        (Node::One, j) if j > 0 => Some(CrystalElt(j - 1)),
        (Node::Zero, j) if j < 2 => Some(CrystalElt(j + 1)),
        _ => None,
    }
}

pub fn kashiwara(op: KashiwaraOp, i: Node, b: CrystalElt) -> Option<CrystalElt> {
    match op {
        KashiwaraOp::E => e_tilde(i, b),
        KashiwaraOp::F => f_tilde(i, b),
    }
}

/// `(ε_i, φ_i)` of a tensor word under the left-fold of the two-factor rule.
pub fn word_eps_phi(i: Node, word: &[CrystalElt]) -> (i64, i64) {
    let mut it = word.iter();
    let first = it.next().expect("nonempty word");
    let (mut e, mut p) = eps_phi(i, *first);
    for b in it {
        let (e2, p2) = eps_phi(i, *b);
        let ne = e2 + (e - p2).max(0);
        let np = p + (p2 - e).max(0);
        e = ne;
        p = np;
    }
    (e, p)
}

/// Kashiwara operator on `b_1 ⊗ ... ⊗ b_n`, evaluated as
/// `(b_1 ⊗ ... ⊗ b_{n-1}) ⊗ b_n` with the two-factor rule.
pub fn tensor_kashiwara(op: KashiwaraOp, i: Node, word: &[CrystalElt]) -> Option<Vec<CrystalElt>> {
    assert!(!word.is_empty(), "tensor word must be nonempty");
    let n = word.len();
    if n == 1 {
        return kashiwara(op, i, word[0]).map(|b| vec![b]);
    }
    let (left, last) = word.split_at(n - 1);
    let (e_left, _) = word_eps_phi(i, left);
    let act_left = match op {
        KashiwaraOp::E => e_left > phi(i, last[0]),
        KashiwaraOp::F => e_left >= phi(i, last[0]),
    };
    if act_left {
        let mut out = tensor_kashiwara(op, i, left)?;
        out.push(last[0]);
        Some(out)
    } else {
        let b = kashiwara(op, i, last[0])?;
        let mut out = left.to_vec();
        out.push(b);
        Some(out)
    }
}

/// Outcome of one perfectness condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: u8,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectReport {
    pub level: i64,
    pub conditions: Vec<ConditionResult>,
}

impl PerfectReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

/// All arrows `(source, node, target)` of `B ⊗ B`, sorted.
pub fn tensor_square_arrows() -> Vec<([CrystalElt; 2], Node, [CrystalElt; 2])> {
    let mut out = Vec::new();
    for b in CrystalElt::ALL {
        for c in CrystalElt::ALL {
            for i in Node::ALL {
                if let Some(t) = tensor_kashiwara(KashiwaraOp::F, i, &[b, c]) {
                    out.push(([b, c], i, [t[0], t[1]]));
                }
            }
        }
    }
    out.sort();
    out
}

/// Checks the four perfectness conditions at level `k`.
pub fn perfect_check(k: i64) -> PerfectReport {
    let mut conditions = Vec::new();

    // 1. extremal weights ±2(Λ1-Λ0), singleton weight classes, rank-1 hull.
    let extremal = ClWeight::new(-2, 2);
    let coord = |w: ClWeight| w.c1; // Λ1 - Λ0 direction, with c0 = -c1
    let in_hull = CrystalElt::ALL.iter().all(|b| {
        let w = wt_cl(*b);
        w.c0 == -w.c1 && coord(w).abs() <= coord(extremal)
    });
    let class = |w: ClWeight| CrystalElt::ALL.iter().filter(|b| wt_cl(**b) == w).count();
    let singletons = class(extremal) == 1 && class(ClWeight::new(2, -2)) == 1;
    let extremal_elts: Vec<_> =
        CrystalElt::ALL.iter().filter(|b| coord(wt_cl(**b)).abs() == coord(extremal)).copied().collect();
    let c1_ok = in_hull && singletons && extremal_elts == vec![CrystalElt::B0, CrystalElt::B2];
    conditions.push(ConditionResult {
        condition: 1,
        passed: c1_ok,
        detail: format!(
            "extremal elements {:?}, weights inside hull: {in_hull}, singleton classes: {singletons}",
            extremal_elts.iter().map(|b| b.to_string()).collect::<Vec<_>>()
        ),
    });

    // 2. connectivity of B ⊗ B as an undirected graph.
    let arrows = tensor_square_arrows();
    let nodes: Vec<[CrystalElt; 2]> =
        CrystalElt::ALL.iter().flat_map(|b| CrystalElt::ALL.iter().map(move |c| [*b, *c])).collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([nodes[0]]);
    seen.insert(nodes[0]);
    while let Some(v) = queue.pop_front() {
        for (s, _, t) in &arrows {
            let next = if *s == v {
                *t
            } else if *t == v {
                *s
            } else {
                continue;
            };
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let unreached: Vec<_> = nodes.iter().filter(|n| !seen.contains(*n)).collect();
    conditions.push(ConditionResult {
        condition: 2,
        passed: unreached.is_empty(),
        detail: format!("{} nodes, {} arrows, unreached {:?}", nodes.len(), arrows.len(), unreached),
    });

    // 3. level = min over b of <c, ε(b)>.
    let (min_level, witness) =
        CrystalElt::ALL.iter().map(|b| (epsilon_weight(*b).level(), *b)).min().expect("nonempty crystal");
    conditions.push(ConditionResult {
        condition: 3,
        passed: min_level == k,
        detail: format!("min <c, eps(b)> = {min_level} attained at {witness}, expected {k}"),
    });

    // 4. ε and φ biject the minimal elements onto level-k dominant weights.
    let minimal: Vec<_> = CrystalElt::ALL.iter().filter(|b| epsilon_weight(**b).level() == k).copied().collect();
    let dominant: BTreeSet<ClWeight> = (0..=k.max(0)).map(|a| ClWeight::new(a, k - a)).collect();
    let eps_img: BTreeSet<ClWeight> = minimal.iter().map(|b| epsilon_weight(*b)).collect();
    let phi_img: BTreeSet<ClWeight> = minimal.iter().map(|b| phi_weight(*b)).collect();
    let bij =
        eps_img == dominant && phi_img == dominant && eps_img.len() == minimal.len() && phi_img.len() == minimal.len();
    conditions.push(ConditionResult {
        condition: 4,
        passed: bij,
        detail: format!(
            "{} minimal elements; eps image {:?}; phi image {:?}",
            minimal.len(),
            eps_img.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            phi_img.iter().map(|w| w.to_string()).collect::<Vec<_>>()
        ),
    });

    PerfectReport { level: k, conditions }
}

/// Which crystal graph to render.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    B,
    BTensorB,
    /// `B_aff` restricted to z-exponents in the inclusive window.
    BAff {
        lo: i64,
        hi: i64,
    },
}

/// Deterministic DOT rendering; nodes sorted, edges labeled by node index.
pub fn export_dot(kind: GraphKind) -> String {
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, Node)> = Vec::new();
    match kind {
        GraphKind::B => {
            for b in CrystalElt::ALL {
                nodes.push(b.to_string());
                for i in Node::ALL {
                    if let Some(t) = f_tilde(i, b) {
                        edges.push((b.to_string(), t.to_string(), i));
                    }
                }
            }
        }
        GraphKind::BTensorB => {
            for b in CrystalElt::ALL {
                for c in CrystalElt::ALL {
                    nodes.push(format!("{b}x{c}"));
                }
            }
            for (s, i, t) in tensor_square_arrows() {
                edges.push((format!("{}x{}", s[0], s[1]), format!("{}x{}", t[0], t[1]), i));
            }
        }
        GraphKind::BAff { lo, hi } => {
            let name = |a: i64, b: CrystalElt| format!("z{a}{b}");
            for a in lo..=hi {
                for b in CrystalElt::ALL {
                    nodes.push(name(a, b));
                    for i in Node::ALL {
                        if let Some(t) = f_tilde(i, b) {
                            let ta = if i == Node::Zero { a - 1 } else { a };
                            if (lo..=hi).contains(&ta) {
                                edges.push((name(a, b), name(ta, t), i));
                            }
                        }
                    }
                }
            }
        }
    }
    nodes.sort();
    edges.sort();
    let mut out = String::from("digraph crystal {\n");
    for n in &nodes {
        let _ = writeln!(out, "  \"{n}\";");
    }
    for (s, t, i) in &edges {
        let _ = writeln!(out, "  \"{s}\" -> \"{t}\" [label=\"{i}\"];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use CrystalElt as E;

    #[test]
    fn statistics() {
        assert_eq!(eps_phi(Node::One, E::B1), (1, 1));
        assert_eq!(eps_phi(Node::Zero, E::B0), (2, 0));
        assert_eq!(eps_phi(Node::One, E::B2), (2, 0));
        assert_eq!(wt_cl(E::B0), ClWeight::new(-2, 2));
        assert_eq!(wt_cl(E::B1), ClWeight::new(0, 0));
        assert_eq!(wt_cl(E::B2), ClWeight::new(2, -2));
        assert_eq!(epsilon_weight(E::B1).level(), 2);
    }

    #[test]
    fn operators_follow_graph() {
        assert_eq!(kashiwara(KashiwaraOp::F, Node::One, E::B1), Some(E::B2));
        assert_eq!(kashiwara(KashiwaraOp::E, Node::Zero, E::B1), Some(E::B2));
        assert_eq!(kashiwara(KashiwaraOp::F, Node::Zero, E::B0), None);
    }

    #[test]
    fn crystal_axioms() {
        for b in E::ALL {
            for i in Node::ALL {
                if let Some(t) = f_tilde(i, b) {
                    assert_eq!(e_tilde(i, t), Some(b));
                }
                if let Some(t) = e_tilde(i, b) {
                    assert_eq!(f_tilde(i, t), Some(b));
                }
                let count = |op: fn(Node, E) -> Option<E>| {
                    let mut n = 0;
                    let mut cur = Some(b);
                    while let Some(x) = cur.and_then(|x| op(i, x)) {
                        n += 1;
                        cur = Some(x);
                    }
                    n
                };
                assert_eq!(count(e_tilde), epsilon(i, b));
                assert_eq!(count(f_tilde), phi(i, b));
                let f3 = f_tilde(i, b).and_then(|x| f_tilde(i, x)).and_then(|x| f_tilde(i, x));
                assert_eq!(f3, None);
            }
            assert_eq!(wt_cl(b), phi_weight(b) - epsilon_weight(b));
        }
    }

    #[test]
    fn tensor_rule_examples() {
        assert_eq!(tensor_kashiwara(KashiwaraOp::F, Node::One, &[E::B0, E::B0]), Some(vec![E::B0, E::B1]));
        // b2 ⊗ b0 is a trivial 1-string: ε1(b2) = 2 >= φ1(b0) = 2 sends f1 to b2
        assert_eq!(tensor_kashiwara(KashiwaraOp::F, Node::One, &[E::B2, E::B0]), None);
        assert_eq!(tensor_kashiwara(KashiwaraOp::F, Node::Zero, &[E::B2, E::B1]), Some(vec![E::B2, E::B0]));
        assert_eq!(tensor_kashiwara(KashiwaraOp::E, Node::Zero, &[E::B0, E::B0]), Some(vec![E::B1, E::B0]));
    }

    /// The arrows of the displayed 3x3 diagram of `B ⊗ B`.
    fn diagram_arrows() -> Vec<([E; 2], Node, [E; 2])> {
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

    #[test]
    fn tensor_square_matches_diagram() {
        assert_eq!(tensor_square_arrows(), diagram_arrows());
    }

    /// Signature rule, reading factors right to left: each factor writes
    /// `-` ε times then `+` φ times, adjacent `+-` pairs cancel and f̃ acts on
    /// the first surviving `+`.
    fn signature_f(i: Node, word: &[E]) -> Option<Vec<E>> {
        let mut signs: Vec<(usize, char)> = Vec::new();
        for (pos, b) in word.iter().enumerate().rev() {
            for _ in 0..epsilon(i, *b) {
                signs.push((pos, '-'));
            }
            for _ in 0..phi(i, *b) {
                signs.push((pos, '+'));
            }
        }
        // reduce "+-" pairs (a φ to the left of an ε cancels)
        let mut stack: Vec<(usize, char)> = Vec::new();
        for s in signs {
            if s.1 == '-' && stack.last().is_some_and(|t| t.1 == '+') {
                stack.pop();
            } else {
                stack.push(s);
            }
        }
        let pos = stack.iter().find(|s| s.1 == '+')?.0;
        let mut out = word.to_vec();
        out[pos] = f_tilde(i, word[pos])?;
        Some(out)
    }

    #[test]
    fn fold_agrees_with_signature_rule() {
        let mut words: Vec<Vec<E>> = vec![vec![]];
        for _ in 0..4 {
            words =
                words.into_iter().flat_map(|w| E::ALL.iter().map(move |b| [w.clone(), vec![*b]].concat())).collect();
            for w in &words {
                for i in Node::ALL {
                    assert_eq!(tensor_kashiwara(KashiwaraOp::F, i, w), signature_f(i, w), "{w:?} {i:?}");
                }
            }
        }
    }

    #[test]
    fn perfect_at_level_two() {
        let r = perfect_check(2);
        assert!(r.passed(), "{r:?}");
        assert!(r.conditions[1].detail.starts_with("9 nodes, 12 arrows"));
        assert!(!perfect_check(1).passed());
    }

    #[test]
    fn dot_counts() {
        let count = |s: &str, pat: &str| s.lines().filter(|l| l.contains(pat)).count();
        let b = export_dot(GraphKind::B);
        assert_eq!(count(&b, "->"), 4);
        assert_eq!(count(&b, ";") - count(&b, "->"), 3);
        let bb = export_dot(GraphKind::BTensorB);
        assert_eq!(count(&bb, "->"), 12);
        assert_eq!(count(&bb, ";") - count(&bb, "->"), 9);
        let aff = export_dot(GraphKind::BAff { lo: 0, hi: 1 });
        assert_eq!(count(&aff, ";") - count(&aff, "->"), 6);
        // four 1-arrows plus z b1 -0-> b0 and z b2 -0-> b1
        assert_eq!(count(&aff, "->"), 6);
        assert_eq!(export_dot(GraphKind::BTensorB), bb);
    }
}
