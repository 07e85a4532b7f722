use super::{straighten, StraightenConfig, WedgeError, WedgeVector};
use crate::affinization::{act_on_label, t_exponent, AffLabel, Generator};
use crate::qfield::LaurentPoly;

/// Action of a generator on a pure tensor through the coproduct
/// `Δe = e⊗1 + t⁻¹⊗e`, `Δf = f⊗t + 1⊗f`, `Δt = t⊗t`.
pub fn apply_on_factors(g: Generator, factors: &[AffLabel]) -> Vec<(Vec<AffLabel>, LaurentPoly)> {
    let i = g.node();
    let exps: Vec<i64> = factors.iter().map(|b| t_exponent(i, *b)).collect();
    match g {
        Generator::T(_) => vec![(factors.to_vec(), LaurentPoly::q_pow(exps.iter().sum()))],
        Generator::TInv(_) => vec![(factors.to_vec(), LaurentPoly::q_pow(-exps.iter().sum::<i64>()))],
        Generator::E(_) | Generator::F(_) => {
            let mut out = Vec::new();
            for r in 0..factors.len() {
                let Some((b, c)) = act_on_label(g, factors[r]) else { continue };
                let k = match g {
                    Generator::E(_) => -exps[..r].iter().sum::<i64>(),
                    _ => exps[r + 1..].iter().sum::<i64>(),
                };
                let mut nf = factors.to_vec();
                nf[r] = b;
                out.push((nf, c.shift(k)));
            }
            out
        }
    }
}

/// Acts on a wedge vector and returns the straightened result.
pub fn uq_apply_wedge(g: Generator, v: &WedgeVector) -> Result<WedgeVector, WedgeError> {
    let mut raw = WedgeVector::zero(v.arity());
    for (k, c) in v.terms() {
        for (nk, p) in apply_on_factors(g, k) {
            raw.add_term(nk, &c.mul_laurent(&p));
        }
    }
    straighten(&raw, &StraightenConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::Node;
    use crate::qfield::Coefficient;
    use crate::wedge::{base_relations, Relation};

    fn l(s: &str) -> AffLabel {
        s.parse().unwrap()
    }

    fn apply_relation(g: Generator, r: &Relation) -> WedgeVector {
        let mut out = WedgeVector::zero(2);
        for ((u, w), c) in r.terms() {
            for (nk, p) in apply_on_factors(g, &[*u, *w]) {
                out.add_term(nk, &Coefficient::from(c.mul_ref(&p)));
            }
        }
        out
    }

    #[test]
    fn f1_on_v0_v0_is_a_relation() {
        let r = apply_relation(Generator::F(Node::One), &base_relations()[0]);
        let target = &base_relations()[1];
        let mut expected = WedgeVector::zero(2);
        for ((u, w), c) in target.terms() {
            expected.add_term(vec![*u, *w], &Coefficient::from(c.clone()));
        }
        assert_eq!(r, expected);
    }

    #[test]
    fn relations_map_into_the_ideal() {
        for rel in base_relations() {
            for g in Generator::CHEVALLEY {
                let img = apply_relation(g, &rel);
                let s = straighten(&img, &StraightenConfig::default()).unwrap();
                assert!(s.is_zero(), "{g} on {}: {}", rel.name, s.render());
            }
        }
    }

    #[test]
    fn e_f_commutator_on_wedges() {
        // [e_i, f_i] = (t_i - t_i⁻¹)/(q - q⁻¹)
        let samples = [vec![l("zv0"), l("v1")], vec![l("v2"), l("v0"), l("z^-1v1")], vec![l("v1"), l("zv2")]];
        for factors in samples {
            let v = WedgeVector::pure(factors, Coefficient::one());
            for i in Node::ALL {
                let ef = uq_apply_wedge(Generator::E(i), &uq_apply_wedge(Generator::F(i), &v).unwrap()).unwrap();
                let fe = uq_apply_wedge(Generator::F(i), &uq_apply_wedge(Generator::E(i), &v).unwrap()).unwrap();
                let t = uq_apply_wedge(Generator::T(i), &v).unwrap();
                let ti = uq_apply_wedge(Generator::TInv(i), &v).unwrap();
                let mut lhs = ef;
                lhs.add(&fe.scale(&LaurentPoly::from_int(-1))).unwrap();
                let mut rhs = t;
                rhs.add(&ti.scale(&LaurentPoly::from_int(-1))).unwrap();
                let qq = LaurentPoly::from_ints(&[(1, 1), (-1, -1)]);
                assert_eq!(lhs.scale(&qq), rhs, "node {i:?}");
            }
        }
    }
}
