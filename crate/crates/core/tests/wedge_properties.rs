use proptest::prelude::*;

use qfock::affinization::{AffLabel, Generator};
use qfock::qfield::{Coefficient, LaurentPoly};
use qfock::wedge::{
    base_relations, shift_relation, straighten, uq_apply_wedge, wedge_l, wedge_weight, StraightenConfig, WedgeVector,
};

fn label() -> impl Strategy<Value = AffLabel> {
    (-2i64..=2, 0u8..=2).prop_map(|(a, j)| AffLabel::new(a, j))
}

fn coeff() -> impl Strategy<Value = Coefficient> {
    (0i64..=3, -3i64..=3)
        .prop_filter("nonzero", |(_, c)| *c != 0)
        .prop_map(|(e, c)| Coefficient::from(LaurentPoly::from_ints(&[(e, c)])))
}

fn wedge(arity: usize) -> impl Strategy<Value = WedgeVector> {
    prop::collection::vec((prop::collection::vec(label(), arity), coeff()), 1..=3).prop_map(move |terms| {
        let mut v = WedgeVector::zero(arity);
        for (f, c) in terms {
            v.add_term(f, &c);
        }
        v
    })
}

fn any_wedge() -> impl Strategy<Value = WedgeVector> {
    prop_oneof![wedge(2), wedge(3)]
}

fn generator() -> impl Strategy<Value = Generator> {
    (0usize..4).prop_map(|k| Generator::CHEVALLEY[k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn straightening_is_idempotent(v in any_wedge()) {
        let cfg = StraightenConfig::default();
        let once = straighten(&v, &cfg).unwrap();
        prop_assert!(once.is_normally_ordered());
        prop_assert_eq!(straighten(&once, &cfg).unwrap(), once);
    }

    #[test]
    fn straightening_conserves_weight_and_l(fs in prop_oneof![prop::collection::vec(label(), 2), prop::collection::vec(label(), 3)]) {
        let v = WedgeVector::pure(fs.clone(), Coefficient::one());
        let out = straighten(&v, &StraightenConfig::default()).unwrap();
        for (k, _) in out.terms() {
            prop_assert_eq!(wedge_weight(k), wedge_weight(&fs));
            prop_assert_eq!(wedge_l(k), wedge_l(&fs));
        }
    }

    #[test]
    fn action_commutes_with_straightening(v in any_wedge(), g in generator()) {
        let nf = straighten(&v, &StraightenConfig::default()).unwrap();
        prop_assert_eq!(uq_apply_wedge(g, &v).unwrap(), uq_apply_wedge(g, &nf).unwrap());
    }

    #[test]
    fn ideal_elements_do_not_change_normal_forms(
        v in wedge(3),
        k in 0usize..9,
        shift in -2i64..=2,
        extra in label(),
        left in any::<bool>(),
        c in coeff(),
    ) {
        let rel = shift_relation(&base_relations()[k], shift);
        let mut n = WedgeVector::zero(3);
        for ((x, y), p) in rel.terms() {
            let f = if left { vec![extra, *x, *y] } else { vec![*x, *y, extra] };
            n.add_term(f, &c.mul_laurent(p));
        }
        let mut w = v.clone();
        w.add(&n).unwrap();
        let cfg = StraightenConfig::default();
        prop_assert_eq!(straighten(&w, &cfg).unwrap(), straighten(&v, &cfg).unwrap());
    }
}
