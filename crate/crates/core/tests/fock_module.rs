use qfock::affinization::{simple_root, Generator, Weight};
use qfock::boson::boson_apply;
use qfock::crystal::Node;
use qfock::fock::{uq_apply_fock, FockConfig, FockVector, GroundSeq};
use qfock::qfield::LaurentPoly;

fn act(g: Generator, f: &FockVector) -> FockVector {
    uq_apply_fock(g, f, &FockConfig::default()).unwrap()
}

fn samples(n: usize) -> Vec<(&'static str, FockVector)> {
    let cfg = FockConfig::default();
    let vb = FockVector::vacuum(0, GroundSeq::B, n);
    vec![
        ("vac A m=0", FockVector::vacuum(0, GroundSeq::A, n)),
        ("vac A m=1", FockVector::vacuum(1, GroundSeq::A, n)),
        ("v2^vac B", act(Generator::F(Node::One), &vb)),
        ("B_-1 vac B", boson_apply(-1, &vb, &cfg).unwrap()),
        ("vac B", vb),
    ]
}

/// `(q² - 1)[e_i, f_i] f` and `q (t_i - t_i⁻¹) f` at their common precision.
fn commutator_sides(f: &FockVector, i: Node) -> (FockVector, FockVector) {
    let ef = act(Generator::E(i), &act(Generator::F(i), f));
    let fe = act(Generator::F(i), &act(Generator::E(i), f));
    let lhs = ef.sub(&fe).unwrap().scale(&LaurentPoly::from_ints(&[(0, -1), (2, 1)]));
    let rhs = act(Generator::T(i), f).sub(&act(Generator::TInv(i), f)).unwrap().scale(&LaurentPoly::q_pow(1));
    let n = lhs.precision().min(rhs.precision());
    (lhs.truncated(n), rhs.truncated(n))
}

#[test]
fn ef_commutator_on_excited_states() {
    for (name, f) in samples(14) {
        for i in Node::ALL {
            let (lhs, rhs) = commutator_sides(&f, i);
            assert!(lhs.precision() >= 6, "{name}: precision {}", lhs.precision());
            assert_eq!(lhs, rhs, "{name}, node {i}");
        }
    }
}

#[test]
fn lowering_shifts_weight_by_a_simple_root() {
    for (name, f) in samples(12) {
        let w = f.weight().expect("homogeneous sample");
        for i in Node::ALL {
            let g = act(Generator::F(i), &f);
            if !g.is_zero() {
                assert_eq!(g.weight(), Some(w - simple_root(i)), "{name}, f{i}");
            }
            let e = act(Generator::E(i), &f);
            if !e.is_zero() {
                assert_eq!(e.weight(), Some(w + simple_root(i)), "{name}, e{i}");
            }
        }
    }
}

/// `f_i^{k+1}` kills a vector of weight `μ` whenever it is killed by `e_i`
/// and `k = <h_i, μ> ≥ 0`.
#[test]
fn strings_through_highest_weight_vectors_terminate() {
    for (name, f) in samples(12) {
        let w = f.weight().unwrap();
        for i in Node::ALL {
            if !act(Generator::E(i), &f).is_zero() {
                continue;
            }
            let k = w.pairing(i);
            assert!(k >= 0, "{name}");
            let mut g = f.clone();
            for step in 0..=k {
                assert!(!g.is_zero(), "{name}: f{i}^{step} vanished early");
                g = act(Generator::F(i), &g);
            }
            assert!(g.is_zero(), "{name}: f{i}^{} = {}", k + 1, g.render());
        }
    }
}

#[test]
fn e_lowers_back_on_the_f_string() {
    // e1 f1 vac^B = vac^B exactly at q = 0 and beyond.
    let vb = FockVector::vacuum(0, GroundSeq::B, 14);
    let back = act(Generator::E(Node::One), &act(Generator::F(Node::One), &vb));
    assert_eq!(back.vacuum_scalar(), Some(LaurentPoly::one()));
    assert_eq!(back.weight(), Some(Weight::new(1, 1, 0)));
}
