//! Exact arithmetic over ℚ(q).
//!
//! [`LaurentPoly`] covers ℤ[q, q⁻¹]-style quantities (relation coefficients,
//! quantum integers, truncated Fock coordinates). [`Coefficient`] is the full
//! field ℚ(q) in a canonical form where the denominator has constant term 1.
//! [`TruncSeries`] is the q-adic view used to compare against closed forms.

mod coefficient;
mod laurent;
mod poly;
mod series;

use thiserror::Error;

pub use coefficient::Coefficient;
pub use laurent::{quantum_int, quantum_int_signed, LaurentPoly};
pub use poly::Poly;
pub use series::TruncSeries;

pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("quantum integer [{0}] requested for negative n")]
    NegativeQuantumInt(i64),
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("not regular at q = 0")]
    NotRegularAtZero,
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -3i64..4), 0..5).prop_map(|v| LaurentPoly::from_ints(&v))
    }

    fn small_coeff() -> impl Strategy<Value = Coefficient> {
        (small_laurent(), prop::collection::vec((0i64..4, -2i64..3), 0..3)).prop_map(|(n, d)| {
            let mut den = LaurentPoly::from_ints(&d);
            den += &LaurentPoly::one();
            if den.is_zero() {
                den = LaurentPoly::one();
            }
            Coefficient::new(n, den).unwrap()
        })
    }

    proptest! {
        #[test]
        fn distributive(a in small_laurent(), b in small_laurent(), c in small_laurent()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn field_ops_are_canonical(x in small_coeff(), y in small_coeff()) {
            let s = &x + &y;
            prop_assert_eq!(s.normalize(), s.clone());
            prop_assert_eq!(&s - &y, x.clone());
            if !y.is_zero() {
                let p = &x * &y;
                prop_assert_eq!(p.checked_div(&y).unwrap(), x.clone());
            }
        }

        #[test]
        fn valuation_is_additive(x in small_coeff(), y in small_coeff()) {
            let p = &x * &y;
            match (x.valuation(), y.valuation()) {
                (Some(a), Some(b)) => prop_assert_eq!(p.valuation(), Some(a + b)),
                _ => prop_assert!(p.is_zero()),
            }
        }

        #[test]
        fn series_of_product(x in small_coeff(), y in small_coeff()) {
            let n = 7;
            if x.is_regular_at_zero() && y.is_regular_at_zero() {
                let lhs = (&x * &y).series_expand(n).unwrap();
                let rhs = x.series_expand(n).unwrap().mul(&y.series_expand(n).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn quantum_int_at_one(n in 0i64..30) {
            prop_assert_eq!(quantum_int(n).unwrap().eval_at_one(), Rat::from_integer(n.into()));
        }
    }
}
