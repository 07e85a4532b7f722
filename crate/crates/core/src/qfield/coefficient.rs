use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, Poly, QError, Rat, TruncSeries};

/// An element of ℚ(q) in canonical form `num / den`.
///
/// `den` is an honest polynomial with constant term 1 that shares no factor
/// with `num`; every power of `q` lives in the Laurent numerator. With this
/// form, regularity at `q = 0` and the q-adic valuation read off the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    num: LaurentPoly,
    den: Poly,
}

impl Default for Coefficient {
    fn default() -> Self {
        Self::zero()
    }
}

impl Coefficient {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from(LaurentPoly::from_int(n))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from(LaurentPoly::q_pow(k))
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let a = num.min_exp().unwrap_or(0);
        let b = den.min_exp().unwrap_or(0);
        let n = Poly::from_laurent(&num.shift(-a)).expect("shifted numerator is polynomial");
        let d = Poly::from_laurent(&den.shift(-b)).expect("shifted denominator is polynomial");
        let (n, d) = if d.degree() == Some(0) {
            (n, d)
        } else {
            let g = n.gcd(&d);
            if g.is_one() {
                (n, d)
            } else {
                (n.div_rem(&g).0, d.div_rem(&g).0)
            }
        };
        let c = d.constant_term().recip();
        Ok(Self { num: n.scale(&c).to_laurent().shift(a - b), den: d.scale(&c) })
    }

    /// Re-runs normalization; idempotent on canonical values.
    pub fn normalize(&self) -> Self {
        Self::new(self.num.clone(), self.den.to_laurent()).expect("canonical denominator is nonzero")
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// Membership in the ring of functions without a pole at `q = 0`.
    pub fn is_regular_at_zero(&self) -> bool {
        self.num.min_exp().is_none_or(|k| k >= 0)
    }

    /// Order of vanishing at `q = 0`; `None` stands for +∞ (the zero element).
    pub fn valuation(&self) -> Option<i64> {
        self.num.min_exp()
    }

    pub fn inv(&self) -> Result<Self, QError> {
        Self::new(self.den.to_laurent(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QError> {
        if other.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Self::new(self.num.mul_ref(&other.den.to_laurent()), self.den.to_laurent().mul_ref(&other.num))
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if self.is_laurent() {
            return Self { num: self.num.mul_ref(p), den: Poly::one() };
        }
        Self::new(self.num.mul_ref(p), self.den.to_laurent()).expect("nonzero denominator")
    }

    /// Taylor coefficients of `q^0 .. q^{n-1}`.
    pub fn series_expand(&self, n: usize) -> Result<TruncSeries, QError> {
        if !self.is_regular_at_zero() {
            return Err(QError::NotRegularAtZero);
        }
        let num = TruncSeries::from_laurent(&self.num, n)?;
        let den = TruncSeries::from_laurent(&self.den.to_laurent(), n)?;
        Ok(num.mul(&den.inv_unit()?))
    }

    pub fn eval_rational(&self, x: &Rat) -> Option<Rat> {
        let eval = |p: &LaurentPoly| p.terms().fold(Rat::zero(), |acc, (k, c)| acc + c * pow_rat(x, k));
        let d = eval(&self.den.to_laurent());
        if d.is_zero() {
            None
        } else {
            Some(eval(&self.num) / d)
        }
    }
}

fn pow_rat(x: &Rat, k: i64) -> Rat {
    let mut r = Rat::one();
    let base = if k < 0 { x.recip() } else { x.clone() };
    for _ in 0..k.unsigned_abs() {
        r *= &base;
    }
    r
}

impl From<LaurentPoly> for Coefficient {
    fn from(p: LaurentPoly) -> Self {
        Self { num: p, den: Poly::one() }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if self.is_laurent() && rhs.is_laurent() {
            return Coefficient::from(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Coefficient::new(&self.num + &rhs.num, self.den.to_laurent()).expect("nonzero");
        }
        let n = self.num.mul_ref(&rhs.den.to_laurent()) + rhs.num.mul_ref(&self.den.to_laurent());
        Coefficient::new(n, self.den.mul(&rhs.den).to_laurent()).expect("nonzero")
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_laurent() && rhs.is_laurent() {
            return Coefficient::from(self.num.mul_ref(&rhs.num));
        }
        Coefficient::new(self.num.mul_ref(&rhs.num), self.den.mul(&rhs.den).to_laurent()).expect("nonzero")
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den.to_laurent())
        }
    }
}

/// Wire form: `{"num": [[exp, "p/q"], ...], "den": [[exp, "p/q"], ...]}`,
/// exponents ascending.
#[derive(Serialize, Deserialize)]
struct CoefficientJson {
    num: Vec<(i64, String)>,
    den: Vec<(i64, String)>,
}

fn poly_to_json(p: &LaurentPoly) -> Vec<(i64, String)> {
    p.terms().map(|(k, c)| (k, c.to_string())).collect()
}

pub(crate) fn parse_rat(s: &str) -> Result<Rat, QError> {
    s.trim().parse::<Rat>().map_err(|_| QError::Parse(format!("bad rational {s:?}")))
}

fn poly_from_json(v: &[(i64, String)]) -> Result<LaurentPoly, QError> {
    let mut out = LaurentPoly::zero();
    for (k, s) in v {
        out.add_term(*k, &parse_rat(s)?);
    }
    Ok(out)
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CoefficientJson { num: poly_to_json(&self.num), den: poly_to_json(&self.den.to_laurent()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CoefficientJson::deserialize(d)?;
        let num = poly_from_json(&raw.num).map_err(serde::de::Error::custom)?;
        let den = if raw.den.is_empty() {
            LaurentPoly::one()
        } else {
            poly_from_json(&raw.den).map_err(serde::de::Error::custom)?
        };
        Coefficient::new(num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::quantum_int;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    fn c(pairs: &[(i64, i64)]) -> Coefficient {
        Coefficient::from(lp(pairs))
    }

    #[test]
    fn inverse_round_trip() {
        let x = c(&[(0, 1), (2, 1)]);
        let y = Coefficient::one().checked_div(&x).unwrap();
        assert!(!y.is_laurent());
        assert!((&y * &x).is_one());
    }

    #[test]
    fn cancels_common_factors() {
        let v = Coefficient::new(lp(&[(2, 1), (4, 1)]), lp(&[(2, 1)])).unwrap();
        assert_eq!(v, c(&[(0, 1), (2, 1)]));
        assert_eq!(v.normalize(), v);
    }

    #[test]
    fn geometric_resummation_of_f1_on_vacuum() {
        let q2 = Coefficient::q_pow(1).mul_laurent(&quantum_int(2).unwrap());
        let r = q2.checked_div(&c(&[(0, 1), (2, 1)])).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Coefficient::one().checked_div(&Coefficient::zero()), Err(QError::DivisionByZero));
        assert!(Coefficient::zero().inv().is_err());
    }

    #[test]
    fn canonical_denominator_has_unit_constant_term() {
        let v = Coefficient::new(lp(&[(0, 3)]), lp(&[(1, 2), (3, 6)])).unwrap();
        assert_eq!(v.denominator().constant_term(), Rat::one());
        assert_eq!(v.valuation(), Some(-1));
        assert!(!v.is_regular_at_zero());
    }

    #[test]
    fn valuations() {
        assert_eq!(c(&[(2, 1), (5, 1)]).valuation(), Some(2));
        assert_eq!(Coefficient::zero().valuation(), None);
        let v = Coefficient::new(lp(&[(2, 1)]), lp(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(v.valuation(), Some(2));
    }

    #[test]
    fn series_expansions() {
        let g1 = Coefficient::new(lp(&[(0, 1)]), lp(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(g1.series_expand(6).unwrap(), TruncSeries::from_ints(6, &[1, 0, 1, 0, 1, 0]));
        assert_eq!(c(&[(3, 1)]).series_expand(2).unwrap(), TruncSeries::zero(2));
        let g2 = Coefficient::new(lp(&[(0, 2)]), lp(&[(0, 1), (4, -1)])).unwrap();
        assert_eq!(g2.series_expand(5).unwrap(), TruncSeries::from_ints(5, &[2, 0, 0, 0, 2]));
        assert_eq!(c(&[(-1, 1)]).series_expand(3), Err(QError::NotRegularAtZero));
    }

    #[test]
    fn json_round_trip() {
        let v = Coefficient::new(lp(&[(1, 3), (2, -1)]), lp(&[(0, 2), (1, 1)])).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"num":[[1,"3/2"],[2,"-1/2"]],"den":[[0,"1"],[1,"1/2"]]}"#);
        let back: Coefficient = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
