use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{QError, Rat};

/// Finite sum `Σ c_k q^k` with rational coefficients and integer exponents.
///
/// Zero coefficients are never stored, so the zero polynomial has an empty
/// term map and structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(Rat::one(), k)
    }

    pub fn monomial(c: Rat, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(Rat::from_integer(n.into()), 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    /// Shorthand for integer coefficients: `from_ints(&[(0, 1), (2, -1)])` is `1 - q^2`.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(k, c)| (k, Rat::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, k: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(k, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent present; `None` for zero. This is the q-adic valuation.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.min_exp()
    }

    /// Drops every term with exponent `>= n` (reduction mod `q^n`).
    pub fn truncate(&mut self, n: i64) {
        self.terms.split_off(&n);
    }

    pub fn truncated(&self, n: i64) -> Self {
        let mut p = self.clone();
        p.truncate(n);
        p
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Image under `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Product reduced mod `q^n`, skipping the discarded cross terms.
    pub fn mul_truncated(&self, other: &Self, n: i64) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if e1 + e2 < n {
                    out.add_term(e1 + e2, &(c1 * c2));
                } else {
                    break;
                }
            }
        }
        out
    }
}

/// Balanced quantum integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn quantum_int(n: i64) -> Result<LaurentPoly, QError> {
    if n < 0 {
        return Err(QError::NegativeQuantumInt(n));
    }
    Ok(quantum_int_signed(n))
}

/// `[n]` extended to negative `n` by `[-n] = -[n]`, which is the value of
/// `(q^n - q^{-n}) / (q - q^{-1})` for every integer `n`.
pub fn quantum_int_signed(n: i64) -> LaurentPoly {
    let m = n.abs();
    let sign = if n < 0 { -1 } else { 1 };
    let mut p = LaurentPoly::zero();
    let mut k = m - 1;
    while k >= 1 - m {
        p.add_term(k, &Rat::from_integer(sign.into()));
        k -= 2;
    }
    p
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, k: i64) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "q"),
        _ => write!(f, "q^{k}"),
    }
}

/// Renders with descending exponents, e.g. `q^4 - 1` or `-q^2 + 2q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    if mag.is_integer() {
                        write!(f, "{mag}")?;
                    } else {
                        write!(f, "({mag})")?;
                    }
                }
                fmt_monomial(f, *k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn additive_identity_and_binomial() {
        let x = lp(&[(0, 3), (5, -2)]);
        assert_eq!(&x + &LaurentPoly::zero(), x);
        let one_q = lp(&[(0, 1), (1, 1)]);
        assert_eq!(&one_q * &one_q, lp(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = lp(&[(0, 1), (3, 2)]);
        let y = lp(&[(3, -2)]);
        let s = &x + &y;
        assert_eq!(s.len(), 1);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_int(0).unwrap().is_zero());
        assert!(quantum_int(1).unwrap().is_one());
        assert_eq!(quantum_int(2).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(quantum_int(3).unwrap(), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert!(matches!(quantum_int(-1), Err(QError::NegativeQuantumInt(-1))));
        assert_eq!(quantum_int_signed(-2), -quantum_int(2).unwrap());
        for n in 0..8 {
            let p = quantum_int(n).unwrap();
            assert_eq!(p.bar(), p);
            assert_eq!(p.eval_at_one(), Rat::from_integer(n.into()));
        }
    }

    #[test]
    fn truncation_and_display() {
        let p = lp(&[(-1, 1), (0, 2), (3, -1), (7, 1)]);
        assert_eq!(p.truncated(3), lp(&[(-1, 1), (0, 2)]));
        assert_eq!(lp(&[(4, 1), (0, -1)]).to_string(), "q^4 - 1");
        assert_eq!(lp(&[(2, -1)]).to_string(), "-q^2");
        assert_eq!(lp(&[(1, 1), (-1, 1)]).to_string(), "q + q^-1");
        assert_eq!(p.mul_truncated(&lp(&[(0, 1), (1, 1)]), 2), (&p * &lp(&[(0, 1), (1, 1)])).truncated(2));
    }
}
