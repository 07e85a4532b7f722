//! Dense univariate polynomials over ℚ, used for denominators and GCDs.

use num_traits::{One, Zero};

use super::{LaurentPoly, Rat};

/// Coefficients low to high; no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> Rat {
        self.0.first().cloned().unwrap_or_else(Rat::zero)
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("lead of zero polynomial")
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Divides out `q^k` where `k` is the low order; returns `(k, rest)`.
    pub fn split_q_power(&self) -> (usize, Poly) {
        match self.low_order() {
            None => (0, Poly::zero()),
            Some(k) => (k, Poly(self.0[k..].to_vec())),
        }
    }

    /// Converts a Laurent polynomial with nonnegative exponents.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        if p.is_zero() {
            return Some(Poly::zero());
        }
        if p.min_exp()? < 0 {
            return None;
        }
        let deg = p.max_exp()? as usize;
        let mut v = vec![Rat::zero(); deg + 1];
        for (k, c) in p.terms() {
            v[k as usize] = c.clone();
        }
        Some(Poly::new(v))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.0.len() - 1;
        let lead_inv = divisor.lead().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}
