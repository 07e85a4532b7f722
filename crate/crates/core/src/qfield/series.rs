use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, QError, Rat};

/// A power series known modulo `q^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    precision: usize,
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    pub fn zero(precision: usize) -> Self {
        Self { precision, coeffs: vec![Rat::zero(); precision] }
    }

    pub fn from_ints(precision: usize, v: &[i64]) -> Self {
        let mut s = Self::zero(precision);
        for (i, c) in v.iter().enumerate().take(precision) {
            s.coeffs[i] = Rat::from_integer((*c).into());
        }
        s
    }

    /// Reduces a Laurent polynomial mod `q^precision`; negative exponents are
    /// rejected because they have no power-series image.
    pub fn from_laurent(p: &LaurentPoly, precision: usize) -> Result<Self, QError> {
        if p.min_exp().is_some_and(|k| k < 0) {
            return Err(QError::NotRegularAtZero);
        }
        let mut s = Self::zero(precision);
        for (k, c) in p.terms() {
            if (k as usize) < precision {
                s.coeffs[k as usize] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }

    /// Reduces further to a smaller precision.
    pub fn truncated(&self, precision: usize) -> Self {
        let p = precision.min(self.precision);
        Self { precision: p, coeffs: self.coeffs[..p].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        Self { precision: p, coeffs: (0..p).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        Self { precision: p, coeffs: (0..p).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        let mut out = Self::zero(p);
        for i in 0..p {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..p - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inv_unit(&self) -> Result<Self, QError> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(QError::NotRegularAtZero);
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.precision);
        for k in 0..self.precision {
            let mut acc = if k == 0 { Rat::one() } else { Rat::zero() };
            for i in 1..=k {
                acc -= &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = acc * &inv0;
        }
        Ok(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ascending powers, the usual order for a power series.
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let sign = match (k == 0 || self.coeffs[..k].iter().all(|x| x.is_zero()), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "q".to_string(),
                (1, false) => format!("{mag}q"),
                (_, true) => format!("q^{k}"),
                (_, false) => format!("{mag}q^{k}"),
            };
            write!(f, "{sign}{body}")?;
        }
        if self.is_zero() {
            write!(f, "O(q^{})", self.precision)
        } else {
            write!(f, " + O(q^{})", self.precision)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    precision: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson { precision: self.precision, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        if raw.coeffs.len() != raw.precision {
            return Err(serde::de::Error::custom("coefficient count differs from precision"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| super::coefficient::parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self { precision: raw.precision, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascending_display() {
        assert_eq!(TruncSeries::from_ints(6, &[1, 0, 1, 0, 1]).to_string(), "1 + q^2 + q^4 + O(q^6)");
        assert_eq!(TruncSeries::from_ints(4, &[0, -2, 0, 1]).to_string(), "-2q + q^3 + O(q^4)");
        assert_eq!(TruncSeries::zero(3).to_string(), "O(q^3)");
    }

    #[test]
    fn truncation_is_additive() {
        let a = LaurentPoly::from_ints(&[(0, 1), (3, 2), (9, 1)]);
        let b = LaurentPoly::from_ints(&[(1, -1), (3, 5), (12, 4)]);
        let n = 6;
        let lhs = TruncSeries::from_laurent(&(&a + &b), n).unwrap();
        let rhs = TruncSeries::from_laurent(&a, n).unwrap().add(&TruncSeries::from_laurent(&b, n).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_tail_rejected() {
        let p = LaurentPoly::from_ints(&[(-2, 1)]);
        assert_eq!(TruncSeries::from_laurent(&p, 4), Err(QError::NotRegularAtZero));
    }

    #[test]
    fn unit_inverse() {
        let s = TruncSeries::from_ints(8, &[1, 0, -1]);
        let inv = s.inv_unit().unwrap();
        assert_eq!(inv, TruncSeries::from_ints(8, &[1, 0, 1, 0, 1, 0, 1, 0]));
        assert_eq!(s.mul(&inv), TruncSeries::from_ints(8, &[1]));
    }
}
