//! Laurent polynomials in `q^{1/2}` with big-integer coefficients.
//!
//! An exponent `n` stands for `q^{n/2}`, so every exponent in play is an
//! integer and no rational arithmetic is needed.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Element of `Z[q^{1/2}, q^{-1/2}]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so derived
/// equality and ordering are structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QCoeff {
    terms: Vec<(i64, BigInt)>,
}

impl QCoeff {
    pub fn zero() -> Self {
        QCoeff { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::q_half(0)
    }

    /// `q^{n/2}`.
    pub fn q_half(n: i64) -> Self {
        QCoeff { terms: vec![(n, BigInt::one())] }
    }

    /// `q^n`.
    pub fn q(n: i64) -> Self {
        Self::q_half(2 * n)
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::term(0, c)
    }

    /// `c * q^{n/2}`.
    pub fn term<T: Into<BigInt>>(n: i64, c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            QCoeff { terms: vec![(n, c)] }
        }
    }

    /// Builds from arbitrary `(half-exponent, coefficient)` pairs.
    pub fn from_terms<I, T>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = it.into_iter().map(|(n, c)| (n, c.into())).collect();
        v.sort_by_key(|(n, _)| *n);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (n, c) in v {
            match out.last_mut() {
                Some((m, d)) if *m == n => *d += c,
                _ => out.push((n, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QCoeff { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Multiplies by `q^{n/2}`.
    pub fn shift(&self, n: i64) -> Self {
        QCoeff { terms: self.terms.iter().map(|(m, c)| (m + n, c.clone())).collect() }
    }

    pub fn shift_in_place(&mut self, n: i64) {
        for t in &mut self.terms {
            t.0 += n;
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, s: T) -> Self {
        let s = s.into();
        if s.is_zero() {
            return Self::zero();
        }
        QCoeff { terms: self.terms.iter().map(|(m, c)| (*m, c * &s)).collect() }
    }

    /// Returns `(sign, n)` when `self = sign * q^{n/2}` with `sign = ±1`.
    pub fn as_unit(&self) -> Option<(i8, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (n, c) = &self.terms[0];
        if c.is_one() {
            Some((1, *n))
        } else if (-c).is_one() {
            Some((-1, *n))
        } else {
            None
        }
    }

    /// Inverse of a unit `±q^{n/2}`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(s, n)| Self::term(-n, s))
    }

    /// Finds `s` with `self = q^{s/2} * other`.
    pub fn shift_from(&self, other: &QCoeff) -> Option<i64> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let s = self.terms[0].0 - other.terms[0].0;
        let same = self
            .terms
            .iter()
            .zip(&other.terms)
            .all(|((a, c), (b, d))| a - b == s && c == d);
        same.then_some(s)
    }

    /// Lowest and highest half-exponents.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    /// `q^{1/2} -> 1` specialisation.
    pub fn at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    fn merge(&self, other: &QCoeff, negate: bool) -> QCoeff {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        QCoeff { terms: out }
    }

    fn product(&self, other: &QCoeff) -> QCoeff {
        if self.is_zero() || other.is_zero() {
            return QCoeff::zero();
        }
        if self.terms.len() == 1 {
            let (n, c) = &self.terms[0];
            return QCoeff { terms: other.terms.iter().map(|(m, d)| (n + m, c * d)).collect() };
        }
        if other.terms.len() == 1 {
            let (n, c) = &other.terms[0];
            return QCoeff { terms: self.terms.iter().map(|(m, d)| (n + m, d * c)).collect() };
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let span = (hi - lo) as usize + 1;
        if span <= 4 * (self.terms.len() * other.terms.len()) + 8 {
            let mut dense = vec![BigInt::zero(); span];
            for (n, c) in &self.terms {
                for (m, d) in &other.terms {
                    dense[(n + m - lo) as usize] += c * d;
                }
            }
            let terms = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect();
            QCoeff { terms }
        } else {
            QCoeff::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(n, c)| other.terms.iter().map(move |(m, d)| (n + m, c * d))),
            )
        }
    }
}

impl From<i64> for QCoeff {
    fn from(c: i64) -> Self {
        QCoeff::from_int(c)
    }
}

impl<'a> Add<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: &'a QCoeff) -> QCoeff {
        self.merge(rhs, false)
    }
}

impl Add for QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: QCoeff) -> QCoeff {
        self.merge(&rhs, false)
    }
}

impl<'a> Sub<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: &'a QCoeff) -> QCoeff {
        self.merge(rhs, true)
    }
}

impl Sub for QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: QCoeff) -> QCoeff {
        self.merge(&rhs, true)
    }
}

impl<'a> Mul<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: &'a QCoeff) -> QCoeff {
        self.product(rhs)
    }
}

impl Mul for QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: QCoeff) -> QCoeff {
        self.product(&rhs)
    }
}

impl Neg for &QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        QCoeff { terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect() }
    }
}

impl Neg for QCoeff {
    type Output = QCoeff;
    fn neg(mut self) -> QCoeff {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl AddAssign<&QCoeff> for QCoeff {
    fn add_assign(&mut self, rhs: &QCoeff) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&QCoeff> for QCoeff {
    fn sub_assign(&mut self, rhs: &QCoeff) {
        *self = self.merge(rhs, true);
    }
}

fn fmt_exp(n: i64) -> String {
    if n % 2 == 0 {
        match n / 2 {
            1 => "q".to_string(),
            e => format!("q^{}", e),
        }
    } else {
        format!("q^({}/2)", n)
    }
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*n, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (_, true) => write!(f, "{}", fmt_exp(*n))?,
                (_, false) => write!(f, "{}*{}", a, fmt_exp(*n))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QCoeff({})", self)
    }
}

/// Integers are written as JSON numbers when they fit in `i64` and as
/// decimal strings otherwise.
pub(crate) mod bigint_json {
    use super::*;

    pub fn to_value(c: &BigInt) -> serde_json::Value {
        match c.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(c.to_string()),
        }
    }

    pub fn from_value(v: &serde_json::Value) -> Result<BigInt, String> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("not an integer: {}", n)),
            serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer string {:?}", s)),
            other => Err(format!("expected integer, got {}", other)),
        }
    }
}

impl Serialize for QCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (n, c) in &self.terms {
            seq.serialize_element(&(n, bigint_json::to_value(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = QCoeff;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of [exponent, integer] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<QCoeff, A::Error> {
                let mut terms = Vec::new();
                while let Some((n, v)) = seq.next_element::<(i64, serde_json::Value)>()? {
                    terms.push((n, bigint_json::from_value(&v).map_err(de::Error::custom)?));
                }
                Ok(QCoeff::from_terms(terms))
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QCoeff {
        QCoeff::q_half(n)
    }

    #[test]
    fn distributes_half_powers() {
        let a = q(1) + q(-1);
        assert_eq!(&a * &q(1), q(2) + QCoeff::one());
    }

    #[test]
    fn difference_of_squares() {
        let a = q(2) - q(-2);
        let b = q(2) + q(-2);
        assert_eq!(a * b, q(4) - q(-4));
    }

    #[test]
    fn additive_inverse_prunes() {
        let a = QCoeff::from_terms([(3, 5), (-1, -2)]);
        assert!((&a + &(-&a)).is_zero());
        assert!((&a - &a).terms().is_empty());
    }

    #[test]
    fn units_and_shifts() {
        assert_eq!(QCoeff::term(3, -1).as_unit(), Some((-1, 3)));
        assert_eq!(QCoeff::from_int(2).as_unit(), None);
        let a = q(1) - QCoeff::term(5, 2);
        assert_eq!(a.shift(4).shift_from(&a), Some(4));
        assert_eq!((a.clone() + QCoeff::one()).shift_from(&a), None);
    }

    #[test]
    fn display_is_readable() {
        let a = q(2) - q(-2) + QCoeff::term(1, 3);
        assert_eq!(a.to_string(), "q + 3*q^(1/2) - q^-1");
    }

    #[test]
    fn json_roundtrip_with_big_coefficient() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let a = QCoeff::from_terms([(-3, BigInt::from(7)), (4, big)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[[-3,7],[4,"123456789012345678901234567890"]]"#);
        let b: QCoeff = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
