use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of ℤ[α, α⁻¹], stored sparsely as exponent ↦ nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate α.
    pub fn alpha() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `(-α)^k` for any integer `k`.
    pub fn neg_alpha_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, k)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of ℤ[α^{±1}] are exactly the signed monomials ±α^k.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by α^k.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::EvalAtZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let xe = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            acc += xe * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    pub fn eval_int(&self, x: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in ℤ[α^{±1}].
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (d.min_degree()?, d.max_degree()?);
        let lead = d.terms[&dhi].clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rhi) = rem.max_degree() {
            let rlo = rem.min_degree().unwrap();
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let c = &rem.terms[&rhi];
            if !(c % &lead).is_zero() {
                return None;
            }
            let q = LaurentPoly::monomial(c / &lead, rhi - dhi);
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        Some(quot)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*a^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical text form, e.g. `"-2*a^1 + -1*a^2"`. Bare
    /// integers and `a`, `a^k` are accepted as shorthands.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Laurent polynomial: {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for raw in s.split(" + ") {
            let term = raw.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (coeff, mono) = match term.split_once('*') {
                Some((c, m)) => (c.trim().parse::<BigInt>().map_err(|_| bad())?, Some(m.trim())),
                None if term.starts_with('a') => (BigInt::one(), Some(term)),
                None if term.starts_with("-a") => (-BigInt::one(), Some(&term[1..])),
                None => (term.parse::<BigInt>().map_err(|_| bad())?, None),
            };
            let exp = match mono {
                None => 0,
                Some("a") => 1,
                Some(m) => m
                    .strip_prefix("a^")
                    .ok_or_else(bad)?
                    .parse::<i64>()
                    .map_err(|_| bad())?,
            };
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

/// JSON-friendly coefficient: a number when it fits in `i64`, a decimal
/// string otherwise.
fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::String(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, coeff_to_json(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TermsVisitor;
        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of [exponent, coefficient] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((e, c)) = seq.next_element::<(i64, serde_json::Value)>()? {
                    let c = coeff_from_json(&c).ok_or_else(|| de::Error::custom("bad coefficient"))?;
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_seq(TermsVisitor)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn trefoil() -> LaurentPoly {
        LaurentPoly::from_terms([(1, -2), (2, -1)])
    }

    #[test]
    fn mul_examples() {
        assert_eq!(lp("1 + a") * lp("1 + -1*a^1"), lp("1 + -1*a^2"));
        let m = LaurentPoly::neg_alpha_pow(3) * LaurentPoly::neg_alpha_pow(-3);
        assert!(m.is_one());
        assert_eq!(lp("a + 1") * lp("a^-1"), lp("1*a^-1 + 1*a^0"));
    }

    #[test]
    fn unit_examples() {
        assert!(LaurentPoly::monomial(-1, 3).is_unit());
        assert!(!lp("1 + a").is_unit());
        assert!(!trefoil().is_unit());
        assert!(!LaurentPoly::zero().is_unit());
        assert!(!LaurentPoly::monomial(2, 0).is_unit());
    }

    #[test]
    fn eval_examples() {
        let r = |x: i64| BigRational::from_integer(x.into());
        assert_eq!(lp("1 + a").eval_int(-1).unwrap(), r(0));
        assert_eq!(trefoil().eval_int(-1).unwrap(), r(1));
        assert_eq!(LaurentPoly::one().eval_int(7).unwrap(), r(1));
        assert_eq!(lp("1*a^-2").eval(&BigRational::new(2.into(), 3.into())).unwrap(), BigRational::new(9.into(), 4.into()));
        assert!(matches!(LaurentPoly::one().eval_int(0), Err(Error::EvalAtZero)));
    }

    #[test]
    fn text_form() {
        assert_eq!(trefoil().to_string(), "-2*a^1 + -1*a^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("2*b^3".parse::<LaurentPoly>().is_err());
        assert!(" + ".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let j = serde_json::to_string(&trefoil()).unwrap();
        assert_eq!(j, "[[1,-2],[2,-1]]");
        let big = LaurentPoly::monomial(BigInt::from(10).pow(30), -4);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn exact_division() {
        let a1 = lp("1 + a");
        let p = &a1.pow(3) * &lp("2*a^-5 + 7*a^2");
        assert_eq!(p.div_exact(&a1.pow(2)), Some(&a1 * &lp("2*a^-5 + 7*a^2")));
        assert_eq!(lp("1 + 2*a^1").div_exact(&a1), None);
        assert_eq!(lp("2").div_exact(&lp("3")), None);
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &lp("1 + a") - &lp("a");
        assert_eq!(p.len(), 1);
        assert!((&p - &p).is_zero());
    }
}
