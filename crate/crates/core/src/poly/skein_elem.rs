use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::LaurentPoly;
use crate::error::Result;

/// An element of ℤ[α^{±1}][H, C], keyed by `(deg_H, deg_C)`.
///
/// `H` stands for the zeroth coefficient polynomial of the band-sum knot,
/// `C` for that of the iterated torus knot. Neither is ever computed; they
/// stay formal until substituted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SkeinElem {
    terms: BTreeMap<(u32, u32), LaurentPoly>,
}

impl SkeinElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn h() -> Self {
        Self::term(LaurentPoly::one(), 1, 0)
    }

    pub fn c() -> Self {
        Self::term(LaurentPoly::one(), 0, 1)
    }

    /// `coeff · H^h · C^c`
    pub fn term(coeff: LaurentPoly, h: u32, c: u32) -> Self {
        let mut s = Self::zero();
        s.add_term((h, c), &coeff);
        s
    }

    fn add_term(&mut self, key: (u32, u32), coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &LaurentPoly)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, h: u32, c: u32) -> LaurentPoly {
        self.terms.get(&(h, c)).cloned().unwrap_or_default()
    }

    /// The coefficient when the element has no `H` or `C` dependence.
    pub fn as_constant(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, k: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(*key, &(c * k));
        }
        out
    }

    /// Substitutes `C ↦ cval` and, when given, `H ↦ hval`.
    pub fn substitute(&self, cval: Option<&LaurentPoly>, hval: Option<&LaurentPoly>) -> SkeinElem {
        let mut out = Self::zero();
        for ((h, c), coeff) in &self.terms {
            let mut coeff = coeff.clone();
            let (mut h_left, mut c_left) = (*h, *c);
            if let Some(cv) = cval {
                coeff = &coeff * &cv.pow(c_left);
                c_left = 0;
            }
            if let Some(hv) = hval {
                coeff = &coeff * &hv.pow(h_left);
                h_left = 0;
            }
            out.add_term((h_left, c_left), &coeff);
        }
        out
    }

    /// Substitutes both indeterminates, collapsing to a Laurent polynomial.
    pub fn evaluate(&self, cval: &LaurentPoly, hval: &LaurentPoly) -> LaurentPoly {
        self.substitute(Some(cval), Some(hval))
            .as_constant()
            .expect("full substitution leaves no indeterminates")
    }

    /// Evaluates every coefficient at `α = x`, keeping `H` and `C` formal.
    /// Zero results are dropped.
    pub fn eval_alpha(&self, x: &BigRational) -> Result<BTreeMap<(u32, u32), BigRational>> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = c.eval(x)?;
            if !num_traits::Zero::is_zero(&v) {
                out.insert(*k, v);
            }
        }
        Ok(out)
    }
}

impl From<LaurentPoly> for SkeinElem {
    fn from(c: LaurentPoly) -> Self {
        Self::constant(c)
    }
}

fn monomial_label(h: u32, c: u32) -> String {
    let mut s = String::new();
    match h {
        0 => {}
        1 => s.push_str("*H"),
        _ => s.push_str(&format!("*H^{h}")),
    }
    match c {
        0 => {}
        1 => s.push_str("*C"),
        _ => s.push_str(&format!("*C^{c}")),
    }
    s
}

impl fmt::Display for SkeinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((h, c), coeff)| format!("({coeff}){}", monomial_label(*h, *c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SkeinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkeinElem({self})")
    }
}

/// JSON: `[{"h":i,"c":j,"coeff":[[exp,coeff],...]}, ...]` in `(h, c)` order.
impl Serialize for SkeinElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            h: u32,
            c: u32,
            coeff: &'a LaurentPoly,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((h, c), coeff) in &self.terms {
            seq.serialize_element(&Entry { h: *h, c: *c, coeff })?;
        }
        seq.end()
    }
}

impl Add<&SkeinElem> for &SkeinElem {
    type Output = SkeinElem;
    fn add(self, rhs: &SkeinElem) -> SkeinElem {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub<&SkeinElem> for &SkeinElem {
    type Output = SkeinElem;
    fn sub(self, rhs: &SkeinElem) -> SkeinElem {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Neg for &SkeinElem {
    type Output = SkeinElem;
    fn neg(self) -> SkeinElem {
        SkeinElem::zero() - self
    }
}

impl Mul<&SkeinElem> for &SkeinElem {
    type Output = SkeinElem;
    fn mul(self, rhs: &SkeinElem) -> SkeinElem {
        let mut out = SkeinElem::zero();
        for ((h1, c1), x) in &self.terms {
            for ((h2, c2), y) in &rhs.terms {
                out.add_term((h1 + h2, c1 + c2), &(x * y));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SkeinElem> for SkeinElem {
            type Output = SkeinElem;
            fn $m(self, rhs: SkeinElem) -> SkeinElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SkeinElem> for SkeinElem {
            type Output = SkeinElem;
            fn $m(self, rhs: &SkeinElem) -> SkeinElem {
                (&self).$m(rhs)
            }
        }
        impl $tr<SkeinElem> for &SkeinElem {
            type Output = SkeinElem;
            fn $m(self, rhs: SkeinElem) -> SkeinElem {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SkeinElem {
    type Output = SkeinElem;
    fn neg(self) -> SkeinElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_examples() {
        let hc = SkeinElem::h() * SkeinElem::c();
        let one = LaurentPoly::one();
        assert_eq!(hc.evaluate(&one, &one), one);

        let tre = LaurentPoly::from_terms([(1, -2), (2, -1)]);
        let c2 = SkeinElem::c() * SkeinElem::c();
        let got = c2.substitute(Some(&tre), None).as_constant().unwrap();
        assert_eq!(got, LaurentPoly::from_terms([(2, 4), (3, 4), (4, 1)]));

        let e = &hc + &SkeinElem::constant(LaurentPoly::alpha());
        assert_eq!(e.substitute(None, None), e);
    }

    #[test]
    fn partial_substitution_keeps_h() {
        let e = SkeinElem::h() * SkeinElem::c() * SkeinElem::c();
        let two = LaurentPoly::from(2);
        let got = e.substitute(Some(&two), None);
        assert_eq!(got, SkeinElem::term(LaurentPoly::from(4), 1, 0));
    }

    #[test]
    fn cancellation_drops_terms() {
        let e = SkeinElem::h() - SkeinElem::h();
        assert!(e.is_zero());
        assert_eq!(e.as_constant(), Some(LaurentPoly::zero()));
        assert_eq!(SkeinElem::h().as_constant(), None);
    }

    #[test]
    fn display_and_json() {
        let e = SkeinElem::term(LaurentPoly::alpha(), 1, 2) + SkeinElem::one();
        assert_eq!(e.to_string(), "(1*a^0) + (1*a^1)*H*C^2");
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"[{"h":0,"c":0,"coeff":[[0,1]]},{"h":1,"c":2,"coeff":[[1,1]]}]"#
        );
    }
}
