use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An element of ℤ[v^{±1}, z^{±1}], keyed by `(v-exponent, z-exponent)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, v_exp: i64, z_exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((v_exp, z_exp), coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c.into());
        }
        p
    }

    fn add_term(&mut self, key: (i64, i64), coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Multiplies by v^a z^b.
    pub fn shift(&self, v_by: i64, z_by: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((v, z), c)| ((v + v_by, z + z_by), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficient of z^k as a map from v-exponent to coefficient.
    pub fn z_coeff(&self, k: i64) -> BTreeMap<i64, BigInt> {
        self.terms
            .iter()
            .filter(|((_, z), _)| *z == k)
            .map(|((v, _), c)| (*v, c.clone()))
            .collect()
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((v, z), c)| format!("{c}*v^{v}*z^{z}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiLaurent({self})")
    }
}

impl Add<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for ((v1, z1), c1) in &self.terms {
            for ((v2, z2), c2) in &rhs.terms {
                out.add_term((v1 + v2, z1 + z2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let delta = &BiLaurent::monomial(1, -1, -1) - &BiLaurent::monomial(1, 1, -1);
        let sq = &delta * &delta;
        assert_eq!(
            sq,
            BiLaurent::from_terms([((-2, -2), 1), ((0, -2), -2), ((2, -2), 1)])
        );
        assert!((&sq - &sq).is_zero());
        assert_eq!(delta.pow(0), BiLaurent::one());
        assert_eq!(delta.shift(1, 1), BiLaurent::from_terms([((0, 0), 1), ((2, 0), -1)]));
        assert_eq!(sq.z_coeff(-2).len(), 3);
    }
}
