//! SL(2,ℤ) bookkeeping for surgery duals and double duals.
//!
//! A gluing matrix `A = [[p, r], [q, s]]` sends the meridian and longitude of
//! the surgery solid torus to `p·μ + q·λ` and `r·μ + s·λ` respectively.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::braid;
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingMatrix {
    pub a11: i64,
    pub a12: i64,
    pub a21: i64,
    pub a22: i64,
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow("gluing matrix arithmetic"))
}

impl GluingMatrix {
    /// Validates `det = 1`.
    pub fn new(a11: i64, a12: i64, a21: i64, a22: i64) -> Result<Self> {
        let m = Self::raw(a11, a12, a21, a22);
        let det = m.det()?;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(m)
    }

    pub(crate) const fn raw(a11: i64, a12: i64, a21: i64, a22: i64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// Upper unitriangular shear `[[1, k], [0, 1]]`.
    pub fn shear(k: i64) -> Self {
        Self::raw(1, k, 0, 1)
    }

    pub fn det(&self) -> Result<i64> {
        ck(ck(self.a11.checked_mul(self.a22))?.checked_sub(ck(self.a12.checked_mul(self.a21))?))
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Result<Self> {
        self.check_unimodular()?;
        Ok(Self::raw(self.a22, ck(self.a12.checked_neg())?, ck(self.a21.checked_neg())?, self.a11))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let dot = |a: i64, b: i64, c: i64, d: i64| -> Result<i64> {
            ck(ck(a.checked_mul(b))?.checked_add(ck(c.checked_mul(d))?))
        };
        Ok(Self::raw(
            dot(self.a11, o.a11, self.a12, o.a21)?,
            dot(self.a11, o.a12, self.a12, o.a22)?,
            dot(self.a21, o.a11, self.a22, o.a21)?,
            dot(self.a21, o.a12, self.a22, o.a22)?,
        ))
    }

    /// `A · (x, y)ᵀ`
    pub fn apply(&self, x: i64, y: i64) -> Result<(i64, i64)> {
        let m = self.mul(&Self::raw(x, 0, y, 0))?;
        Ok((m.a11, m.a21))
    }

    fn check_unimodular(&self) -> Result<()> {
        match self.det()? {
            1 => Ok(()),
            d => Err(Error::NotUnimodular(d)),
        }
    }

    /// `[[a11, a12], [a21, a22]]` as nested rows.
    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

/// Gluing map of the dual knot, expressed in its Seifert framing:
/// `[[s(1−qr), qr²], [−q, p]]`.
pub fn dual_gluing(a: &GluingMatrix) -> Result<GluingMatrix> {
    a.check_unimodular()?;
    let (p, r, q, s) = (a.a11, a.a12, a.a21, a.a22);
    let qr = ck(q.checked_mul(r))?;
    Ok(GluingMatrix::raw(
        ck(s.checked_mul(ck(1i64.checked_sub(qr))?))?,
        ck(qr.checked_mul(r))?,
        ck(q.checked_neg())?,
        p,
    ))
}

/// Gluing map of the double dual: `[[p(1+q²r²), r(1+pqrs)], [q, s]]`.
pub fn double_dual_gluing(a: &GluingMatrix) -> Result<GluingMatrix> {
    a.check_unimodular()?;
    let (p, r, q, s) = (a.a11, a.a12, a.a21, a.a22);
    let qr = ck(q.checked_mul(r))?;
    let pqrs = ck(ck(qr.checked_mul(p))?.checked_mul(s))?;
    Ok(GluingMatrix::raw(
        ck(p.checked_mul(ck(ck(qr.checked_mul(qr))?.checked_add(1))?))?,
        ck(r.checked_mul(ck(pqrs.checked_add(1))?))?,
        q,
        s,
    ))
}

/// Framing shift picked up by an `(r, s)`-cable from its cabling torus.
pub fn surface_framing(r: i64, s: i64) -> i64 {
    r * s
}

/// The integer data `(p, q, r, s, t)` with `ps − qr = 1` and `t = −s(1 − qr)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl SlopeParams {
    /// Builds from `(p, q, r, s)`, computing `t`, and checks the working range.
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        let t = s
            .checked_mul(q.checked_mul(r).and_then(|qr| 1i64.checked_sub(qr)).ok_or(Error::Overflow("t"))?)
            .and_then(i64::checked_neg)
            .ok_or(Error::Overflow("t"))?;
        let params = Self { p, q, r, s, t };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { p, q, r, s, t } = *self;
        let bad = |m: String| Err(Error::InvalidParams(m));
        if p <= 1 || q < 1 {
            return bad(format!("need p > 1 and q >= 1, got p={p}, q={q}"));
        }
        if p.gcd(&q) != 1 {
            return bad(format!("gcd({p}, {q}) != 1"));
        }
        if s < 1 || r < 0 {
            return bad(format!("need s >= 1 and r >= 0, got r={r}, s={s}"));
        }
        if p.checked_mul(s).zip(q.checked_mul(r)).map(|(a, b)| a - b) != Some(1) {
            return bad(format!("ps - qr != 1 for p={p}, q={q}, r={r}, s={s}"));
        }
        if Some(t) != q.checked_mul(r).and_then(|qr| s.checked_mul(qr - 1)) {
            return bad(format!("t != -s(1 - qr): t={t}"));
        }
        Ok(())
    }

    pub fn gluing_matrix(&self) -> GluingMatrix {
        GluingMatrix::raw(self.p, self.r, self.q, self.s)
    }

    /// Letters of root-twist blocks added after cabling: `t − q·r(s−1)`.
    pub fn net_twists(&self) -> i64 {
        self.t - self.q * self.r * (self.s - 1)
    }
}

/// Framings of `(K, K*, K**)` read as a three-component link:
/// `p/q`, `−s(1−qr)/q = t/q` and `p(1+q²r²)/q`.
pub fn induced_slopes(params: &SlopeParams) -> (Rational, Rational, Rational) {
    let SlopeParams { p, q, r, s, .. } = *params;
    (
        Rational::new(p, q),
        Rational::new(-s * (1 - q * r), q),
        Rational::new(p * (1 + q * q * r * r), q),
    )
}

/// Smallest admissible `s ≥ max(1, s_start)` solving `ps − qr = 1` whose
/// cable braid closes to a nontrivial knot (Euler characteristic below 1).
pub fn choose_params(p: i64, q: i64, s_start: i64) -> Result<SlopeParams> {
    if p <= 1 || q < 1 {
        return Err(Error::SlopeOutOfRange { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParams(format!("gcd({p}, {q}) != 1")));
    }
    let mut s = s_start.max(1);
    while (p * s - 1).rem_euclid(q) != 0 {
        s += 1;
    }
    loop {
        let num = p.checked_mul(s).ok_or(Error::Overflow("choose_params"))? - 1;
        debug_assert_eq!(num.rem_euclid(q), 0);
        let params = SlopeParams::new(p, q, num / q, s)?;
        let word = braid::cable_braid(&params)?;
        if braid::bennequin_euler_char(&word)? < 1 {
            return Ok(params);
        }
        s += q;
    }
}
