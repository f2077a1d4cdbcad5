//! From a slope `p/q` to a self-checked certificate that `Γ(K_B) ≠ Γ(K_G)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};
use crate::homfly::{self, GammaEngine, Oracle};
use crate::poly::{LaurentPoly, SkeinElem};
use crate::skein_tree::{self, TreeParams};
use crate::surgery::{self, GluingMatrix, SlopeParams};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest cable braid (in crossings) for which `Γ(C(R))` is computed directly.
pub const DEFAULT_GAMMA_BUDGET: usize = 64;

/// A rational slope `p/q` with `q > 0`, in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Parse(format!("slope {p}/0 has zero denominator")));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if p.gcd(&q) != 1 {
            return Err(Error::Parse(format!("slope {p}/{q} is not in lowest terms")));
        }
        Ok(Self { p, q })
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad slope {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Self::new(int(p)?, int(q)?),
            None => Self::new(int(s)?, 1),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub s_start: i64,
    pub gamma_budget: usize,
    pub verify_oracle: bool,
    pub oracle_budget: usize,
    pub search_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            s_start: 1,
            gamma_budget: DEFAULT_GAMMA_BUDGET,
            verify_oracle: false,
            oracle_budget: homfly::DEFAULT_ORACLE_BUDGET,
            search_cap: homfly::DEFAULT_SEARCH_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitStatus {
    Unit,
    NonUnit,
    NotComputed,
}

impl Serialize for UnitStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Unit => s.serialize_bool(true),
            Self::NonUnit => s.serialize_bool(false),
            Self::NotComputed => s.serialize_str("not-computed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonzeroReason {
    /// `C(R)` is a positive braid knot of positive genus, whose `Γ` is never
    /// a unit.
    GenusPositiveBraid,
    /// `Γ(C(R))` was computed and is not a unit.
    DirectGammaNonUnit,
}

impl fmt::Display for NonzeroReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GenusPositiveBraid => "genus-positive-braid",
            Self::DirectGammaNonUnit => "direct-gamma-non-unit",
        })
    }
}

fn ratio_pair(r: &surgery::Rational) -> [i64; 2] {
    [*r.numer(), *r.denom()]
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub requested_slope: Slope,
    pub mirror_reduced: bool,
    pub slope: Slope,
    pub params: SlopeParams,
    /// Framings of `(K, K*, K**)` as `[numerator, denominator]`.
    pub induced_slopes: [[i64; 2]; 3],
    pub gluing_matrix: [[i64; 2]; 2],
    pub dual_matrix: [[i64; 2]; 2],
    pub double_dual_matrix: [[i64; 2]; 2],
    pub braid: BraidWord,
    pub strands: usize,
    pub crossings: usize,
    pub euler_char: i64,
    pub genus: i64,
    pub gamma_cr: Option<LaurentPoly>,
    pub gamma_cr_normalized: Option<LaurentPoly>,
    pub gamma_cr_is_unit: UnitStatus,
    pub oracle_agrees: Option<bool>,
    pub kb: SkeinElem,
    pub kg: SkeinElem,
    pub diff: SkeinElem,
    pub diff_nonzero_reason: NonzeroReason,
    pub checks: Vec<String>,
}

impl Certificate {
    /// Re-checks the certificate's own invariants.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::IdentityMismatch(m.to_string()));
        if &self.kb - &self.kg != self.diff {
            return fail("kb - kg != diff");
        }
        if self.diff.is_zero() {
            return fail("difference polynomial is zero");
        }
        match self.diff_nonzero_reason {
            NonzeroReason::GenusPositiveBraid if self.genus < 1 => {
                return fail("genus route claimed with genus < 1")
            }
            NonzeroReason::DirectGammaNonUnit if self.gamma_cr_is_unit != UnitStatus::NonUnit => {
                return fail("direct route claimed without a non-unit Γ(C(R))")
            }
            _ => {}
        }
        if !self.braid.is_positive() || self.braid.closure_components() != 1 {
            return fail("cable braid is not a positive knot braid");
        }
        if braid::bennequin_euler_char(&self.braid)? != self.euler_char || 1 - 2 * self.genus != self.euler_char {
            return fail("euler characteristic / genus mismatch");
        }
        self.params.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn require(ok: bool, what: &str, checks: &mut Vec<String>) -> Result<()> {
    if !ok {
        return Err(Error::IdentityMismatch(what.to_string()));
    }
    checks.push(what.to_string());
    Ok(())
}

/// Runs the full pipeline for one slope. Any failed identity aborts with an
/// error; a returned certificate has passed every check it lists.
pub fn certify_slope(p: i64, q: i64, opts: &CertifyOptions) -> Result<Certificate> {
    let requested = Slope::new(p, q)?;
    let mirror_reduced = requested.p < 0;
    let slope = Slope::new(requested.p.abs(), requested.q)?;
    if slope.p <= 1 {
        return Err(Error::SlopeOutOfRange { p: requested.p, q: requested.q });
    }
    let mut checks = Vec::new();

    let params = surgery::choose_params(slope.p, slope.q, opts.s_start)?;
    let SlopeParams { p, q, r, s, t } = params;

    let a = params.gluing_matrix();
    let dual = surgery::dual_gluing(&a)?;
    let double_dual = surgery::double_dual_gluing(&a)?;
    let z = GluingMatrix::shear(surgery::surface_framing(r, s));
    let z2 = GluingMatrix::shear(surgery::surface_framing(q * r * r, p));
    require(dual == z.mul(&a.inverse()?)?, "dual = Z·A⁻¹", &mut checks)?;
    require(double_dual == z2.mul(&a)?, "double dual = Z'·A", &mut checks)?;
    require(dual.det()? == 1 && double_dual.det()? == 1, "det = 1", &mut checks)?;
    require(a.apply(0, 1)? == (r, s), "A·λ = (r, s)", &mut checks)?;
    require(dual.apply(1, 0)? == (-t, -q), "A*·μ = (−t, −q)", &mut checks)?;

    let slopes = surgery::induced_slopes(&params);
    require(slopes.1 == surgery::Rational::new(t, q), "middle induced slope = t/q", &mut checks)?;

    let word = braid::cable_braid(&params)?;
    require(params.net_twists() == (p - 1) * s - 1, "net twists = (p−1)s − 1", &mut checks)?;
    require(
        word.exponent_sum() == q * q * r * (s - 1) + ((p - 1) * s - 1) * (q - 1),
        "cable exponent sum",
        &mut checks,
    )?;
    require(word.is_positive() && word.closure_components() == 1, "positive knot braid", &mut checks)?;
    let euler_char = braid::bennequin_euler_char(&word)?;
    let genus = braid::genus(&word)?;
    require(genus >= 1, "genus ≥ 1", &mut checks)?;

    let mut gamma_cr = None;
    let mut gamma_cr_normalized = None;
    if word.len() <= opts.gamma_budget {
        let mut engine = GammaEngine::new(opts.search_cap, opts.oracle_budget);
        let g = engine.gamma_positive(&word)?;
        let one = BigRational::from_integer(1.into());
        require(g.gamma.eval_int(-1)? == one, "Γ(C(R))(−1) = 1", &mut checks)?;
        require(
            g.gamma_normalized.terms().all(|(_, c)| !c.is_negative()),
            "Γ̃(C(R)) ≥ 0",
            &mut checks,
        )?;
        gamma_cr = Some(g.gamma);
        gamma_cr_normalized = Some(g.gamma_normalized);
    }

    let mut oracle_agrees = None;
    if opts.verify_oracle {
        if word.len() <= opts.oracle_budget {
            let og = homfly::zeroth_gamma(&Oracle::new(opts.oracle_budget).homfly(&word)?)?;
            let agrees = gamma_cr.as_ref().is_none_or(|g| *g == og);
            require(agrees, "oracle Γ = recursion Γ", &mut checks)?;
            if gamma_cr.is_none() {
                gamma_cr = Some(og);
            }
            oracle_agrees = Some(true);
        } else {
            checks.push(format!("oracle skipped: {} crossings over budget {}", word.len(), opts.oracle_budget));
        }
    }

    let tp = TreeParams::from(&params);
    let kb = skein_tree::eval_tree(&skein_tree::expand(skein_tree::kb_root(&tp), &tp));
    let kg = skein_tree::eval_tree(&skein_tree::expand(skein_tree::kg_root(&tp), &tp));
    let diff = skein_tree::difference(&tp);
    require(kb == skein_tree::closed_form_kb(&tp), "K_B tree = closed form", &mut checks)?;
    require(kg == skein_tree::closed_form_kg(&tp), "K_G tree = closed form", &mut checks)?;
    require(&kb - &kg == diff, "Γ(K_B) − Γ(K_G) = factored difference", &mut checks)?;
    let minus_one = BigRational::from_integer((-1).into());
    let at_minus_one = |e: &SkeinElem| -> Result<bool> {
        let v = e.eval_alpha(&minus_one)?;
        Ok(v.len() == 1 && v.get(&(0, 0)).is_some_and(|x| *x == BigRational::from_integer(1.into())))
    };
    require(at_minus_one(&kb)? && at_minus_one(&kg)?, "Γ(K_B)(−1) = Γ(K_G)(−1) = 1", &mut checks)?;
    require(!diff.is_zero(), "difference is a nonzero polynomial", &mut checks)?;

    let (gamma_cr_is_unit, diff_nonzero_reason) = match &gamma_cr {
        Some(g) => {
            // genus ≥ 1 positive braid knots never have unit Γ
            require(!g.is_unit(), "genus route and direct route agree", &mut checks)?;
            require(
                !diff.substitute(Some(g), None).is_zero(),
                "difference nonzero after substituting Γ(C(R))",
                &mut checks,
            )?;
            (UnitStatus::NonUnit, NonzeroReason::DirectGammaNonUnit)
        }
        None => (UnitStatus::NotComputed, NonzeroReason::GenusPositiveBraid),
    };

    let cert = Certificate {
        schema_version: SCHEMA_VERSION,
        requested_slope: requested,
        mirror_reduced,
        slope,
        params,
        induced_slopes: [ratio_pair(&slopes.0), ratio_pair(&slopes.1), ratio_pair(&slopes.2)],
        gluing_matrix: a.rows(),
        dual_matrix: dual.rows(),
        double_dual_matrix: double_dual.rows(),
        strands: word.strands(),
        crossings: word.len(),
        braid: word,
        euler_char,
        genus,
        gamma_cr,
        gamma_cr_normalized,
        gamma_cr_is_unit,
        oracle_agrees,
        kb,
        kg,
        diff,
        diff_nonzero_reason,
        checks,
    };
    cert.verify()?;
    Ok(cert)
}

#[derive(Debug)]
pub struct BatchEntry {
    pub slope: String,
    pub outcome: Result<Certificate, String>,
}

#[derive(Debug, Default)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
}

impl BatchReport {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_ok())
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.outcome.is_err()).count()
    }
}

impl fmt::Display for BatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<10} {:<6} {:>6} {:>9}  detail", "slope", "status", "genus", "crossings")?;
        for e in &self.entries {
            match &e.outcome {
                Ok(c) => writeln!(
                    f,
                    "{:<10} {:<6} {:>6} {:>9}  {}",
                    e.slope, "ok", c.genus, c.crossings, c.diff_nonzero_reason
                )?,
                Err(msg) => writeln!(f, "{:<10} {:<6} {:>6} {:>9}  {msg}", e.slope, "FAIL", "-", "-")?,
            }
        }
        write!(
            f,
            "{} slopes, {} verified, {} failed",
            self.entries.len(),
            self.entries.len() - self.failures(),
            self.failures()
        )
    }
}

/// Certifies each slope independently; failures are recorded per entry.
pub fn batch<S: AsRef<str> + Sync>(slopes: &[S], opts: &CertifyOptions) -> BatchReport {
    let entries = slopes
        .par_iter()
        .map(|raw| {
            let raw = raw.as_ref().trim();
            let outcome = raw
                .parse::<Slope>()
                .and_then(|s| certify_slope(s.p, s.q, opts))
                .map_err(|e| e.to_string());
            BatchEntry {
                slope: raw.to_string(),
                outcome,
            }
        })
        .collect();
    BatchReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_parsing() {
        assert_eq!("3/2".parse::<Slope>().unwrap(), Slope { p: 3, q: 2 });
        assert_eq!("5".parse::<Slope>().unwrap(), Slope { p: 5, q: 1 });
        assert_eq!("3/-2".parse::<Slope>().unwrap(), Slope { p: -3, q: 2 });
        assert!("4/2".parse::<Slope>().is_err());
        assert!("1/0".parse::<Slope>().is_err());
        assert!("x".parse::<Slope>().is_err());
    }

    #[test]
    fn trefoil_certificate() {
        let c = certify_slope(2, 1, &CertifyOptions::default()).unwrap();
        assert_eq!((c.params.r, c.params.s, c.params.t), (3, 2, 4));
        assert_eq!(c.braid.to_string(), "2: 1 1 1");
        assert_eq!(c.genus, 1);
        assert_eq!(c.gamma_cr, Some(LaurentPoly::from_terms([(1, -2), (2, -1)])));
        assert_eq!(c.gamma_cr_is_unit, UnitStatus::NonUnit);
        assert_eq!(c.diff_nonzero_reason, NonzeroReason::DirectGammaNonUnit);
    }

    #[test]
    fn genus_route_when_over_budget() {
        let opts = CertifyOptions {
            gamma_budget: 0,
            ..Default::default()
        };
        let c = certify_slope(3, 2, &opts).unwrap();
        assert_eq!((c.params.r, c.params.s, c.params.t), (4, 3, 21));
        assert_eq!((c.strands, c.crossings, c.genus), (6, 37, 16));
        assert_eq!(c.diff_nonzero_reason, NonzeroReason::GenusPositiveBraid);
        assert_eq!(c.gamma_cr_is_unit, UnitStatus::NotComputed);
        assert!(c.to_json().contains("\"gamma_cr_is_unit\": \"not-computed\""));
    }

    #[test]
    fn rejects_small_p() {
        let err = certify_slope(1, 5, &CertifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::SlopeOutOfRange { p: 1, q: 5 }));
        assert!(err.to_string().contains("p = 0 or p = 1"));
        assert!(certify_slope(0, 1, &CertifyOptions::default()).is_err());
    }

    #[test]
    fn negative_slopes_are_mirrored() {
        let c = certify_slope(-3, 2, &CertifyOptions { gamma_budget: 0, ..Default::default() }).unwrap();
        assert!(c.mirror_reduced);
        assert_eq!(c.slope, Slope { p: 3, q: 2 });
        assert_eq!(c.requested_slope, Slope { p: -3, q: 2 });
    }

    #[test]
    fn batch_examples() {
        let opts = CertifyOptions::default();
        let r = batch(&["2/1", "3/1", "5/1"], &opts);
        assert_eq!(r.entries.len(), 3);
        assert!(r.all_verified());
        let empty: [&str; 0] = [];
        assert!(batch(&empty, &opts).entries.is_empty());
        let r = batch(&["1/1"], &opts);
        assert_eq!(r.failures(), 1);
        assert!(!r.all_verified());
    }

    #[test]
    fn deterministic_json() {
        let opts = CertifyOptions::default();
        let a = certify_slope(5, 2, &opts).unwrap().to_json();
        let b = certify_slope(5, 2, &opts).unwrap().to_json();
        assert_eq!(a, b);
    }
}
