//! Skein/linking trees expressing `Γ(K_B)` and `Γ(K_G)` through the unknot,
//! the iterated torus knot `C(R)` and the band-sum knot `[H]`.
//!
//! Skein edges combine children as `−α·(Γ₋ + Γ₀)`. Linking edges combine
//! them as `−(1+α⁻¹)(−α)^{lk}·Γ_left·Γ_right`. Leaves evaluate to `1`, `C`
//! and `H`.

use std::fmt;

use crate::homfly::extra_component_factor;
use crate::poly::{LaurentPoly, SkeinElem};
use crate::surgery::SlopeParams;

/// The slope data the trees depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeParams {
    pub q: i64,
    pub r: i64,
    pub t: i64,
}

impl TreeParams {
    /// Twist parameter `qt` of the inner double.
    pub fn qt(&self) -> i64 {
        self.q * self.t
    }

    /// `q(r − t)`
    pub fn hc_exponent(&self) -> i64 {
        self.q * (self.r - self.t)
    }

    /// `−qt`
    pub fn cc_exponent(&self) -> i64 {
        -self.qt()
    }
}

impl From<&SlopeParams> for TreeParams {
    fn from(p: &SlopeParams) -> Self {
        Self { q: p.q, r: p.r, t: p.t }
    }
}

/// Knots and links appearing in the trees. `k`, `l` count clasps, `m`, `n`
/// are twist parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternExpr {
    Unknot,
    /// `C(R)`
    CofR,
    /// `[H]`
    HKnot,
    /// `[D^k_m]`
    BracketD { k: u32, m: i64 },
    /// `[D^l_n ∘ D^k_m]`
    BracketDD { l: u32, n: i64, k: u32, m: i64 },
    /// `[C̄_{2m,2}]`
    BracketC { m: i64 },
    /// `[C̄_{2n,2} ∘ D^k_m]`
    BracketCD { n: i64, k: u32, m: i64 },
    /// `D^k_m(C(R))`
    DofC { k: u32, m: i64 },
    /// `C̄_{2m,2}(C(R))`
    CofC { m: i64 },
}

impl PatternExpr {
    /// Zero-clasp doubles are the unknot.
    fn normalize(self) -> Self {
        match self {
            Self::BracketDD { l: 0, .. } | Self::BracketD { k: 0, .. } | Self::DofC { k: 0, .. } => {
                Self::Unknot
            }
            e => e,
        }
    }
}

fn sub(m: i64) -> String {
    format!("_{{{m}}}")
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dn = |n: i64| if n == 0 { String::new() } else { sub(n) };
        match *self {
            Self::Unknot => write!(f, "U"),
            Self::CofR => write!(f, "C(R)"),
            Self::HKnot => write!(f, "[H]"),
            Self::BracketD { k, m } => write!(f, "[D^{k}{}]", sub(m)),
            Self::BracketDD { l, n, k, m } => write!(f, "[D^{l}{} ∘ D^{k}{}]", dn(n), sub(m)),
            Self::BracketC { m } => write!(f, "[C̄_{{{},2}}]", 2 * m),
            Self::BracketCD { n, k, m } => write!(f, "[C̄_{{{},2}} ∘ D^{k}{}]", 2 * n, sub(m)),
            Self::DofC { k, m } => write!(f, "D^{k}{}(C(R))", sub(m)),
            Self::CofC { m } => write!(f, "C̄_{{{},2}}(C(R))", 2 * m),
        }
    }
}

/// `K_B = [D^1 ∘ D^2_{qt}]`: the twist lands on the inner double.
pub fn kb_root(tp: &TreeParams) -> PatternExpr {
    PatternExpr::BracketDD { l: 1, n: 0, k: 2, m: tp.qt() }
}

/// `K_G = [D^2 ∘ D^1_{qt}]`
pub fn kg_root(tp: &TreeParams) -> PatternExpr {
    PatternExpr::BracketDD { l: 2, n: 0, k: 1, m: tp.qt() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeinTree {
    Leaf(PatternExpr),
    Skein {
        node: PatternExpr,
        minus: Box<SkeinTree>,
        zero: Box<SkeinTree>,
    },
    Linking {
        node: PatternExpr,
        lk: i64,
        left: Box<SkeinTree>,
        right: Box<SkeinTree>,
    },
}

impl SkeinTree {
    pub fn node(&self) -> PatternExpr {
        match self {
            Self::Leaf(e) => *e,
            Self::Skein { node, .. } | Self::Linking { node, .. } => *node,
        }
    }

    /// Boxed linking numbers in pre-order.
    pub fn linking_numbers(&self) -> Vec<i64> {
        let mut out = Vec::new();
        self.visit_linking(&mut out);
        out
    }

    fn visit_linking(&self, out: &mut Vec<i64>) {
        match self {
            Self::Leaf(_) => {}
            Self::Skein { minus, zero, .. } => {
                minus.visit_linking(out);
                zero.visit_linking(out);
            }
            Self::Linking { lk, left, right, .. } => {
                out.push(*lk);
                left.visit_linking(out);
                right.visit_linking(out);
            }
        }
    }

    pub fn leaves(&self) -> Vec<PatternExpr> {
        match self {
            Self::Leaf(e) => vec![*e],
            Self::Skein { minus: a, zero: b, .. } | Self::Linking { left: a, right: b, .. } => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            Self::Leaf(e) => writeln!(f, "{pad}{e}"),
            Self::Skein { node, minus, zero } => {
                writeln!(f, "{pad}{node}  (skein)")?;
                minus.write_indented(f, depth + 1)?;
                zero.write_indented(f, depth + 1)
            }
            Self::Linking { node, lk, left, right } => {
                writeln!(f, "{pad}{node}  (linking, lk = {lk})")?;
                left.write_indented(f, depth + 1)?;
                right.write_indented(f, depth + 1)
            }
        }
    }
}

impl fmt::Display for SkeinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Applies the rewrite rules until only `U`, `C(R)` and `[H]` remain.
pub fn expand(e: PatternExpr, tp: &TreeParams) -> SkeinTree {
    use PatternExpr::*;
    let node = e.normalize();
    let skein = |minus: PatternExpr, zero: PatternExpr| SkeinTree::Skein {
        node,
        minus: Box::new(expand(minus, tp)),
        zero: Box::new(expand(zero, tp)),
    };
    let linking = |lk: i64, left: PatternExpr, right: PatternExpr| SkeinTree::Linking {
        node,
        lk,
        left: Box::new(expand(left, tp)),
        right: Box::new(expand(right, tp)),
    };
    match node {
        Unknot | CofR | HKnot => SkeinTree::Leaf(node),
        BracketDD { l, n, k, m } => skein(BracketDD { l: l - 1, n, k, m }, BracketCD { n, k, m }),
        BracketD { k, m } => skein(BracketD { k: k - 1, m }, BracketC { m }),
        DofC { k, m } => skein(DofC { k: k - 1, m }, CofC { m }),
        // [H] ∪ C(R): lk(B̂, C(R)) = qr, and the two parallel copies add −m
        BracketC { m } => linking(tp.q * tp.r - m, HKnot, CofR),
        BracketCD { n, k, m } => linking(-n, BracketD { k, m }, DofC { k, m }),
        CofC { m } => linking(-m, CofR, CofR),
    }
}

/// Bottom-up evaluation in ℤ[α^{±1}][H, C].
pub fn eval_tree(t: &SkeinTree) -> SkeinElem {
    match t {
        SkeinTree::Leaf(PatternExpr::CofR) => SkeinElem::c(),
        SkeinTree::Leaf(PatternExpr::HKnot) => SkeinElem::h(),
        SkeinTree::Leaf(_) => SkeinElem::one(),
        SkeinTree::Skein { minus, zero, .. } => {
            (eval_tree(minus) + eval_tree(zero)).scale(&LaurentPoly::monomial(-1, 1))
        }
        SkeinTree::Linking { lk, left, right, .. } => {
            let k = &extra_component_factor() * &LaurentPoly::neg_alpha_pow(*lk);
            (eval_tree(left) * eval_tree(right)).scale(&k)
        }
    }
}

fn k(p: LaurentPoly) -> SkeinElem {
    SkeinElem::constant(p)
}

fn alpha_sq_minus_one() -> LaurentPoly {
    LaurentPoly::from_terms([(0, -1), (2, 1)])
}

fn alpha_plus_one() -> LaurentPoly {
    LaurentPoly::from_terms([(0, 1), (1, 1)])
}

/// `(−α)^{q(r−t)}·H·C`
fn hc_term(tp: &TreeParams) -> SkeinElem {
    SkeinElem::term(LaurentPoly::neg_alpha_pow(tp.hc_exponent()), 1, 1)
}

/// `(−α)^{−qt}·C²`
fn cc_term(tp: &TreeParams) -> SkeinElem {
    SkeinElem::term(LaurentPoly::neg_alpha_pow(tp.cc_exponent()), 0, 2)
}

/// `Γ(K_B) = −α + (α+1)(α² − (α²−1)(−α)^{q(r−t)}HC)(α² − (α²−1)(−α)^{−qt}C²)`
pub fn closed_form_kb(tp: &TreeParams) -> SkeinElem {
    let a2 = k(LaurentPoly::monomial(1, 2));
    let f1 = &a2 - &hc_term(tp).scale(&alpha_sq_minus_one());
    let f2 = &a2 - &cc_term(tp).scale(&alpha_sq_minus_one());
    k(LaurentPoly::monomial(-1, 1)) + (f1 * f2).scale(&alpha_plus_one())
}

/// `Γ(K_G) = α² − (α²−1)(α − (α+1)(−α)^{q(r−t)}HC)(α − (α+1)(−α)^{−qt}C²)`
pub fn closed_form_kg(tp: &TreeParams) -> SkeinElem {
    let a = k(LaurentPoly::alpha());
    let f1 = &a - &hc_term(tp).scale(&alpha_plus_one());
    let f2 = &a - &cc_term(tp).scale(&alpha_plus_one());
    k(LaurentPoly::monomial(1, 2)) - (f1 * f2).scale(&alpha_sq_minus_one())
}

/// `Γ(K_B) − Γ(K_G)` in factored form:
/// `α(1+α)²(α²−1)(1 − (−α)^{q(r−t)}HC)(1 − (−α)^{−qt}C²)`.
///
/// The factor `(α²−1)` makes the orientation explicit; the same product with
/// `(1−α²)` is `Γ(K_G) − Γ(K_B)`.
pub fn difference(tp: &TreeParams) -> SkeinElem {
    let prefix = &(&LaurentPoly::alpha() * &alpha_plus_one().pow(2)) * &alpha_sq_minus_one();
    let one = SkeinElem::one();
    ((&one - &hc_term(tp)) * (&one - &cc_term(tp))).scale(&prefix)
}
