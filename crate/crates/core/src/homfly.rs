//! HOMFLYPT invariants of braid closures.
//!
//! Conventions: `v⁻¹·P(L+) − v·P(L−) = z·P(L0)`, `P(unknot) = 1`, and the
//! zeroth coefficient polynomial `Γ_L(α)` is the `z⁰` part of
//! `(z/v)^{|L|−1}·P_L` with `v² = −α`. Under these conventions `Γ_K(−1) = 1`
//! for every knot `K`.
//!
//! Two independent engines:
//! - [`Oracle`] computes the full `P_L(v, z)` of any braid closure by
//!   switching crossings toward a descending diagram. Exponential, budgeted.
//! - [`GammaEngine`] computes `Γ` of positive braid closures directly, using
//!   split and connected-sum reductions and the `Γ` skein relation at a
//!   square `σ_i²` found by conjugation and braid-relation rewriting.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::braid::{bennequin_euler_char, BraidWord};
use crate::error::{Error, Result};
use crate::poly::{BiLaurent, LaurentPoly};

pub const DEFAULT_ORACLE_BUDGET: usize = 14;
pub const DEFAULT_SEARCH_CAP: usize = 100_000;
pub const DEFAULT_MEMO_CAP: usize = 1_000_000;
/// Environment variable overriding the memo table size cap.
pub const MEMO_CAP_ENV: &str = "SURGERY_CERT_MEMO_CAP";

pub fn memo_cap_from_env() -> usize {
    std::env::var(MEMO_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MEMO_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomflyResult {
    pub poly: BiLaurent,
    pub components: usize,
}

/// `δ = (v⁻¹ − v)/z`, the value of a split unknot summand.
fn delta() -> BiLaurent {
    &BiLaurent::monomial(1, -1, -1) - &BiLaurent::monomial(1, 1, -1)
}

/// Index of the first crossing met from below on the basepoint walk of the
/// closure, or `None` when the diagram is descending.
///
/// Components are walked in order of their smallest top position; for a
/// positive letter the strand moving from position `i` to `i+1` passes over.
fn first_ascending_crossing(w: &BraidWord) -> Option<usize> {
    let letters = w.letters();
    let mut seen = vec![false; letters.len()];
    let mut started = vec![false; w.strands()];
    for start in 0..w.strands() {
        if started[start] {
            continue;
        }
        let mut pos = start;
        loop {
            started[pos] = true;
            for (k, &l) in letters.iter().enumerate() {
                let i = l.unsigned_abs() as usize - 1;
                if pos != i && pos != i + 1 {
                    continue;
                }
                let rightward = pos == i;
                if !seen[k] {
                    seen[k] = true;
                    if (l > 0) != rightward {
                        return Some(k);
                    }
                }
                pos = if rightward { i + 1 } else { i };
            }
            if pos == start {
                break;
            }
        }
    }
    None
}

/// Exact HOMFLYPT evaluator by skein recursion toward descending diagrams.
///
/// Each step either switches the first ascending crossing (same length, one
/// fewer ascending crossing) or smooths it (one fewer letter), so the
/// recursion terminates. Descending closures are unlinks.
pub struct Oracle {
    budget: usize,
    memo_cap: usize,
    memo: HashMap<BraidWord, BiLaurent>,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new(DEFAULT_ORACLE_BUDGET)
    }
}

impl Oracle {
    pub fn new(budget: usize) -> Self {
        Self {
            budget,
            memo_cap: memo_cap_from_env(),
            memo: HashMap::new(),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn homfly(&mut self, w: &BraidWord) -> Result<HomflyResult> {
        if w.len() > self.budget {
            return Err(Error::OracleBudget {
                crossings: w.len(),
                budget: self.budget,
            });
        }
        Ok(HomflyResult {
            poly: self.eval(w),
            components: w.closure_components(),
        })
    }

    fn eval(&mut self, w: &BraidWord) -> BiLaurent {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let p = match first_ascending_crossing(w) {
            None => delta().pow(w.closure_components() as u32 - 1),
            Some(k) => {
                let l = w.letters()[k];
                let mut switched = w.letters().to_vec();
                switched[k] = -l;
                let mut smoothed = w.letters().to_vec();
                smoothed.remove(k);
                let ps = self.eval(&w.with_letters(switched));
                let p0 = self.eval(&w.with_letters(smoothed));
                if l > 0 {
                    // P+ = v²·P− + v·z·P0
                    &ps.shift(2, 0) + &p0.shift(1, 1)
                } else {
                    // P− = v⁻²·P+ − v⁻¹·z·P0
                    &ps.shift(-2, 0) - &p0.shift(-1, 1)
                }
            }
        };
        if self.memo.len() < self.memo_cap {
            self.memo.insert(w.clone(), p.clone());
        }
        p
    }
}

/// HOMFLYPT polynomial of a braid closure with the default crossing budget.
pub fn homfly_oracle(w: &BraidWord) -> Result<HomflyResult> {
    Oracle::default().homfly(w)
}

/// Extracts `Γ_L(α)` from `P_L(v, z)`.
pub fn zeroth_gamma(h: &HomflyResult) -> Result<LaurentPoly> {
    let c = h.components as i64;
    let scaled = h.poly.shift(-(c - 1), c - 1);
    if let Some(((v, z), _)) = scaled.terms().find(|((_, z), _)| *z < 0) {
        return Err(Error::IdentityMismatch(format!(
            "negative z-power v^{v} z^{z} after normalising {}",
            h.poly
        )));
    }
    let mut gamma = LaurentPoly::zero();
    for (v, coeff) in scaled.z_coeff(0) {
        if v % 2 != 0 {
            return Err(Error::OddPower(h.poly.to_string()));
        }
        // v^{2k} = (−α)^k
        let k = v / 2;
        let sign = if k % 2 == 0 { coeff } else { -coeff };
        gamma += &LaurentPoly::monomial(sign, k);
    }
    Ok(gamma)
}

/// `−(1 + α⁻¹)`: the factor contributed by each extra link component.
pub fn extra_component_factor() -> LaurentPoly {
    LaurentPoly::from_terms([(-1, -1), (0, -1)])
}

/// `Γ_L = (−1)^{|L|−1} (1+α⁻¹)^{|L|−1} (−α)^{lk(L)} ∏ Γ_{K_i}`.
pub fn gamma_linking_formula(component_gammas: &[LaurentPoly], total_linking: i64) -> LaurentPoly {
    let extra = component_gammas.len().saturating_sub(1) as u32;
    let mut out = extra_component_factor().pow(extra);
    if component_gammas.len() > 1 {
        out = &out * &LaurentPoly::neg_alpha_pow(total_linking);
    }
    component_gammas.iter().fold(out, |acc, g| &acc * g)
}

/// `Γ` of the `n`-component unlink.
pub fn unlink_gamma(n: usize) -> LaurentPoly {
    extra_component_factor().pow(n.saturating_sub(1) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaResult {
    pub gamma: LaurentPoly,
    pub gamma_normalized: LaurentPoly,
    pub split_components: usize,
    pub euler_char: i64,
    pub components: usize,
}

/// `(α+1)^{s−1} (−α)^{(−χ+2−|L|)/2}`, the factor with `Γ = factor · Γ̃`.
pub fn normalization_factor(split_components: usize, euler_char: i64, components: usize) -> LaurentPoly {
    let exp = -euler_char + 2 - components as i64;
    debug_assert_eq!(exp.rem_euclid(2), 0);
    let a1 = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    &a1.pow(split_components.saturating_sub(1) as u32) * &LaurentPoly::neg_alpha_pow(exp / 2)
}

/// Split a word at an absent generator `i` (1-based) into the sub-braids on
/// positions `1..=i` and `i+1..=n`.
fn split_at(w: &BraidWord, i: usize, skip: Option<usize>) -> (BraidWord, BraidWord) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &l) in w.letters().iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let g = l.unsigned_abs() as usize;
        if g < i {
            left.push(l);
        } else {
            debug_assert!(g > i);
            right.push(l.signum() * (g - i) as i32);
        }
    }
    (
        BraidWord::new_unchecked(i, left),
        BraidWord::new_unchecked(w.strands() - i, right),
    )
}

/// Sorts commuting neighbours so the smaller generator comes first.
fn commutation_normal(letters: &mut [i32]) {
    let mut changed = true;
    while changed {
        changed = false;
        for k in 1..letters.len() {
            let (a, b) = (letters[k - 1], letters[k]);
            if (a.abs() - b.abs()).abs() >= 2 && a.abs() > b.abs() {
                letters.swap(k - 1, k);
                changed = true;
            }
        }
    }
}

/// Memo key: lexicographically least commutation-normalised rotation.
pub fn canonical_key(w: &BraidWord) -> BraidWord {
    let letters = w.letters();
    let mut best: Option<Vec<i32>> = None;
    for r in 0..letters.len().max(1) {
        let mut rot: Vec<i32> = letters[r..].iter().chain(&letters[..r]).copied().collect();
        commutation_normal(&mut rot);
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    w.with_letters(best.unwrap_or_default())
}

fn min_rotation(letters: &[i32]) -> Vec<i32> {
    (0..letters.len().max(1))
        .map(|r| letters[r..].iter().chain(&letters[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Breadth-first search over conjugates, commutations and braid relations
/// for a cyclic word containing two equal adjacent letters. On success the
/// returned word is equivalent under closure and ends in `σ_i σ_i`.
pub fn find_square(letters: &[i32], cap: usize) -> Option<Vec<i32>> {
    let len = letters.len();
    if len < 2 {
        return None;
    }
    let start = min_rotation(letters);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if let Some(k) = (0..len).find(|&k| w[k] == w[(k + 1) % len]) {
            let r = (k + 2) % len;
            return Some(w[r..].iter().chain(&w[..r]).copied().collect());
        }
        let mut push = |next: Vec<i32>, seen: &mut HashSet<Vec<i32>>| {
            let key = min_rotation(&next);
            if seen.len() < cap && seen.insert(key.clone()) {
                queue.push_back(key);
            }
        };
        for k in 0..len {
            let (k1, k2) = ((k + 1) % len, (k + 2) % len);
            let (a, b) = (w[k], w[k1]);
            if (a.abs() - b.abs()).abs() >= 2 {
                let mut n = w.clone();
                n.swap(k, k1);
                push(n, &mut seen);
            }
            if len >= 3 && w[k2] == a && (a.abs() - b.abs()).abs() == 1 && a.signum() == b.signum() {
                let mut n = w.clone();
                n[k] = b;
                n[k1] = a;
                n[k2] = b;
                push(n, &mut seen);
            }
        }
    }
    None
}

/// `Γ` of positive braid closures by the reductions described in the module
/// docs, memoised on [`canonical_key`].
pub struct GammaEngine {
    search_cap: usize,
    memo_cap: usize,
    memo: HashMap<BraidWord, LaurentPoly>,
    oracle: Oracle,
    oracle_fallbacks: usize,
}

impl Default for GammaEngine {
    fn default() -> Self {
        Self::new(DEFAULT_SEARCH_CAP, DEFAULT_ORACLE_BUDGET)
    }
}

impl GammaEngine {
    pub fn new(search_cap: usize, oracle_budget: usize) -> Self {
        Self {
            search_cap,
            memo_cap: memo_cap_from_env(),
            memo: HashMap::new(),
            oracle: Oracle::new(oracle_budget),
            oracle_fallbacks: 0,
        }
    }

    /// Number of subproblems that needed the oracle because no square was
    /// found within the search cap.
    pub fn oracle_fallbacks(&self) -> usize {
        self.oracle_fallbacks
    }

    pub fn gamma_positive(&mut self, w: &BraidWord) -> Result<GammaResult> {
        let euler_char = bennequin_euler_char(w)?;
        let gamma = self.gamma(w)?;
        let split_components = w.split_components();
        let components = w.closure_components();
        let factor = normalization_factor(split_components, euler_char, components);
        let gamma_normalized = gamma.div_exact(&factor).ok_or_else(|| {
            Error::IdentityMismatch(format!("Γ = {gamma} is not divisible by {factor} for {w}"))
        })?;
        Ok(GammaResult {
            gamma,
            gamma_normalized,
            split_components,
            euler_char,
            components,
        })
    }

    /// `Γ` only; the word must be positive.
    pub fn gamma(&mut self, w: &BraidWord) -> Result<LaurentPoly> {
        if !w.is_positive() {
            return Err(Error::NonPositiveBraid);
        }
        self.eval(w)
    }

    fn eval(&mut self, w: &BraidWord) -> Result<LaurentPoly> {
        if w.is_empty() {
            return Ok(unlink_gamma(w.strands()));
        }
        let key = canonical_key(w);
        if let Some(g) = self.memo.get(&key) {
            return Ok(g.clone());
        }
        let g = self.reduce(&key)?;
        if self.memo.len() < self.memo_cap {
            self.memo.insert(key, g.clone());
        }
        Ok(g)
    }

    fn reduce(&mut self, w: &BraidWord) -> Result<LaurentPoly> {
        let mut count = vec![0usize; w.strands() - 1];
        for &l in w.letters() {
            count[l as usize - 1] += 1;
        }
        if let Some(i) = count.iter().position(|&c| c == 0) {
            let (left, right) = split_at(w, i + 1, None);
            let g = &self.eval(&left)? * &self.eval(&right)?;
            return Ok(&g * &extra_component_factor());
        }
        if let Some(i) = count.iter().position(|&c| c == 1) {
            let k = w.letters().iter().position(|&l| l as usize == i + 1).unwrap();
            let (left, right) = split_at(w, i + 1, Some(k));
            return Ok(&self.eval(&left)? * &self.eval(&right)?);
        }
        match find_square(w.letters(), self.search_cap) {
            Some(sq) => {
                let n = sq.len();
                let minus = w.with_letters(sq[..n - 2].to_vec());
                let zero = w.with_letters(sq[..n - 1].to_vec());
                let g_minus = self.eval(&minus)?;
                let neg_alpha = LaurentPoly::monomial(-1, 1);
                if zero.closure_components() > minus.closure_components() {
                    let g_zero = self.eval(&zero)?;
                    Ok(&neg_alpha * &(&g_minus + &g_zero))
                } else {
                    Ok(&neg_alpha * &g_minus)
                }
            }
            None => {
                self.oracle_fallbacks += 1;
                let nodes = self.search_cap;
                self.oracle
                    .homfly(w)
                    .and_then(|h| zeroth_gamma(&h))
                    .map_err(|e| Error::SquareSearch {
                        word: w.to_string(),
                        nodes,
                        fallback: e.to_string(),
                    })
            }
        }
    }
}

/// `Γ` and `Γ̃` of a positive braid closure with default settings.
pub fn gamma_positive(w: &BraidWord) -> Result<GammaResult> {
    GammaEngine::default().gamma_positive(w)
}
