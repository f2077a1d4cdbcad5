//! Braid words, their closures, and the positive braid for the iterated
//! torus knot `C_{t,q}(T_{r,s})`.
//!
//! A letter `i > 0` is the Artin generator σ_i (a positive crossing between
//! positions `i` and `i+1`), `-i` its inverse.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surgery::SlopeParams;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("need at least one strand".into()));
        }
        if let Some(&l) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(Error::InvalidBraid(format!(
                "letter {l} out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, letters })
    }

    pub(crate) fn new_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(Self::new(strands, letters.clone()).is_ok());
        Self { strands, letters }
    }

    pub fn trivial(strands: usize) -> Self {
        Self::new_unchecked(strands.max(1), vec![])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// `perm[i]` is the bottom position reached by the strand starting at top
    /// position `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at = (0..self.strands).collect::<Vec<_>>(); // position -> strand
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, strand) in at.into_iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Closure component index of each top position, numbered in order of
    /// first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut label = vec![usize::MAX; self.strands];
        let mut next = 0;
        for start in 0..self.strands {
            if label[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while label[i] == usize::MAX {
                label[i] = next;
                i = perm[i];
            }
            next += 1;
        }
        label
    }

    pub fn closure_components(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Total linking number of the closure: half the signed count of
    /// crossings between distinct components.
    pub fn total_linking(&self) -> i64 {
        let labels = self.component_labels();
        let mut at: Vec<usize> = (0..self.strands).map(|i| labels[i]).collect();
        let mut twice = 0i64;
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            if at[i] != at[i + 1] {
                twice += l.signum() as i64;
            }
            at.swap(i, i + 1);
        }
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    }

    /// Number of split factors visible in the word: one plus the number of
    /// generators that never occur.
    pub fn split_components(&self) -> usize {
        let mut used = vec![false; self.strands.saturating_sub(1)];
        for &l in &self.letters {
            used[l.unsigned_abs() as usize - 1] = true;
        }
        1 + used.iter().filter(|u| !**u).count()
    }

    /// The word read backwards; its closure is the orientation reverse.
    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self::new_unchecked(self.strands, letters)
    }

    pub fn with_letters(&self, letters: Vec<i32>) -> Self {
        Self::new_unchecked(self.strands, letters)
    }

    pub fn closure_info(&self) -> ClosureInfo {
        let components = self.closure_components();
        let euler_char = self.strands as i64 - self.exponent_sum();
        let genus = (components == 1 && self.is_positive()).then(|| (1 - euler_char) / 2);
        ClosureInfo {
            components,
            euler_char,
            genus,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("braid word needs 'strands:' prefix: {s:?}")))?;
        let strands = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad strand count in {s:?}")))?;
        let letters = rest
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureInfo {
    pub components: usize,
    pub euler_char: i64,
    pub genus: Option<i64>,
}

/// `(σ_1 ⋯ σ_{s−1})^r` on `s` strands, closing to `T_{r,s}`.
pub fn torus_braid(r: i64, s: i64) -> Result<BraidWord> {
    if r < 0 || s < 1 {
        return Err(Error::InvalidBraid(format!("torus braid needs r >= 0, s >= 1, got ({r}, {s})")));
    }
    let block: Vec<i32> = (1..s as i32).collect();
    let letters = block.repeat(r as usize);
    Ok(BraidWord::new_unchecked(s as usize, letters))
}

/// Positive crossings taking bundle `j` (1-based, `width` strands) over
/// bundle `j+1`, row-major: the last strand of bundle `j` crosses first.
fn bundle_crossing(j: usize, width: usize, out: &mut Vec<i32>) {
    let base = j * width;
    for a in 0..width {
        for b in 0..width {
            out.push((base - a + b) as i32);
        }
    }
}

/// Positive braid on `q·s` strands whose closure is `C_{t,q}(T_{r,s})`: the
/// blackboard `q`-cabling of the torus braid followed by `(p−1)s − 1` copies
/// of `σ_1 ⋯ σ_{q−1}` on the first bundle.
pub fn cable_braid(params: &SlopeParams) -> Result<BraidWord> {
    params.validate()?;
    let SlopeParams { q, r, s, .. } = *params;
    let twists = params.net_twists();
    if twists < 0 {
        return Err(Error::InvalidParams(format!(
            "net twist count {twists} is negative; a positive cable needs p >= 2"
        )));
    }
    let base = torus_braid(r, s)?;
    let width = q as usize;
    let mut letters = Vec::with_capacity(base.len() * width * width + twists as usize * (width - 1));
    for &l in base.letters() {
        bundle_crossing(l as usize, width, &mut letters);
    }
    let root: Vec<i32> = (1..q as i32).collect();
    for _ in 0..twists {
        letters.extend_from_slice(&root);
    }
    let word = BraidWord::new_unchecked((q * s) as usize, letters);
    let components = word.closure_components();
    if components != 1 {
        return Err(Error::NotAKnot(components));
    }
    Ok(word)
}

/// Euler characteristic `n − e(β)` of the fibre surface of a positive braid
/// closure.
pub fn bennequin_euler_char(w: &BraidWord) -> Result<i64> {
    if !w.is_positive() {
        return Err(Error::NonPositiveBraid);
    }
    Ok(w.strands() as i64 - w.exponent_sum())
}

/// Genus of a positive braid knot.
pub fn genus(w: &BraidWord) -> Result<i64> {
    let chi = bennequin_euler_char(w)?;
    match w.closure_components() {
        1 => Ok((1 - chi) / 2),
        c => Err(Error::NotAKnot(c)),
    }
}
