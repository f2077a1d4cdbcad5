#![allow(dead_code)]

use rand::Rng;
use surgery_cert::braid::BraidWord;
use surgery_cert::homfly::{self, Oracle};
use surgery_cert::LaurentPoly;

pub fn random_word<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize, positive: bool) -> BraidWord {
    let n = rng.gen_range(1..=max_strands);
    let len = if n == 1 { 0 } else { rng.gen_range(0..=max_len) };
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if positive || rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

/// The crossing at `site` made positive, made negative, and smoothed.
pub fn skein_triple(w: &BraidWord, site: usize) -> (BraidWord, BraidWord, BraidWord) {
    let g = w.letters()[site].abs();
    let mut plus = w.letters().to_vec();
    plus[site] = g;
    let mut minus = plus.clone();
    minus[site] = -g;
    let mut zero = plus.clone();
    zero.remove(site);
    (w.with_letters(plus), w.with_letters(minus), w.with_letters(zero))
}

pub fn oracle_gamma(oracle: &mut Oracle, w: &BraidWord) -> (LaurentPoly, usize) {
    let h = oracle.homfly(w).unwrap();
    (homfly::zeroth_gamma(&h).unwrap(), h.components)
}

pub fn trefoil() -> BraidWord {
    BraidWord::new(2, vec![1, 1, 1]).unwrap()
}

/// Disjoint juxtaposition of braids, leaving the generator between each pair unused.
pub fn split_union(parts: &[BraidWord]) -> BraidWord {
    let mut letters = Vec::new();
    let mut offset = 0i32;
    for p in parts {
        letters.extend(p.letters().iter().map(|&l| l.signum() * (l.abs() + offset)));
        offset += p.strands() as i32;
    }
    BraidWord::new(offset as usize, letters).unwrap()
}

pub fn neg_alpha() -> LaurentPoly {
    LaurentPoly::monomial(-1, 1)
}

pub fn all_nonneg(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.sign() != num_bigint::Sign::Minus)
}
