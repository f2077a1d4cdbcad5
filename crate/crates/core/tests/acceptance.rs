//! Acceptance suite. Each criterion prints one PASS/FAIL line; the binary
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surgery_cert::braid::{self, BraidWord};
use surgery_cert::certify::{self, CertifyOptions, NonzeroReason, UnitStatus};
use surgery_cert::homfly::{self, GammaEngine, Oracle};
use surgery_cert::skein_tree::{self, TreeParams};
use surgery_cert::surgery::{self, GluingMatrix};
use surgery_cert::{BiLaurent, LaurentPoly, SkeinElem};

use common::*;

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn at_minus_one_is_one(g: &LaurentPoly) -> bool {
    g.eval_int(-1).unwrap() == one()
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> (i64, i64, i64, i64) {
    loop {
        let p = rng.gen_range(-50..=50i64);
        let q = rng.gen_range(-50..=50i64);
        let s = rng.gen_range(-50..=50i64);
        if q == 0 {
            if p * s == 1 {
                return (p, rng.gen_range(-50..=50), q, s);
            }
            continue;
        }
        if (p * s - 1) % q == 0 {
            let r = (p * s - 1) / q;
            if r.abs() <= 50 {
                return (p, q, r, s);
            }
        }
    }
}

fn c1_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let (p, q, r, s) = random_unimodular(&mut rng);
        let a = GluingMatrix::new(p, r, q, s).unwrap();
        let d = surgery::dual_gluing(&a).unwrap();
        let dd = surgery::double_dual_gluing(&a).unwrap();
        let z = GluingMatrix::shear(r * s);
        let z2 = GluingMatrix::shear(p * q * r * r);
        assert_eq!(d, z.mul(&a.inverse().unwrap()).unwrap());
        assert_eq!(d.rows(), [[s * (1 - q * r), q * r * r], [-q, p]]);
        assert_eq!(dd, z2.mul(&a).unwrap());
        assert_eq!(dd.rows(), [[p * (1 + q * q * r * r), r * (1 + p * q * r * s)], [q, s]]);
        assert_eq!((d.det().unwrap(), dd.det().unwrap()), (1, 1));
    }
}

fn c2_oracle() {
    let p = |w: &str| homfly::homfly_oracle(&w.parse().unwrap()).unwrap();
    assert!(p("1:").poly.is_one());
    let hopf = BiLaurent::from_terms([((1, -1), 1), ((3, -1), -1), ((1, 1), 1)]);
    assert_eq!(p("2: 1 1").poly, hopf);
    let trefoil = BiLaurent::from_terms([((2, 0), 2), ((4, 0), -1), ((2, 2), 1)]);
    assert_eq!(p("2: 1 1 1").poly, trefoil);
    assert_eq!(homfly::zeroth_gamma(&p("2: 1 1 1")).unwrap(), LaurentPoly::from_terms([(1, -2), (2, -1)]));
    assert_eq!(homfly::zeroth_gamma(&p("2: 1 1")).unwrap(), LaurentPoly::from_terms([(0, 1), (1, 1)]));
}

fn c3_skein_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut oracle = Oracle::default();
    let mut done = 0;
    let mut vanishing = 0;
    while done < 200 {
        let w = random_word(&mut rng, 4, 8, false);
        if w.is_empty() {
            continue;
        }
        let site = rng.gen_range(0..w.len());
        let (lp, lm, l0) = skein_triple(&w, site);
        let (hp, hm, h0) = (
            oracle.homfly(&lp).unwrap(),
            oracle.homfly(&lm).unwrap(),
            oracle.homfly(&l0).unwrap(),
        );
        let lhs = &hp.poly.shift(-1, 0) - &hm.poly.shift(1, 0);
        assert_eq!(lhs, h0.poly.shift(0, 1), "skein relation on {w} at {site}");

        let (gp, gm, g0) = (
            homfly::zeroth_gamma(&hp).unwrap(),
            homfly::zeroth_gamma(&hm).unwrap(),
            homfly::zeroth_gamma(&h0).unwrap(),
        );
        if h0.components == hp.components + 1 {
            assert_eq!(gp, &neg_alpha() * &(&gm + &g0), "Γ relation on {w} at {site}");
        } else {
            assert_eq!(h0.components + 1, hp.components);
            assert_eq!(gp, &neg_alpha() * &gm, "vanishing Γ relation on {w} at {site}");
            vanishing += 1;
        }
        done += 1;
    }
    assert!(vanishing > 0, "fuzz never hit the vanishing case");
}

fn c4_linking_formula() {
    let unknot = BraidWord::trivial(1);
    let pieces = [unknot.clone(), trefoil()];
    let mut oracle = Oracle::default();
    let mut cases: Vec<Vec<BraidWord>> = Vec::new();
    for n in 1..=3 {
        let mut idx = vec![0usize; n];
        loop {
            cases.push(idx.iter().map(|&i| pieces[i].clone()).collect());
            let Some(k) = idx.iter().rposition(|&i| i == 0) else { break };
            idx[k] = 1;
            idx[k + 1..].iter_mut().for_each(|i| *i = 0);
        }
    }
    for parts in &cases {
        let w = split_union(parts);
        let gammas: Vec<LaurentPoly> = parts.iter().map(|p| oracle_gamma(&mut oracle, p).0).collect();
        let (g, _) = oracle_gamma(&mut oracle, &w);
        assert_eq!(g, homfly::gamma_linking_formula(&gammas, 0), "split union {w}");
    }
    let u = LaurentPoly::one();
    for k in 1..=3 {
        let w = BraidWord::new(2, vec![1; 2 * k]).unwrap();
        assert_eq!(w.total_linking(), k as i64);
        let (g, _) = oracle_gamma(&mut oracle, &w);
        assert_eq!(g, homfly::gamma_linking_formula(&[u.clone(), u.clone()], k as i64), "T(2,{})", 2 * k);
    }
}

fn c5_engine_agreement() {
    let mut oracle = Oracle::default();
    let mut engine = GammaEngine::default();
    let mut words = Vec::new();
    for n in 1..=3usize {
        let gens = (n - 1) as u32;
        if gens == 0 {
            words.push(BraidWord::trivial(1));
            continue;
        }
        for len in 0..=9u32 {
            for code in 0..gens.pow(len) {
                let mut c = code;
                let letters = (0..len)
                    .map(|_| {
                        let l = (c % gens) as i32 + 1;
                        c /= gens;
                        l
                    })
                    .collect();
                words.push(BraidWord::new(n, letters).unwrap());
            }
        }
    }
    for (r, s) in [(3, 2), (5, 2), (4, 3)] {
        words.push(braid::torus_braid(r, s).unwrap());
    }
    for w in &words {
        let (g, _) = oracle_gamma(&mut oracle, w);
        assert_eq!(engine.gamma(w).unwrap(), g, "engine vs oracle on {w}");
    }
}

fn c6_positivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut engine = GammaEngine::default();
    let mut n = 0;
    while n < 100 {
        let w = random_word(&mut rng, 5, 12, true);
        if w.closure_components() != 1 {
            continue;
        }
        let g = engine.gamma_positive(&w).unwrap();
        assert!(all_nonneg(&g.gamma_normalized), "Γ̃ of {w} = {}", g.gamma_normalized);
        assert!(at_minus_one_is_one(&g.gamma), "Γ(−1) of {w}");
        n += 1;
    }
}

fn c7_symbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = LaurentPoly::alpha();
    let a1 = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    let one_minus_a2 = LaurentPoly::from_terms([(0, 1), (2, -1)]);
    for _ in 0..50 {
        let tp = TreeParams {
            q: rng.gen_range(-6..=6),
            r: rng.gen_range(-6..=6),
            t: rng.gen_range(-50..=50),
        };
        let kb = skein_tree::eval_tree(&skein_tree::expand(skein_tree::kb_root(&tp), &tp));
        let kg = skein_tree::eval_tree(&skein_tree::expand(skein_tree::kg_root(&tp), &tp));
        assert_eq!(kb, skein_tree::closed_form_kb(&tp), "{tp:?}");
        assert_eq!(kg, skein_tree::closed_form_kg(&tp), "{tp:?}");
        assert_eq!(&kb - &kg, skein_tree::difference(&tp), "{tp:?}");

        // the product as printed, with (1 − α²), is the reverse difference
        let hc = SkeinElem::term(LaurentPoly::neg_alpha_pow(tp.q * (tp.r - tp.t)), 1, 1);
        let cc = SkeinElem::term(LaurentPoly::neg_alpha_pow(-tp.q * tp.t), 0, 2);
        let prefix = &(&a * &a1.pow(2)) * &one_minus_a2;
        let printed = ((SkeinElem::one() - hc) * (SkeinElem::one() - cc)).scale(&prefix);
        assert_eq!(printed, &kg - &kb, "{tp:?}");
    }
}

fn c8_normalization() {
    let m1 = BigRational::from_integer((-1).into());
    let mut engine = GammaEngine::default();
    let mut knots: Vec<BraidWord> = vec![BraidWord::trivial(1), trefoil()];
    for (r, s) in [(3, 2), (5, 2), (4, 3), (7, 2), (5, 3)] {
        knots.push(braid::torus_braid(r, s).unwrap());
    }
    for (p, q) in [(2, 1), (3, 1), (5, 1), (3, 2), (5, 2)] {
        knots.push(braid::cable_braid(&surgery::choose_params(p, q, 1).unwrap()).unwrap());
    }
    for w in &knots {
        assert!(at_minus_one_is_one(&engine.gamma(w).unwrap()), "Γ(−1) of {w}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let tp = TreeParams {
            q: rng.gen_range(1..=6),
            r: rng.gen_range(-6..=6),
            t: rng.gen_range(-50..=50),
        };
        for e in [skein_tree::closed_form_kb(&tp), skein_tree::closed_form_kg(&tp)] {
            let v = e.eval_alpha(&m1).unwrap();
            assert_eq!(v.len(), 1);
            assert_eq!(v.get(&(0, 0)), Some(&one()));
        }
    }
}

fn c9_certificates() {
    let opts = CertifyOptions::default();
    for (p, q) in [(2, 1), (3, 1), (5, 1), (3, 2), (5, 2)] {
        let c = certify::certify_slope(p, q, &opts).unwrap();
        c.verify().unwrap();
        assert!(c.genus >= 1, "{p}/{q}");
        assert!(!c.diff.is_zero(), "{p}/{q}");
        if q == 1 && p <= 3 {
            assert_eq!(c.gamma_cr_is_unit, UnitStatus::NonUnit, "{p}/{q}");
            assert_eq!(c.diff_nonzero_reason, NonzeroReason::DirectGammaNonUnit);
            assert!(!c.gamma_cr.as_ref().unwrap().is_unit());
        }
    }
}

type Criterion = (&'static str, fn(), Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 matrix calculus", c1_matrices, Duration::from_secs(1)),
        ("2 oracle ground truth", c2_oracle, Duration::from_secs(1)),
        ("3 skein relation fuzz", c3_skein_fuzz, Duration::from_secs(30)),
        ("4 linking formula", c4_linking_formula, Duration::from_secs(30)),
        ("5 engine agreement", c5_engine_agreement, Duration::from_secs(300)),
        ("6 positivity", c6_positivity, Duration::from_secs(300)),
        ("7 symbolic identities", c7_symbolic, Duration::from_secs(10)),
        ("8 normalization", c8_normalization, Duration::from_secs(60)),
        ("9 end-to-end certificates", c9_certificates, Duration::from_secs(600)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let verdict = match res {
            Ok(()) if took <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over time limit {limit:?})"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {name:<28} {verdict} [{took:.2?}]");
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
