//! End-to-end acceptance checks, one test per criterion. Each test prints a
//! single `criterion N [PASS|FAIL]` line (visible with `--nocapture`).

mod common;

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::{abcd_direct, balanced, report};
use tevelev::cohring::{self, AlgebraSignature, CohElement};
use tevelev::crosscheck::{self, GridSpec, LemmaGrid};
use tevelev::engine::{self, EngineId, EngineKind};
use tevelev::exactmath::{binom_gen, factorial, Series};
use tevelev::qh::{self, ClassicalElement};
use tevelev::{closedform, grr, Problem};

fn int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

#[test]
fn criterion_1_one_point_five_way_agreement() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in 2..=4 {
        for g in 0..=2 {
            for k in 1..=3 {
                for d in 0..=40 {
                    let Some(p) = balanced(r, g, d, &[k]) else { continue };
                    if !(d - k > 2 * g - 1 && p.n - d >= g + 1) {
                        continue;
                    }
                    let values = [
                        int(&grr::tev_grr(&p).unwrap()),
                        int(&grr::tev_residue_l1(&p).unwrap()),
                        int(&closedform::tev_l1(&p).unwrap()),
                        qh::vtev_qh(&p).unwrap(),
                        int(&closedform::vtev_l1(&p).unwrap()),
                    ];
                    checked += 1;
                    if values.iter().any(|v| *v != values[0]) {
                        failures.push(format!("{p}: {values:?}"));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty() && checked >= 50;
    report(
        1,
        "tev_grr = tev_residue_l1 = tev_l1 = vtev_qh = vtev_l1",
        ok,
        &format!("{checked} instances, {} mismatches, {:.1?}", failures.len(), start.elapsed()),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_2_genus_zero_agreement() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in 2..=3i64 {
        for ell in 0..=(r + 1) as usize {
            let spec = crosscheck::TevelevGrid {
                r: r..=r,
                ell: ell..=ell,
                g: 0..=0,
                k: 0..=2,
                d: 0..=24,
                engines: None,
            };
            for p in crosscheck::tevelev_instances(&spec) {
                if !p.regime().geometric_regime() {
                    continue;
                }
                let a = grr::tev_grr(&p).unwrap();
                let b = closedform::tev_genus0(&p).unwrap();
                checked += 1;
                if a != b {
                    failures.push(format!("{p}: grr {a} genus0 {b}"));
                }
            }
        }
    }
    let ok = failures.is_empty() && checked > 0;
    report(
        2,
        "tev_grr = tev_genus0 at g = 0",
        ok,
        &format!("{checked} instances, {} mismatches, {:.1?}", failures.len(), start.elapsed()),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_3_two_point_plane_display() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for g in 0..=2 {
        for k1 in 1..=2 {
            for k2 in 1..=2 {
                for d in 0..=24 {
                    let Some(p) = balanced(2, g, d, &[k1, k2]) else { continue };
                    if !p.regime().geometric_regime() {
                        continue;
                    }
                    let a = closedform::tev_r2_l2(&p).unwrap();
                    let b = grr::tev_grr(&p).unwrap();
                    checked += 1;
                    if a != b {
                        failures.push(format!("{p}: display {a} grr {b}"));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty() && checked > 0;
    report(
        3,
        "tev_r2_l2 = tev_grr",
        ok,
        &format!("{checked} instances, {} mismatches, {:.1?}", failures.len(), start.elapsed()),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_4_quantum_euler_class() {
    let mut failures = Vec::new();
    for r in 2..=5usize {
        let expected = qh::classical_to_star(
            &ClassicalElement::point(r)
                .scale(&tevelev::exactmath::QPoly::from_integer(2 * r as i64))
                .add(
                    &ClassicalElement::e_pow(r, 1).scale(&tevelev::exactmath::QPoly::monomial(
                        BigRational::from_integer(BigInt::from(1 - r as i64)),
                        0,
                        1,
                    )),
                )
                .unwrap(),
        );
        let closed = qh::euler_class_closed(r);
        let defined = qh::euler_class_from_definition(r);
        if closed != expected || defined != expected {
            failures.push(format!("r={r}: closed {closed}, definition {defined}"));
        }
    }
    let ok = failures.is_empty();
    report(
        4,
        "euler_class_from_definition = euler_class_closed = 2rP - (r-1) q2 E",
        ok,
        "r = 2..5",
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_5_coefficient_lemma() {
    let start = Instant::now();
    let grid = LemmaGrid { r: 2..=3, ell: 1..=15 };
    let mut forced_zero = 0;
    let mut failures = Vec::new();
    let tuples = crosscheck::lemma_instances(&grid);
    for &(r, ell, m, d, k) in &tuples {
        let (computed, predicted) = qh::qh_coeff_lemma_check(r, ell, m, d, k).unwrap();
        if predicted != binom_gen(ell - d - m - 1, k) || computed != int(&predicted) {
            failures.push(format!("r={r} ell={ell} m={m} d={d} k={k}: {computed} vs {predicted}"));
        }
        if ell - d - m - 1 < k {
            forced_zero += 1;
            if !computed.is_zero() {
                failures.push(format!("r={r} ell={ell} m={m} d={d} k={k}: forced zero gave {computed}"));
            }
        }
    }
    let ok = failures.is_empty() && !tuples.is_empty() && forced_zero > 0;
    report(
        5,
        "Coeff(P^(l-m) * E^m, P q^(dH+(k+m)E)) = C(l-d-m-1, k)",
        ok,
        &format!(
            "{} tuples ({forced_zero} forced zero), {} mismatches, {:.1?}",
            tuples.len(),
            failures.len(),
            start.elapsed()
        ),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_6_anchored_point_values() {
    let mut failures = Vec::new();

    let anchor = balanced(2, 1, 1, &[1]).filter(|p| p.n == 1).expect("n = 1 is forced");
    let v = qh::vtev_qh(&anchor).unwrap();
    if !v.is_zero() {
        failures.push(format!("{anchor}: vtev_qh = {v}, expected 0"));
    }

    // pulled-back classes, on the stated domain n, d > 1
    let mut pulled_back = 0;
    for r in 2..=3 {
        for g in 0..=3 {
            for d in 2..=15 {
                let Some(p) = balanced(r, g, d, &[0]) else { continue };
                if p.n <= 1 {
                    continue;
                }
                pulled_back += 1;
                let v = qh::vtev_qh(&p).unwrap();
                let expected = int(&closedform::vtev_pr(r, g));
                if v != expected {
                    failures.push(format!("{p}: vtev_qh = {v}, expected {expected}"));
                }
            }
        }
    }

    let mut window = 0;
    for r in 2..=5i64 {
        for k in 1..=4i64 {
            for d in (r - 1) * k..(2 * r - 1) * k {
                let Some(p) = balanced(r, 0, d, &[k]) else { continue };
                window += 1;
                let rep = p.regime();
                if !rep.geometric_regime() {
                    failures.push(format!("{p}: expected to satisfy the geometric regime"));
                    continue;
                }
                for id in &rep.engines_available {
                    match engine::run(*id, &p) {
                        Ok(v) if v.is_zero() => {}
                        other => failures.push(format!("{p}: {id} gave {other:?}, expected 0")),
                    }
                }
            }
        }
    }

    let ok = failures.is_empty();
    report(
        6,
        "anchored zero at (2,1,1,1), (r+1)^g for pulled-back classes, genus-0 vanishing window",
        ok,
        &format!(
            "{pulled_back} pulled-back and {window} window instances, {} failures",
            failures.len()
        ),
    );
    for f in &failures {
        println!("  {f}");
    }
    assert!(ok, "{failures:#?}");
}

fn arb_element(sig: Arc<AlgebraSignature>) -> impl Strategy<Value = CohElement> {
    let odd = sig.odd_generators();
    let factors = sig.factors();
    prop::collection::vec(
        (
            -4i64..5,
            prop::collection::vec(0..odd.max(1), 0..4),
            prop::collection::vec(0u32..3, factors),
        ),
        1..5,
    )
    .prop_map(move |terms| {
        let mut acc = CohElement::zero(&sig);
        for (c, odds, etas) in terms {
            let mut m = CohElement::scalar(&sig, BigRational::from_integer(c.into()));
            for bit in odds {
                let g = sig.genus();
                let gen = if bit < 2 * g {
                    CohElement::e_prime(&sig, bit)
                } else {
                    let rest = bit - 2 * g;
                    let positive = sig.positive_factors();
                    CohElement::zeta(&sig, positive[rest / (2 * g)], rest % (2 * g))
                };
                m = m.mul(&gen.unwrap()).unwrap();
            }
            for (f, &e) in etas.iter().enumerate() {
                m = m.mul(&CohElement::eta_pow(&sig, f, e).unwrap()).unwrap();
            }
            acc = acc.add(&m);
        }
        acc
    })
}

/// Parity of the odd degree of a homogeneous-parity element.
fn parity(x: &CohElement) -> Option<u32> {
    let mut out = None;
    for (m, _) in x.terms() {
        let p = m.degree() % 2;
        if *out.get_or_insert(p) != p {
            return None;
        }
    }
    out
}

#[test]
fn criterion_7_symbolic_core_properties() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    // a runner keeps its case count, so each property gets a fresh one
    let runner = || {
        TestRunner::new(Config {
            cases: 128,
            failure_persistence: None,
            ..Config::default()
        })
    };

    for g in 1..=2usize {
        let sig = Arc::new(AlgebraSignature::new(g, vec![2, 1, 0]).unwrap());
        let s = sig.clone();
        let res = runner().run(
            &(arb_element(s.clone()), arb_element(s.clone()), arb_element(s)),
            |(a, b, c)| {
                let ab = a.mul(&b).unwrap();
                prop_assert_eq!(
                    ab.mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                if let (Some(pa), Some(pb)) = (parity(&a), parity(&b)) {
                    let ba = b.mul(&a).unwrap();
                    let expected = if pa * pb == 1 { ba.neg() } else { ba };
                    prop_assert_eq!(ab, expected);
                }
                Ok(())
            },
        );
        if let Err(e) = res {
            failures.push(format!("ring axioms at g={g}: {e}"));
        }
        // monomials always have a single parity
        let s = sig.clone();
        let res = runner().run(&(0..sig.odd_generators(), 0..sig.odd_generators()), |(i, j)| {
            let gen = |bit: usize| {
                if bit < 2 * g {
                    CohElement::e_prime(&s, bit).unwrap()
                } else {
                    let rest = bit - 2 * g;
                    CohElement::zeta(&s, s.positive_factors()[rest / (2 * g)], rest % (2 * g)).unwrap()
                }
            };
            let (x, y) = (gen(i), gen(j));
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap().neg());
            Ok(())
        });
        if let Err(e) = res {
            failures.push(format!("odd generators anticommute at g={g}: {e}"));
        }
    }

    for g in 0..=3usize {
        let sig = Arc::new(AlgebraSignature::new(g, Vec::<u32>::new()).unwrap());
        let v = cohring::theta(&sig).pow(g as u32).integrate();
        if v != int(&factorial(g as u64)) {
            failures.push(format!("int Theta^{g} = {v}"));
        }
    }

    let coeffs = || prop::collection::vec(-3i64..4, 1..4);
    let res = runner().run(
        &(coeffs(), coeffs(), coeffs(), coeffs(), 0usize..=2, 0u32..=3),
        |(a, b, c, d, g, k)| {
            let order = k as usize;
            let ser = |v: &[i64]| Series::from_integers(v, order);
            let lemma = grr::abcd_integral(&ser(&a), &ser(&b), &ser(&c), &ser(&d), g as u32, order);
            let direct = abcd_direct(&a, &b, &c, &d, g, k);
            prop_assert_eq!(lemma, direct, "g={} k={} A={:?} B={:?} C={:?} D={:?}", g, k, a, b, c, d);
            Ok(())
        },
    );
    if let Err(e) = res {
        failures.push(format!("A,B,C,D lemma: {e}"));
    }

    let ok = failures.is_empty();
    report(
        7,
        "ring axioms, int Theta^g = g!, A,B,C,D lemma vs direct integration",
        ok,
        &format!("{:.1?}", start.elapsed()),
    );
    assert!(ok, "{failures:#?}");
}

fn criterion_8_instances() -> Vec<Problem> {
    let mut out = Vec::new();
    for name in ["l1-small", "genus0-small", "r2l2"] {
        let Some(GridSpec::Tevelev(grid)) = GridSpec::preset(name) else {
            unreachable!()
        };
        out.extend(crosscheck::tevelev_instances(&grid));
    }
    let wide = crosscheck::TevelevGrid {
        r: 1..=4,
        ell: 0..=2,
        g: 0..=2,
        k: 0..=3,
        d: 0..=20,
        engines: None,
    };
    out.extend(crosscheck::tevelev_instances(&wide));
    out
}

#[test]
fn criterion_8_integrality_and_nonnegativity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut geometric, mut virtual_qh) = (0, 0);
    for p in criterion_8_instances() {
        let rep = p.regime();
        for &id in &rep.engines_available {
            if id == EngineId::Qh {
                continue;
            }
            let value = if id == EngineId::Grr {
                grr::grr_integral(&p).map_err(|e| e.to_string())
            } else {
                engine::run(id, &p).map_err(|e| e.to_string())
            };
            match value {
                Ok(v) if id.kind() == EngineKind::Geometric => {
                    geometric += 1;
                    if !v.is_integer() || v.is_negative() {
                        failures.push(format!("{p}: {id} = {v}"));
                    }
                }
                Ok(_) => {}
                Err(e) => failures.push(format!("{p}: {id} failed: {e}")),
            }
        }
        if p.r >= 2 && p.ell() == 1 {
            virtual_qh += 1;
            match qh::vtev_qh(&p) {
                Ok(v) if v.is_integer() => {}
                other => failures.push(format!("{p}: vtev_qh gave {other:?}")),
            }
        }
    }
    let ok = failures.is_empty() && geometric > 0 && virtual_qh > 0;
    report(
        8,
        "tev outputs are nonnegative integers, vtev_qh outputs are integers",
        ok,
        &format!(
            "{geometric} geometric values, {virtual_qh} vtev_qh values, {} failures, {:.1?}",
            failures.len(),
            start.elapsed()
        ),
    );
    assert!(ok, "{failures:#?}");
}
