#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use tevelev::cohring::{self, AlgebraSignature, CohElement};
use tevelev::exactmath::Series;
use tevelev::{validate, CurveClass, Problem};

/// `int_{Jac x Sym^k} A exp(tau B + Theta C + x D)` computed in the ring,
/// with `A..D` polynomials in `eta` given by integer coefficients.
pub fn abcd_direct(a: &[i64], b: &[i64], c: &[i64], d: &[i64], g: usize, k: u32) -> BigRational {
    let sig = Arc::new(AlgebraSignature::new(g, vec![k, 0]).unwrap());
    let order = k as usize;
    let poly = |coeffs: &[i64]| {
        CohElement::from_eta_series(&sig, 0, &Series::from_integers(coeffs, order)).unwrap()
    };
    let tau = cohring::taubar(&sig, 1).unwrap();
    let x = cohring::xbar(&sig, 1).unwrap();
    let theta = cohring::theta(&sig);
    let exponent = tau
        .mul(&poly(b))
        .unwrap()
        .add(&theta.mul(&poly(c)).unwrap())
        .add(&x.mul(&poly(d)).unwrap());
    poly(a)
        .mul(&exponent.exp_nilpotent().unwrap())
        .unwrap()
        .integrate()
}

/// Balanced instances for the given ranges, `n` derived.
pub fn balanced(r: i64, g: i64, d: i64, k: &[i64]) -> Option<Problem> {
    validate(r, g, CurveClass::new(d, k.to_vec()), None).ok().map(|(p, _)| p)
}

pub fn report(criterion: u32, title: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{status}] {title}: {detail}");
}
