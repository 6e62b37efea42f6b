//! Geometric Tevelev degrees from the pushed-forward integral over
//! `S = Jac^d(C) x prod_{i=1}^{r+1} Sym^{k_i}(C)`:
//!
//! ```text
//! Tev = sum_{m=0}^{min(n, k_1..k_{r+1})} C(n,m) (-1)^m
//!         int_S prod_i (1+eta_i)^{n-m-1+g-d+kbar_i} eta_i^m
//!                    exp((taubar_i + Theta - xbar_i) / (1+eta_i))
//! ```
//!
//! together with the one-point residue formula and the generic
//! `A, B, C, D` coefficient identity it comes from.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use thiserror::Error;

use crate::cohring::{self, AlgebraSignature, CohElement, CohError};
use crate::exactmath::{binom, binom_gen, Series};
use crate::problem::Problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrrError {
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    /// The integral did not come out as a nonnegative integer.
    #[error("integral is not a nonnegative integer: {0}")]
    NonIntegralResult(String),
    #[error(transparent)]
    Algebra(#[from] CohError),
}

fn check_regime(p: &Problem) -> Result<(), GrrError> {
    let rep = p.regime();
    let missing = [
        (rep.balanced, "dimension constraint"),
        (rep.strong_inequality, "d - sum_I k_i > 2g - 1"),
        (rep.geometric_range, "n - d >= g + 1"),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, what)| what)
    .collect::<Vec<_>>();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(GrrError::RegimeViolation(format!("{} fails for {p}", missing.join(", "))))
    }
}

/// `d - (sum of the r largest k_i) < 0` with a marked point forces the image
/// into a coordinate hyperplane, so no map meets a general point.
fn trivially_zero(p: &Problem) -> bool {
    let mut k = p.k().to_vec();
    k.sort_unstable_by(|a, b| b.cmp(a));
    let top: i64 = k.iter().take(p.r as usize).sum();
    p.n >= 1 && p.d() - top < 0
}

/// The m-independent exponential part `prod_i exp((taubar_i + Theta - xbar_i)/(1+eta_i))`.
fn exponential_part(sig: &Arc<AlgebraSignature>) -> Result<CohElement, CohError> {
    let theta = cohring::theta(sig);
    let mut acc = CohElement::one(sig);
    let mut zero_factors = 0i64;
    let mut zero_rep = None;
    for i in 0..sig.factors() {
        let base = cohring::taubar(sig, i)?
            .add(&theta)
            .sub(&cohring::xbar(sig, i)?);
        if sig.slot(i).is_none() {
            // eta_i = 0 and the exponent is identical for every point factor
            zero_factors += 1;
            zero_rep.get_or_insert(base);
            continue;
        }
        let inv = cohring::eta(sig, i)?.geom_inverse_one_plus()?;
        acc = acc.mul(&base.mul(&inv)?.exp_nilpotent()?)?;
    }
    if let Some(base) = zero_rep {
        acc = acc.mul(&base.scale_int(zero_factors).exp_nilpotent()?)?;
    }
    Ok(acc)
}

/// Exact value of the integral formula before the integrality check.
pub fn grr_integral(p: &Problem) -> Result<BigRational, GrrError> {
    check_regime(p)?;
    if trivially_zero(p) {
        return Ok(BigRational::zero());
    }
    let k = p.padded_k();
    let sig = Arc::new(AlgebraSignature::new(
        p.g as usize,
        k.iter().map(|&v| v as u32).collect::<Vec<_>>(),
    )?);
    let exp_part = exponential_part(&sig)?;
    let total: i64 = k.iter().sum();
    let m_max = k.iter().copied().min().unwrap_or(0).min(p.n);
    let mut sum = BigRational::zero();
    for m in 0..=m_max {
        let mut poly = CohElement::one(&sig);
        for (i, &ki) in k.iter().enumerate() {
            if ki == 0 {
                continue;
            }
            let exponent = p.n - m - 1 + p.g - p.d() + (total - ki);
            let factor = cohring::eta(&sig, i)?
                .pow_one_plus(exponent)?
                .mul(&CohElement::eta_pow(&sig, i, m as u32)?)?;
            poly = poly.mul(&factor)?;
        }
        let value = poly.mul(&exp_part)?.integrate();
        let weight = BigRational::from_integer(binom(p.n as u64, m as u64));
        if m % 2 == 1 {
            sum -= value * weight;
        } else {
            sum += value * weight;
        }
    }
    Ok(sum)
}

/// Geometric Tevelev degree via the integral formula.
pub fn tev_grr(p: &Problem) -> Result<BigInt, GrrError> {
    let value = grr_integral(p)?;
    if !value.is_integer() || value.is_negative() {
        return Err(GrrError::NonIntegralResult(format!("{value} for {p}")));
    }
    Ok(value.to_integer())
}

/// `Coeff(A (C (1 + eta B) - eta D^2)^g ; eta^k)`.
pub fn abcd_integral(a: &Series, b: &Series, c: &Series, d: &Series, g: u32, k: usize) -> BigRational {
    let eta = Series::var(k);
    let one = Series::one(k);
    let lhs = c * &(&one + &(&eta * b));
    let rhs = &eta * &(d * d);
    let inner = &lhs - &rhs;
    (a * &inner.pow(g)).coeff(k)
}

/// The `A, B, C, D` data of the one-point specialisation; `C` is a power
/// series because of the `1/(1+eta)`.
pub fn l1_abcd(p: &Problem, order: usize) -> [Series; 4] {
    let r = p.r;
    let a = Series::one_plus_x_pow(p.n - 1 + p.g - p.d(), order);
    let b = Series::from_integers(&[r], order);
    let c = &Series::from_integers(&[r + 1, r], order) * &Series::one_plus_x_pow(-1, order);
    let d = Series::from_integers(&[r], order);
    [a, b, c, d]
}

/// One-point residue formula `Coeff((1+eta)^{n-1-d} (2r eta + r + 1)^g ; eta^k)`.
pub fn tev_residue_l1(p: &Problem) -> Result<BigInt, GrrError> {
    let k = p
        .single_k()
        .ok_or_else(|| GrrError::RegimeViolation(format!("ell <= 1 required for {p}")))?;
    check_regime(p)?;
    let (r, g) = (p.r, p.g);
    Ok((0..=g.min(k))
        .map(|j| {
            binom(g as u64, j as u64)
                * BigInt::from(2 * r).pow(j as u32)
                * BigInt::from(r + 1).pow((g - j) as u32)
                * binom_gen(p.n - 1 - p.d(), k - j)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform;
    use crate::exactmath::rational;
    use crate::problem::{validate, CurveClass};

    fn prob(r: i64, g: i64, d: i64, k: &[i64], n: Option<i64>) -> Problem {
        validate(r, g, CurveClass::new(d, k), n).unwrap().0
    }

    #[test]
    fn examples() {
        assert_eq!(tev_grr(&prob(2, 0, 3, &[1], Some(5))).unwrap(), 1.into());
        assert_eq!(tev_grr(&prob(2, 1, 5, &[1], Some(7))).unwrap(), 7.into());
        assert_eq!(tev_grr(&prob(2, 0, 2, &[1, 1], Some(3))).unwrap(), 1.into());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(tev_residue_l1(&prob(2, 0, 3, &[1], Some(5))).unwrap(), 1.into());
        assert_eq!(tev_residue_l1(&prob(2, 1, 5, &[1], Some(7))).unwrap(), 7.into());
        assert_eq!(tev_residue_l1(&prob(3, 0, 4, &[2], Some(5))).unwrap(), 0.into());
    }

    #[test]
    fn out_of_regime_rejected() {
        let p = prob(2, 1, 3, &[1], Some(4));
        assert!(matches!(tev_grr(&p), Err(GrrError::RegimeViolation(_))));
        assert!(matches!(tev_residue_l1(&p), Err(GrrError::RegimeViolation(_))));
    }

    #[test]
    fn projective_line_large_degree() {
        // ell = 0 on P^1: the integrand collapses to exp(2 Theta)
        for g in 0..=3 {
            for d in 2 * g..2 * g + 4 {
                let Ok((p, rep)) = validate(1, g, CurveClass::new(d, []), None) else {
                    continue;
                };
                if rep.geometric_regime() {
                    assert_eq!(tev_grr(&p).unwrap(), BigInt::from(2).pow(g as u32), "{p}");
                }
                if rep.geometric_regime() && d >= 1 {
                    assert_eq!(
                        tev_grr(&p).unwrap(),
                        closedform::tev_p1(g, d, p.n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn abcd_trivial_cases() {
        let one = Series::one(0);
        let zero = Series::zero(0);
        assert_eq!(abcd_integral(&one, &zero, &zero, &zero, 0, 0), rational(1));
        assert_eq!(abcd_integral(&one, &zero, &one, &zero, 2, 0), rational(1));
    }

    #[test]
    fn abcd_specialisation_reproduces_residue() {
        for (r, g, d, k) in [(2, 1, 5, 1), (2, 2, 9, 1), (3, 1, 12, 3), (3, 2, 18, 3), (2, 0, 3, 1)] {
            let Ok((p, rep)) = validate(r, g, CurveClass::new(d, [k]), None) else {
                panic!("unbalanced test instance");
            };
            assert!(rep.geometric_regime(), "{p}");
            let [a, b, c, dd] = l1_abcd(&p, k as usize);
            let via_abcd = abcd_integral(&a, &b, &c, &dd, g as u32, k as usize);
            let residue = tev_residue_l1(&p).unwrap();
            assert_eq!(via_abcd, BigRational::from_integer(residue), "{p}");
        }
    }

    #[test]
    fn permutation_symmetry() {
        let a = prob(3, 1, 12, &[2, 1, 0], None);
        let b = prob(3, 1, 12, &[0, 1, 2], None);
        assert!(a.regime().geometric_regime());
        assert_eq!(tev_grr(&a).unwrap(), tev_grr(&b).unwrap());
    }
}
