//! Closed-form Tevelev degrees: genus zero with up to `r + 1` points, one
//! blown-up point in any genus (geometric and virtual), the two-point blow-up
//! of the plane, and the `P^r` / `P^1` reference values.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use thiserror::Error;

use crate::exactmath::{binom, binom_gen, multinom};
use crate::problem::Problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("regime violation: {0}")]
    RegimeViolation(String),
}

fn require(cond: bool, what: &str, p: &Problem) -> Result<(), ClosedFormError> {
    if cond {
        Ok(())
    } else {
        Err(ClosedFormError::RegimeViolation(format!("{what} fails for {p}")))
    }
}

fn require_geometric(p: &Problem) -> Result<(), ClosedFormError> {
    let rep = p.regime();
    require(rep.balanced, "dimension constraint", p)?;
    require(rep.strong_inequality, "d - sum_I k_i > 2g - 1", p)?;
    require(rep.geometric_range, "n - d >= g + 1", p)
}

/// Genus-zero count for `ell <= r + 1` points.
pub fn tev_genus0(p: &Problem) -> Result<BigInt, ClosedFormError> {
    require(p.g == 0, "g = 0", p)?;
    require_geometric(p)?;
    let k = p.padded_k();
    let total: i64 = k.iter().sum();
    let m_max = k.iter().copied().min().unwrap_or(0).min(p.n);
    let mut sum = BigInt::zero();
    for m in 0..=m_max {
        let mut term = binom(p.n as u64, m as u64);
        for &ki in &k {
            let kbar = total - ki;
            term *= binom_gen(p.n - p.d() + kbar - 1 - m, ki - m);
            if term.is_zero() {
                break;
            }
        }
        if m % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Ok(sum)
}

/// `sum_m (2r)^{g-m} (1-r)^m C(g,m) C(n-d+g-m-1, k)`.
fn l1_sum(p: &Problem, k: i64) -> BigInt {
    let (r, g) = (p.r, p.g);
    (0..=g)
        .map(|m| {
            BigInt::from(2 * r).pow((g - m) as u32)
                * BigInt::from(1 - r).pow(m as u32)
                * binom(g as u64, m as u64)
                * binom_gen(p.n - p.d() + g - m - 1, k)
        })
        .sum()
}

fn single_k(p: &Problem) -> Result<i64, ClosedFormError> {
    p.single_k()
        .ok_or_else(|| ClosedFormError::RegimeViolation(format!("ell <= 1 required for {p}")))
}

/// Geometric count on the one-point blow-up.
pub fn tev_l1(p: &Problem) -> Result<BigInt, ClosedFormError> {
    let k = single_k(p)?;
    require_geometric(p)?;
    Ok(l1_sum(p, k))
}

/// Virtual count on the one-point blow-up; needs only `n - d >= 1`.
pub fn vtev_l1(p: &Problem) -> Result<BigInt, ClosedFormError> {
    let k = single_k(p)?;
    let rep = p.regime();
    require(rep.balanced, "dimension constraint", p)?;
    require(rep.virtual_range, "n - d >= 1", p)?;
    Ok(l1_sum(p, k))
}

/// Two-point blow-up of the plane as an explicit multinomial sum.
///
/// The shifts enter as `k_1 + a_3` and `k_2 + a_4`; with the opposite sign
/// the `k_2 = 0` case would not reduce to the one-point formula.
///
/// Only asserted for large anticanonical degree; callers should treat the
/// value as conditional until confirmed by the integral engine.
pub fn tev_r2_l2(p: &Problem) -> Result<BigInt, ClosedFormError> {
    require(p.r == 2 && p.ell() == 2, "r = 2 and ell = 2", p)?;
    require_geometric(p)?;
    let (g, n, d) = (p.g, p.n, p.d());
    let (k1, k2) = (p.k()[0], p.k()[1]);
    let gu = g as u64;
    let mut total = BigInt::zero();
    for a1 in 0..=g {
        for b1 in 0..=g - a1 {
            for b2 in 0..=g - a1 - b1 {
                for b3 in 0..=g - a1 - b1 - b2 {
                    for a3 in 0..=g - a1 - b1 - b2 - b3 {
                        let a4 = g - a1 - b1 - b2 - b3 - a3;
                        let a2 = b1 + b2 + b3;
                        let inner_max = (k1 + a3 - a2).min(k2 + a4 - a2).min(b1);
                        let mut inner = BigInt::zero();
                        for l in 0..=inner_max {
                            let t = binom(b1 as u64, l as u64)
                                * binom_gen(
                                    2 * d - (k1 + a3) - g - n + 1 - b2 - b3 - l,
                                    k1 - a2 - b2 - l,
                                )
                                * binom_gen(
                                    2 * d - (k2 + a4) - g - n + 1 - b2 - b3 - l,
                                    k2 - a2 - b3 - l,
                                );
                            if l % 2 == 1 {
                                inner -= t;
                            } else {
                                inner += t;
                            }
                        }
                        if inner.is_zero() {
                            continue;
                        }
                        let coeff = multinom(gu, &[a1 as u64, a2 as u64, a3 as u64, a4 as u64])
                            .expect("parts sum to g")
                            * multinom(a2 as u64, &[b1 as u64, b2 as u64, b3 as u64])
                                .expect("parts sum to a2")
                            * BigInt::from(5).pow(a1 as u32);
                        let term = coeff * inner;
                        if (b1 + a3 + a4) % 2 == 1 {
                            total -= term;
                        } else {
                            total += term;
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Virtual count of `P^r`, independent of the degree.
pub fn vtev_pr(r: i64, g: i64) -> BigInt {
    BigInt::from(r + 1).pow(g as u32)
}

/// Geometric count of `P^1` in every degree.
pub fn tev_p1(g: i64, d: i64, n: i64) -> Result<BigInt, ClosedFormError> {
    if g < 0 || d < 0 || n < 0 || 2 * d != n + g - 1 {
        return Err(ClosedFormError::RegimeViolation(format!(
            "2d = n + g - 1 fails for g={g} d={d} n={n}"
        )));
    }
    let mut v = BigInt::from(2).pow(g as u32);
    for j in 0..=g - d - 1 {
        v -= binom_gen(g, j);
    }
    v += BigInt::from(g - d - 1) * binom_gen(g, g - d);
    v += BigInt::from(d - g - 1) * binom_gen(g, g - d + 1);
    Ok(v)
}
