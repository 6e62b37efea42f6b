use std::sync::Arc;

use super::{AlgebraSignature, CohElement, CohError};

/// Theta divisor `sum_a e'_a e'_{a+g}`.
pub fn theta(sig: &Arc<AlgebraSignature>) -> CohElement {
    let g = sig.genus();
    let mut out = CohElement::zero(sig);
    for a in 0..g {
        let t = CohElement::e_prime(sig, a)
            .and_then(|x| x.mul(&CohElement::e_prime(sig, a + g)?))
            .expect("indices in range");
        out = out.add(&t);
    }
    out
}

/// Divisor class `eta_i` of the i-th symmetric product (zero on a point).
pub fn eta(sig: &Arc<AlgebraSignature>, factor: usize) -> Result<CohElement, CohError> {
    CohElement::eta_pow(sig, factor, 1)
}

/// `sum_a sum_{j1, j2 != i} zeta_{j1,a} zeta_{j2,a+g}`.
pub fn taubar(sig: &Arc<AlgebraSignature>, factor: usize) -> Result<CohElement, CohError> {
    sig.check_factor(factor)?;
    let g = sig.genus();
    let others: Vec<usize> = sig
        .positive_factors()
        .iter()
        .copied()
        .filter(|&j| j != factor)
        .collect();
    let mut out = CohElement::zero(sig);
    for a in 0..g {
        for &j1 in &others {
            for &j2 in &others {
                let t = CohElement::zeta(sig, j1, a)?.mul(&CohElement::zeta(sig, j2, a + g)?)?;
                out = out.add(&t);
            }
        }
    }
    Ok(out)
}

/// `sum_a sum_{j != i} (e'_a zeta_{j,a+g} - e'_{a+g} zeta_{j,a})`.
pub fn xbar(sig: &Arc<AlgebraSignature>, factor: usize) -> Result<CohElement, CohError> {
    sig.check_factor(factor)?;
    let g = sig.genus();
    let mut out = CohElement::zero(sig);
    for a in 0..g {
        for &j in sig.positive_factors().iter().filter(|&&j| j != factor) {
            let plus = CohElement::e_prime(sig, a)?.mul(&CohElement::zeta(sig, j, a + g)?)?;
            let minus = CohElement::e_prime(sig, a + g)?.mul(&CohElement::zeta(sig, j, a)?)?;
            out = out.add(&plus.sub(&minus));
        }
    }
    Ok(out)
}
