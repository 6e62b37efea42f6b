use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::signature::{AlgebraSignature, MAX_FACTORS};
use super::CohError;
use crate::exactmath::{binom_gen, Series};

/// A monomial `prod_s eta_s^{eta[s]} * (odd generators of `odd`, ascending)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub odd: u64,
    pub eta: [u16; MAX_FACTORS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        odd: 0,
        eta: [0; MAX_FACTORS],
    };

    /// Real (cohomological) degree.
    pub fn degree(&self) -> u32 {
        self.odd.count_ones() + 2 * self.eta.iter().map(|&e| e as u32).sum::<u32>()
    }
}

/// Sign picked up when concatenating two ascending runs of odd generators
/// into one ascending run; `None` if they share a generator.
fn merge_sign(left: u64, right: u64) -> Option<bool> {
    if left & right != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = right;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (left >> y >> 1).count_ones();
    }
    Some(swaps % 2 == 1)
}

/// Parity of the number of inversions of a sequence of distinct bit indices.
fn inversion_parity(seq: &[u32]) -> bool {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// An element of the capped free graded-commutative algebra.
#[derive(Debug, Clone)]
pub struct CohElement {
    sig: Arc<AlgebraSignature>,
    terms: HashMap<Monomial, BigRational>,
}

impl PartialEq for CohElement {
    fn eq(&self, other: &Self) -> bool {
        *self.sig == *other.sig && self.terms == other.terms
    }
}

impl Eq for CohElement {}

impl CohElement {
    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: Arc::clone(sig),
            terms: HashMap::new(),
        }
    }

    pub fn scalar(sig: &Arc<AlgebraSignature>, c: BigRational) -> Self {
        let mut x = Self::zero(sig);
        x.add_term(Monomial::ONE, c);
        x
    }

    pub fn one(sig: &Arc<AlgebraSignature>) -> Self {
        Self::scalar(sig, BigRational::one())
    }

    /// The Jacobian class `e'_alpha`, `alpha < 2g`.
    pub fn e_prime(sig: &Arc<AlgebraSignature>, alpha: usize) -> Result<Self, CohError> {
        sig.check_alpha(alpha)?;
        Ok(Self::odd_generator(sig, sig.jac_bit(alpha)))
    }

    /// The class `zeta_{factor, alpha}`; zero when the factor is a point.
    pub fn zeta(sig: &Arc<AlgebraSignature>, factor: usize, alpha: usize) -> Result<Self, CohError> {
        sig.check_factor(factor)?;
        sig.check_alpha(alpha)?;
        Ok(match sig.slot(factor) {
            Some(s) => Self::odd_generator(sig, sig.zeta_bit(s, alpha)),
            None => Self::zero(sig),
        })
    }

    /// `eta_factor^power`; zero when the factor is a point and `power > 0`,
    /// or when the power exceeds the factor's dimension.
    pub fn eta_pow(sig: &Arc<AlgebraSignature>, factor: usize, power: u32) -> Result<Self, CohError> {
        sig.check_factor(factor)?;
        if power == 0 {
            return Ok(Self::one(sig));
        }
        let mut x = Self::zero(sig);
        if let Some(s) = sig.slot(factor) {
            if power <= sig.slot_k(s) {
                let mut m = Monomial::ONE;
                m.eta[s] = power as u16;
                x.add_term(m, BigRational::one());
            }
        }
        Ok(x)
    }

    /// `sum_j c_j eta_factor^j` from a truncated series in `eta`.
    pub fn from_eta_series(
        sig: &Arc<AlgebraSignature>,
        factor: usize,
        series: &Series,
    ) -> Result<Self, CohError> {
        let mut x = Self::zero(sig);
        for (j, c) in series.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            x = x.add(&Self::eta_pow(sig, factor, j as u32)?.scale(c));
        }
        Ok(x)
    }

    fn odd_generator(sig: &Arc<AlgebraSignature>, bit: u32) -> Self {
        let mut x = Self::zero(sig);
        x.add_term(
            Monomial {
                odd: 1u64 << bit,
                eta: [0; MAX_FACTORS],
            },
            BigRational::one(),
        );
        x
    }

    pub fn signature(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn within_caps(&self, m: &Monomial) -> bool {
        (0..self.sig.slots()).all(|s| {
            2 * m.eta[s] as u32 + (m.odd & self.sig.zeta_mask(s)).count_ones() <= self.sig.cap(s)
        })
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() || !self.within_caps(&m) {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), CohError> {
        if Arc::ptr_eq(&self.sig, &other.sig) || *self.sig == *other.sig {
            Ok(())
        } else {
            Err(CohError::SignatureMismatch)
        }
    }

    /// Sum; both operands must share a signature (panics otherwise, use
    /// [`CohElement::try_add`] for a checked version).
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("signature mismatch")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CohError> {
        self.check_same(other)?;
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        Ok(big)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Self {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Graded-commutative product with Koszul signs, repeated odd generators
    /// and cap overflow both giving zero.
    pub fn mul(&self, other: &Self) -> Result<Self, CohError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.sig);
        let slots = self.sig.slots();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(negative) = merge_sign(ma.odd, mb.odd) else {
                    continue;
                };
                let mut m = Monomial {
                    odd: ma.odd | mb.odd,
                    eta: ma.eta,
                };
                for s in 0..slots {
                    m.eta[s] += mb.eta[s];
                }
                let c = ca * cb;
                out.add_term(m, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.sig);
        for _ in 0..e {
            acc = acc.mul(self).expect("same signature");
        }
        acc
    }

    fn require_nilpotent(&self) -> Result<(), CohError> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(CohError::NonNilpotent)
        }
    }

    /// `sum_j coeff(j) * self^j`, stopping once the powers vanish.
    fn power_series(&self, coeff: impl Fn(u32) -> BigRational) -> Result<Self, CohError> {
        self.require_nilpotent()?;
        let mut out = Self::scalar(&self.sig, coeff(0));
        let mut power = Self::one(&self.sig);
        for j in 1.. {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&coeff(j)));
        }
        Ok(out)
    }

    /// `(1 + self)^exponent` for any integer exponent.
    pub fn pow_one_plus(&self, exponent: i64) -> Result<Self, CohError> {
        self.power_series(|j| BigRational::from_integer(binom_gen(exponent, j as i64)))
    }

    /// `(1 + self)^{-1}`.
    pub fn geom_inverse_one_plus(&self) -> Result<Self, CohError> {
        self.power_series(|j| BigRational::from_integer(if j % 2 == 0 { 1 } else { -1 }.into()))
    }

    pub fn exp_nilpotent(&self) -> Result<Self, CohError> {
        let mut fact = BigInt::one();
        let mut facts = vec![BigInt::one()];
        // a nilpotent element dies after at most (real dimension + 1) steps
        for j in 1..=(2 * self.sig.dimension() + 1) {
            fact *= BigInt::from(j);
            facts.push(fact.clone());
        }
        self.power_series(|j| {
            BigRational::new(BigInt::one(), facts[j as usize].clone())
        })
    }

    /// Keep only the homogeneous component of the given real degree.
    pub fn component(&self, degree: u32) -> Self {
        Self {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Value of the fundamental-class functional on a single monomial.
    fn pairing(&self, m: &Monomial, use_jac: bool, use_sym: bool) -> Option<bool> {
        let sig = &self.sig;
        let g = sig.genus();
        let mut normal: Vec<u32> = Vec::with_capacity(m.odd.count_ones() as usize);
        let jac = m.odd & sig.jac_mask();
        if use_jac {
            if jac != sig.jac_mask() {
                return None;
            }
            for a in 0..g {
                normal.push(sig.jac_bit(a));
                normal.push(sig.jac_bit(a + g));
            }
        } else if jac != 0 {
            return None;
        }
        for s in 0..sig.slots() {
            let zeta = m.odd & sig.zeta_mask(s);
            if !use_sym {
                if zeta != 0 || m.eta[s] != 0 {
                    return None;
                }
                continue;
            }
            let mut pairs = 0u32;
            for a in 0..g {
                let lo = zeta >> sig.zeta_bit(s, a) & 1;
                let hi = zeta >> sig.zeta_bit(s, a + g) & 1;
                match (lo, hi) {
                    (0, 0) => {}
                    (1, 1) => {
                        pairs += 1;
                        normal.push(sig.zeta_bit(s, a));
                        normal.push(sig.zeta_bit(s, a + g));
                    }
                    _ => return None,
                }
            }
            if m.eta[s] as u32 + pairs != sig.slot_k(s) {
                return None;
            }
        }
        Some(inversion_parity(&normal))
    }

    fn functional(&self, use_jac: bool, use_sym: bool) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            match self.pairing(m, use_jac, use_sym) {
                Some(false) => total += c,
                Some(true) => total -= c,
                None => {}
            }
        }
        total
    }

    /// Integral over `Jac^d(C) x prod_i Sym^{k_i}(C)`.
    ///
    /// Normalised by `int prod_a (e'_a e'_{a+g}) = 1` on the Jacobian and
    /// `int eta^{k-|I|} prod_{a in I} (zeta_a zeta_{a+g}) = 1` on each
    /// symmetric product; monomials of any other shape integrate to zero.
    pub fn integrate(&self) -> BigRational {
        self.functional(true, true)
    }

    /// Integral over the Jacobian factor alone of the part of `self` free of
    /// symmetric-product classes.
    pub fn integrate_jacobian(&self) -> BigRational {
        self.functional(true, false)
    }

    /// Integral over the symmetric products alone of the part of `self` free
    /// of Jacobian classes.
    pub fn integrate_symmetric(&self) -> BigRational {
        self.functional(false, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(0b01, 0b10), Some(false));
        assert_eq!(merge_sign(0b10, 0b01), Some(true));
        assert_eq!(merge_sign(0b01, 0b01), None);
        // (e2 e3) * e1 -> e1 e2 e3 with two swaps
        assert_eq!(merge_sign(0b110, 0b001), Some(false));
        assert_eq!(merge_sign(0b100, 0b011), Some(false));
        assert_eq!(merge_sign(0b010, 0b101), Some(true));
    }

    #[test]
    fn inversion_parity_examples() {
        assert!(!inversion_parity(&[0, 1, 2, 3]));
        assert!(inversion_parity(&[0, 2, 1, 3]));
        assert!(!inversion_parity(&[2, 3, 0, 1]));
    }
}
