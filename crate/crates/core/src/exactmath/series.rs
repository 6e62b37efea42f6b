use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::binom_gen;

/// Univariate power series in a single variable, truncated after a fixed order.
///
/// All arithmetic is modulo `x^(order + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Series with the given leading coefficients; anything past `order` is dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = BigRational>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())),
            order,
        )
    }

    /// The variable itself, `x`.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// `(1 + x)^exponent` for any integer exponent.
    pub fn one_plus_x_pow(exponent: i64, order: usize) -> Self {
        Self::from_coeffs(
            (0..=order as i64).map(|j| BigRational::from_integer(binom_gen(exponent, j))),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Multiply by `x`, dropping the overflow.
    pub fn shift(&self) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for j in 0..order {
            s.coeffs[j + 1] = self.coeffs[j].clone();
        }
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let order = self.order();
        let mut inv = Self::zero(order);
        inv.coeffs[0] = c0.recip();
        for j in 1..=order {
            let mut acc = BigRational::zero();
            for i in 1..=j {
                acc += &self.coeffs[i] * &inv.coeffs[j - i];
            }
            inv.coeffs[j] = -acc * &inv.coeffs[0];
        }
        Some(inv)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_coeffs(
            (0..=order).map(|j| &self.coeffs[j] + &rhs.coeffs[j]),
            order,
        )
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_coeffs(
            (0..=order).map(|j| &self.coeffs[j] - &rhs.coeffs[j]),
            order,
        )
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = Series::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_of_one_plus_x() {
        let s = Series::from_integers(&[1, 1], 5);
        assert_eq!(s.inverse().unwrap(), Series::one_plus_x_pow(-1, 5));
        assert!(Series::var(3).inverse().is_none());
    }

    #[test]
    fn binomial_series_multiplies() {
        let a = Series::one_plus_x_pow(3, 6);
        let b = Series::one_plus_x_pow(-5, 6);
        assert_eq!(&a * &b, Series::one_plus_x_pow(-2, 6));
        assert_eq!(Series::from_integers(&[1, 1], 6).pow(4), Series::one_plus_x_pow(4, 6));
    }

    #[test]
    fn truncation() {
        let x = Series::var(2);
        assert_eq!(x.pow(3), Series::zero(2));
        assert_eq!(x.shift().coeff(2), rat(1));
    }
}
