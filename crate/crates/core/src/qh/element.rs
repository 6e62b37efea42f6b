use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::QhError;
use crate::exactmath::QPoly;

/// Element of `QH*(Bl_q P^r)` in the basis
/// `(H-E)^i, E*(H-E)^i` for `i = 0..r-1`, with coefficients in `Q[q1, q2]`
/// where `q1 = q^{H^v + E^v}` and `q2 = q^{-E^v}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QhElement {
    r: usize,
    coeffs: Vec<QPoly>,
}

impl QhElement {
    pub fn zero(r: usize) -> Self {
        assert!(r >= 2, "the one-point blow-up needs r >= 2");
        Self {
            r,
            coeffs: vec![QPoly::zero(); 2 * r],
        }
    }

    /// Basis vector: `(H-E)^i` for `i < r`, `E*(H-E)^{i-r}` for `r <= i < 2r`.
    pub fn basis(r: usize, index: usize) -> Self {
        let mut x = Self::zero(r);
        x.coeffs[index] = QPoly::one();
        x
    }

    pub fn one(r: usize) -> Self {
        Self::basis(r, 0)
    }

    /// `H - E`
    pub fn h_minus_e(r: usize) -> Self {
        Self::basis(r, 1)
    }

    pub fn e(r: usize) -> Self {
        Self::basis(r, r)
    }

    pub fn h(r: usize) -> Self {
        Self::h_minus_e(r).add(&Self::e(r)).expect("same rank")
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &QPoly {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QPoly::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), QhError> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(QhError::RankMismatch {
                left: self.r,
                right: other.r,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, QhError> {
        self.check(other)?;
        Ok(Self {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QhError> {
        self.add(&other.scale(&QPoly::from_integer(-1)))
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        Self {
            r: self.r,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&QPoly::from_integer(c))
    }

    /// Drop quantum monomials beyond `q1^max_a q2^max_b`. Products never
    /// lower q-exponents, so this commutes with further multiplication.
    pub fn truncate(&mut self, max_a: u32, max_b: u32) {
        for c in &mut self.coeffs {
            c.truncate(max_a, max_b);
        }
    }

    /// Quantum product.
    ///
    /// Writing `u = H - E`, the ring is `Q[q1,q2][u,E]` modulo
    /// `u^r = q2 E` and `(u + E) E = q1`; the second relation gives
    /// `E^2 = q1 - E u` and together they give `u^r E = q1 q2 - q2 u E`.
    pub fn star(&self, other: &Self) -> Result<Self, QhError> {
        self.check(other)?;
        let r = self.r;
        let q1 = QPoly::q1();
        let mut plain = vec![QPoly::zero(); 2 * r];
        let mut with_e = vec![QPoly::zero(); 2 * r];
        for i in 0..r {
            let (a, b) = (&self.coeffs[i], &self.coeffs[r + i]);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            for j in 0..r {
                let (c, d) = (&other.coeffs[j], &other.coeffs[r + j]);
                if !a.is_zero() {
                    if !c.is_zero() {
                        plain[i + j] += &(a * c);
                    }
                    if !d.is_zero() {
                        with_e[i + j] += &(a * d);
                    }
                }
                if !b.is_zero() {
                    if !c.is_zero() {
                        with_e[i + j] += &(b * c);
                    }
                    if !d.is_zero() {
                        let bd = b * d;
                        plain[i + j] += &(&bd * &q1);
                        with_e[i + j + 1] += &(-&bd);
                    }
                }
            }
        }
        for j in (r..2 * r).rev() {
            let c = std::mem::take(&mut plain[j]);
            if !c.is_zero() {
                with_e[j - r] += &c.shift(0, 1);
            }
            let c = std::mem::take(&mut with_e[j]);
            if !c.is_zero() {
                plain[j - r] += &c.shift(1, 1);
                with_e[j - r + 1] += &(-c.shift(0, 1));
            }
        }
        let mut coeffs = plain;
        coeffs.truncate(r);
        with_e.truncate(r);
        coeffs.extend(with_e);
        Ok(Self { r, coeffs })
    }

    pub fn star_pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.r);
        for _ in 0..e {
            acc = acc.star(self).expect("same rank");
        }
        acc
    }

    /// Complex degree of basis vector `index`.
    pub fn basis_degree(r: usize, index: usize) -> u32 {
        if index < r {
            index as u32
        } else {
            (index - r + 1) as u32
        }
    }

    /// All complex degrees occurring, with `deg q1 = 2`, `deg q2 = r - 1`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, c)| {
                c.weighted_degrees(2, self.r as u32 - 1)
                    .into_iter()
                    .map(move |d| d + Self::basis_degree(self.r, i))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn coeff_at(&self, index: usize, a: u32, b: u32) -> BigRational {
        self.coeffs
            .get(index)
            .map(|c| c.coeff_at(a, b))
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for QhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = if i < self.r {
                format!("u^{i}")
            } else {
                format!("E*u^{}", i - self.r)
            };
            write!(f, "({c})*{name}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
