use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{QhElement, QhError};
use crate::exactmath::QPoly;

/// Element over the classical basis `1, H, .., H^r, E, .., E^{r-1}` of
/// `H*(Bl_q P^r)`, with coefficients in `Q[q1, q2]`.
///
/// Index `i <= r` is `H^i`; index `r + i` for `1 <= i <= r - 1` is `E^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalElement {
    r: usize,
    coeffs: Vec<QPoly>,
}

impl ClassicalElement {
    pub fn zero(r: usize) -> Self {
        assert!(r >= 2, "the one-point blow-up needs r >= 2");
        Self {
            r,
            coeffs: vec![QPoly::zero(); 2 * r],
        }
    }

    pub fn basis(r: usize, index: usize) -> Self {
        let mut x = Self::zero(r);
        x.coeffs[index] = QPoly::one();
        x
    }

    pub fn h_pow(r: usize, i: usize) -> Self {
        Self::basis(r, i)
    }

    pub fn e_pow(r: usize, i: usize) -> Self {
        assert!((1..r).contains(&i), "E^{i} is not a basis vector");
        Self::basis(r, r + i)
    }

    /// The point class `P = H^r`.
    pub fn point(r: usize) -> Self {
        Self::h_pow(r, r)
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

    pub fn point_coeff(&self) -> &QPoly {
        &self.coeffs[self.r]
    }

    pub fn add(&self, other: &Self) -> Result<Self, QhError> {
        if self.r != other.r {
            return Err(QhError::RankMismatch {
                left: self.r,
                right: other.r,
            });
        }
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

    pub fn scale(&self, c: &QPoly) -> Self {
        Self {
            r: self.r,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Set `q1 = q2 = 0`.
    pub fn classical_limit(&self) -> Self {
        Self {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| QPoly::constant(c.constant_term()))
                .collect(),
        }
    }

    /// `(exponent of H, exponent of E)` of basis vector `index`.
    fn exponents(r: usize, index: usize) -> (usize, usize) {
        if index <= r {
            (index, 0)
        } else {
            (0, index - r)
        }
    }

    /// Ordinary cup product: `H E = 0`, `E^r = (-1)^{r-1} H^r`.
    pub fn cup(&self, other: &Self) -> Result<Self, QhError> {
        if self.r != other.r {
            return Err(QhError::RankMismatch {
                left: self.r,
                right: other.r,
            });
        }
        let r = self.r;
        let mut out = Self::zero(r);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (h1, e1) = Self::exponents(r, i);
                let (h2, e2) = Self::exponents(r, j);
                let (h, e) = (h1 + h2, e1 + e2);
                let ab = a * b;
                let (index, sign) = match (h, e) {
                    (h, 0) if h <= r => (h, 1),
                    (0, e) if e < r => (r + e, 1),
                    (0, e) if e == r => (r, if r % 2 == 1 { 1 } else { -1 }),
                    _ => continue,
                };
                out.coeffs[index] += &ab.scale(&BigRational::from_integer(sign.into()));
            }
        }
        Ok(out)
    }

    /// `int_X x`: the coefficient of the point class.
    pub fn integral(&self) -> QPoly {
        self.point_coeff().clone()
    }
}

/// Image of the classical basis vector `index` in the quantum basis:
/// `H^i = H * (H-E)^{i-1}` and `E^i = (-1)^{i-1} E * (H-E)^{i-1}`.
pub fn classical_basis_image(r: usize, index: usize) -> QhElement {
    let u = QhElement::h_minus_e(r);
    if index == 0 {
        QhElement::one(r)
    } else if index <= r {
        QhElement::h(r)
            .star(&u.star_pow(index as u32 - 1))
            .expect("same rank")
    } else {
        let i = index - r;
        let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
        QhElement::e(r)
            .star(&u.star_pow(i as u32 - 1))
            .expect("same rank")
            .scale_int(sign)
    }
}

pub fn classical_to_star(c: &ClassicalElement) -> QhElement {
    let r = c.rank();
    let mut out = QhElement::zero(r);
    for (i, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        out = out
            .add(&classical_basis_image(r, i).scale(a))
            .expect("same rank");
    }
    out
}

/// Inverse of [`classical_to_star`]:
/// `(H-E)^i = H^i + (-1)^i E^i` for `1 <= i < r`,
/// `E (H-E)^j = (-1)^j E^{j+1}` for `j < r - 1`, and
/// `E (H-E)^{r-1} = H^r - q2 E`.
pub fn star_to_classical(x: &QhElement) -> ClassicalElement {
    let r = x.rank();
    let mut out = ClassicalElement::zero(r);
    let sign = |i: usize| QPoly::from_integer(if i % 2 == 0 { 1 } else { -1 });
    for (idx, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if idx == 0 {
            out.coeffs[0] += c;
        } else if idx < r {
            out.coeffs[idx] += c;
            out.coeffs[r + idx] += &(c * &sign(idx));
        } else if idx < 2 * r - 1 {
            let j = idx - r;
            out.coeffs[r + j + 1] += &(c * &sign(j));
        } else {
            out.coeffs[r] += c;
            out.coeffs[r + 1] += &(-c.shift(0, 1));
        }
    }
    out
}

/// Gauss-Jordan inverse of a square rational matrix.
pub(crate) fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].recip();
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let f = m[row][col].clone();
            for j in 0..n {
                let a = &m[col][j] * &f;
                m[row][j] -= a;
                let b = &inv[col][j] * &f;
                inv[row][j] -= b;
            }
        }
    }
    Some(inv)
}
