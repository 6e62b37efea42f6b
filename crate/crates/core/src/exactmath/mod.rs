//! Exact scalars and the small polynomial toolkit shared by every engine.
//!
//! Binomial coefficients use the power-series convention throughout:
//! `binom_gen(a, b)` is the coefficient of `x^b` in `(1 + x)^a`, which is
//! zero for negative `b` and well defined for negative `a`.

mod binomial;
mod qpoly;
mod series;

pub use binomial::{binom, binom_gen, factorial, multinom};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use qpoly::QPoly;
pub use series::Series;

use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("multinomial parts sum to {sum}, expected {top}")]
    PartsMismatch { top: u64, sum: u64 },
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Returns the integer value of `x` if its denominator is one.
pub fn to_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_nonnegative_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}
