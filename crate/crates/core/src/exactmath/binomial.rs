use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExactMathError;

/// Coefficient of `x^b` in the power series `(1 + x)^a`.
///
/// Defined for every integer `a`. Negative `b` gives zero, so this agrees with
/// the usual binomial coefficient on `0 <= b <= a` and vanishes for `b > a >= 0`.
pub fn binom_gen(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 && b > a {
        return BigInt::zero();
    }
    // symmetric shortcut keeps the product short for large nonnegative tops
    let b = if a >= 0 && b > a - b { a - b } else { b };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..b {
        num *= BigInt::from(a - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Ordinary binomial coefficient with nonnegative arguments; zero outside `0..=n`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binom_gen(n as i64, k as i64)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Multinomial coefficient `top! / prod(parts_i!)`.
pub fn multinom(top: u64, parts: &[u64]) -> Result<BigInt, ExactMathError> {
    let sum: u64 = parts.iter().sum();
    if sum != top {
        return Err(ExactMathError::PartsMismatch { top, sum });
    }
    // product of successive binomials avoids the big factorial quotient
    let mut remaining = top;
    let mut acc = BigInt::one();
    for &p in parts {
        acc *= binom(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial_binom(n: u64, k: u64) -> BigInt {
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    #[test]
    fn binom_gen_examples() {
        assert_eq!(binom_gen(5, 2), BigInt::from(10));
        assert_eq!(binom_gen(-1, 3), BigInt::from(-1));
        assert_eq!(binom_gen(3, -1), BigInt::zero());
        assert_eq!(binom_gen(0, 0), BigInt::one());
        assert_eq!(binom_gen(2, 5), BigInt::zero());
        // (1+x)^-2 = 1 - 2x + 3x^2 - 4x^3 ...
        assert_eq!(binom_gen(-2, 3), BigInt::from(-4));
    }

    #[test]
    fn multinom_examples() {
        assert_eq!(multinom(4, &[1, 1, 1, 1]).unwrap(), BigInt::from(24));
        assert_eq!(multinom(3, &[3, 0, 0, 0]).unwrap(), BigInt::one());
        assert_eq!(multinom(4, &[2, 1, 1, 0]).unwrap(), BigInt::from(12));
        assert_eq!(multinom(0, &[]).unwrap(), BigInt::one());
        assert_eq!(
            multinom(4, &[2, 1]),
            Err(ExactMathError::PartsMismatch { top: 4, sum: 3 })
        );
    }

    proptest! {
        #[test]
        fn pascal_rule(a in -40i64..40, b in 1i64..30) {
            prop_assert_eq!(binom_gen(a, b), binom_gen(a - 1, b) + binom_gen(a - 1, b - 1));
        }

        #[test]
        fn agrees_with_factorials(n in 0u64..60, k in 0u64..60) {
            prop_assume!(k <= n);
            prop_assert_eq!(binom_gen(n as i64, k as i64), factorial_binom(n, k));
        }

        #[test]
        fn vandermonde(m in 0u64..25, n in 0u64..25, r in 0u64..50) {
            let lhs: BigInt = (0..=r).map(|k| binom(m, k) * binom(n, r - k)).sum();
            prop_assert_eq!(lhs, binom(m + n, r));
        }

        #[test]
        fn negative_top_is_signed_rising(a in 1i64..30, b in 0i64..20) {
            // (1+x)^-a has coefficient (-1)^b C(a+b-1, b)
            let expected = binom_gen(a + b - 1, b) * if b % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(binom_gen(-a, b), expected);
        }
    }
}
