//! Free graded-commutative model of `H*(Jac^d(C) x prod_i Sym^{k_i}(C))`.
//!
//! The algebra is generated by odd classes `e'_a` (Jacobian) and `zeta_{i,a}`
//! (one block per symmetric product), and even classes `eta_i`. Monomials
//! whose degree on some factor exceeds that factor's real dimension are
//! dropped on insertion; the only thing ever read off an element is its
//! integral, which is determined by top-degree monomials.

mod classes;
mod element;
mod signature;

pub use classes::{eta, taubar, theta, xbar};
pub use element::{CohElement, Monomial};
pub use signature::{AlgebraSignature, MAX_FACTORS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohError {
    #[error("elements belong to different algebras")]
    SignatureMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("series argument has a nonzero constant term")]
    NonNilpotent,
    #[error("algebra too large: {0}")]
    TooLarge(String),
}
