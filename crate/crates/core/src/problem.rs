//! Tevelev-degree instances on blow-ups of `P^r` at `ell <= r + 1` general
//! points, the dimension constraint, and the precondition regimes of the
//! engines.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{self, EngineId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("malformed curve class: {0}")]
    MalformedClass(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not balanced: {0}")]
    NotBalanced(String),
}

/// `beta = d H^v + sum_i k_i E_i^v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub d: i64,
    pub k: Vec<i64>,
}

impl CurveClass {
    pub fn new(d: i64, k: impl Into<Vec<i64>>) -> Self {
        Self { d, k: k.into() }
    }

    pub fn ell(&self) -> usize {
        self.k.len()
    }

    pub fn k_sum(&self) -> i64 {
        self.k.iter().sum()
    }

    /// The multiplicities padded with zeros to length `r + 1`.
    pub fn padded(&self, r: i64) -> Vec<i64> {
        let mut k = self.k.clone();
        k.resize((r + 1).max(self.k.len() as i64) as usize, 0);
        k
    }

    fn check(&self, r: i64) -> Result<(), ProblemError> {
        if self.d < 0 {
            return Err(ProblemError::MalformedClass(format!(
                "degree d = {} is negative",
                self.d
            )));
        }
        if let Some(k) = self.k.iter().find(|&&k| k < 0) {
            return Err(ProblemError::MalformedClass(format!(
                "multiplicity {k} is negative"
            )));
        }
        if self.k.len() as i64 > r + 1 {
            return Err(ProblemError::MalformedClass(format!(
                "{} blown-up points exceed r + 1 = {}",
                self.k.len(),
                r + 1
            )));
        }
        Ok(())
    }
}

/// A balanced instance `(r, g, n, beta)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    pub r: i64,
    pub g: i64,
    pub n: i64,
    pub beta: CurveClass,
}

impl Problem {
    pub fn d(&self) -> i64 {
        self.beta.d
    }

    pub fn k(&self) -> &[i64] {
        &self.beta.k
    }

    pub fn ell(&self) -> usize {
        self.beta.ell()
    }

    pub fn padded_k(&self) -> Vec<i64> {
        self.beta.padded(self.r)
    }

    /// Multiplicity of the single exceptional divisor for `ell <= 1`.
    pub fn single_k(&self) -> Option<i64> {
        match self.beta.k.as_slice() {
            [] => Some(0),
            [k] => Some(*k),
            _ => None,
        }
    }

    /// `beta . K_X^v`
    pub fn anticanonical_degree(&self) -> i64 {
        anticanonical_degree(self.r, &self.beta)
    }

    pub fn regime(&self) -> RegimeReport {
        regime(self)
    }
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k: Vec<String> = self.beta.k.iter().map(|k| k.to_string()).collect();
        write!(
            f,
            "r={} g={} n={} d={} k=[{}]",
            self.r,
            self.g,
            self.n,
            self.beta.d,
            k.join(",")
        )
    }
}

pub fn anticanonical_degree(r: i64, beta: &CurveClass) -> i64 {
    (r + 1) * beta.d - (r - 1) * beta.k_sum()
}

/// Strong asymptotic enumerativity for general points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sae {
    Holds,
    Fails,
    Unknown,
}

pub fn sae_status(r: i64, ell: i64) -> Sae {
    if r >= 4 && ell >= 2 {
        Sae::Fails
    } else if ell <= 1 || (r == 2 && ell <= 8) || (r == 3 && ell <= 4) {
        Sae::Holds
    } else {
        Sae::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub balanced: bool,
    pub strong_inequality: bool,
    pub geometric_range: bool,
    pub virtual_range: bool,
    pub sae: Sae,
    pub engines_available: BTreeSet<EngineId>,
}

impl RegimeReport {
    /// Both hypotheses of the geometric integral formula.
    pub fn geometric_regime(&self) -> bool {
        self.balanced && self.strong_inequality && self.geometric_range
    }
}

/// `d - sum_{i in I} k_i > 2g - 1` for every `I` with `|I| <= r`.
///
/// The binding subset is the one with the `min(ell, r)` largest multiplicities.
pub fn strong_inequality(r: i64, g: i64, beta: &CurveClass) -> bool {
    let mut k = beta.k.clone();
    k.sort_unstable_by(|a, b| b.cmp(a));
    let take = (r.max(0) as usize).min(k.len());
    let worst: i64 = k[..take].iter().sum();
    beta.d - worst > 2 * g - 1
}

pub fn regime(p: &Problem) -> RegimeReport {
    let balanced = p.anticanonical_degree() == p.r * (p.n + p.g - 1);
    let strong = strong_inequality(p.r, p.g, &p.beta);
    let geometric_range = p.n - p.d() >= p.g + 1;
    let virtual_range = p.n - p.d() >= 1;
    let mut report = RegimeReport {
        balanced,
        strong_inequality: strong,
        geometric_range,
        virtual_range,
        sae: sae_status(p.r, p.ell() as i64),
        engines_available: BTreeSet::new(),
    };
    report.engines_available = engine::available(p, &report);
    report
}

/// Check the class, solve or verify the dimension constraint, and classify.
pub fn validate(
    r: i64,
    g: i64,
    beta: CurveClass,
    n: Option<i64>,
) -> Result<(Problem, RegimeReport), ProblemError> {
    if r < 1 {
        return Err(ProblemError::InvalidParameter(format!("r = {r} must be >= 1")));
    }
    if g < 0 {
        return Err(ProblemError::InvalidParameter(format!("g = {g} must be >= 0")));
    }
    beta.check(r)?;
    let degree = anticanonical_degree(r, &beta);
    let n = match n {
        Some(n) => {
            if n < 0 {
                return Err(ProblemError::InvalidParameter(format!("n = {n} must be >= 0")));
            }
            if r * (n + g - 1) != degree {
                return Err(ProblemError::NotBalanced(format!(
                    "r(n+g-1) = {} but beta.K^v = {degree}",
                    r * (n + g - 1)
                )));
            }
            n
        }
        None => {
            if degree % r != 0 {
                return Err(ProblemError::NotBalanced(format!(
                    "beta.K^v = {degree} is not divisible by r = {r}"
                )));
            }
            let n = degree / r - g + 1;
            if n < 0 {
                return Err(ProblemError::NotBalanced(format!(
                    "dimension constraint forces n = {n} < 0"
                )));
            }
            n
        }
    };
    let problem = Problem { r, g, n, beta };
    let report = regime(&problem);
    Ok((problem, report))
}
