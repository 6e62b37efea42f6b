//! Uniform access to every way of computing a Tevelev degree, with the
//! precondition each one needs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closedform::{self, ClosedFormError};
use crate::grr::{self, GrrError};
use crate::problem::{Problem, RegimeReport};
use crate::qh::{self, QhError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineId {
    /// Integral over `Jac x prod Sym`.
    Grr,
    /// One-point residue formula.
    Residue,
    /// One-point closed form, geometric.
    ClosedL1,
    /// Genus-zero closed form.
    Genus0,
    /// Two-point blow-up of the plane.
    R2L2,
    /// One-point closed form, virtual.
    VirtualL1,
    /// Quantum cohomology coefficient extraction.
    Qh,
    /// `(r+1)^g` for classes pulled back from `P^r`.
    ProjectiveReference,
    /// All-degree formula for `P^1`.
    P1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Geometric,
    Virtual,
}

impl EngineId {
    pub const ALL: [EngineId; 9] = [
        EngineId::Grr,
        EngineId::Residue,
        EngineId::ClosedL1,
        EngineId::Genus0,
        EngineId::R2L2,
        EngineId::VirtualL1,
        EngineId::Qh,
        EngineId::ProjectiveReference,
        EngineId::P1,
    ];

    pub fn kind(self) -> EngineKind {
        match self {
            EngineId::VirtualL1 | EngineId::Qh | EngineId::ProjectiveReference => EngineKind::Virtual,
            _ => EngineKind::Geometric,
        }
    }

    /// The two-point plane formula is only asserted for large degree.
    pub fn is_conditional(self) -> bool {
        self == EngineId::R2L2
    }

    pub fn name(self) -> &'static str {
        match self {
            EngineId::Grr => "grr",
            EngineId::Residue => "residue",
            EngineId::ClosedL1 => "closed-l1",
            EngineId::Genus0 => "genus0",
            EngineId::R2L2 => "r2-l2",
            EngineId::VirtualL1 => "virtual-l1",
            EngineId::Qh => "qh",
            EngineId::ProjectiveReference => "projective-reference",
            EngineId::P1 => "p1",
        }
    }
}

impl fmt::Display for EngineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EngineId::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("{engine}: regime violation: {reason}")]
    Regime { engine: EngineId, reason: String },
    #[error("{engine}: {reason}")]
    Internal { engine: EngineId, reason: String },
}

impl EngineError {
    pub fn is_regime(&self) -> bool {
        matches!(self, EngineError::Regime { .. })
    }
}

/// Engines whose preconditions hold for `p`.
pub fn available(p: &Problem, rep: &RegimeReport) -> BTreeSet<EngineId> {
    let mut out = BTreeSet::new();
    if !rep.balanced {
        return out;
    }
    let geometric = rep.geometric_regime();
    let ell = p.ell();
    let all_k_zero = p.k().iter().all(|&k| k == 0);
    if geometric {
        out.insert(EngineId::Grr);
        if p.g == 0 {
            out.insert(EngineId::Genus0);
        }
        if ell <= 1 && p.r >= 2 {
            out.insert(EngineId::ClosedL1);
            out.insert(EngineId::Residue);
        }
        if p.r == 2 && ell == 2 {
            out.insert(EngineId::R2L2);
        }
    }
    if ell <= 1 && p.r >= 2 && rep.virtual_range {
        out.insert(EngineId::VirtualL1);
    }
    if ell == 1 && p.r >= 2 {
        out.insert(EngineId::Qh);
    }
    let pulled_back = ell == 0 || (ell == 1 && all_k_zero && p.r >= 2);
    if pulled_back && rep.virtual_range && p.d() >= 1 {
        out.insert(EngineId::ProjectiveReference);
    }
    // the all-degree formula reads Gr(2, d+1), so d = 0 is excluded
    if p.r == 1 && all_k_zero && p.d() >= 1 {
        out.insert(EngineId::P1);
    }
    out
}

fn internal(engine: EngineId, reason: impl ToString) -> EngineError {
    EngineError::Internal {
        engine,
        reason: reason.to_string(),
    }
}

/// Run one engine on `p`; unavailable engines report a regime error.
pub fn run(engine: EngineId, p: &Problem) -> Result<BigRational, EngineError> {
    let rep = p.regime();
    if !rep.engines_available.contains(&engine) {
        return Err(EngineError::Regime {
            engine,
            reason: format!("preconditions fail for {p}"),
        });
    }
    let closed = |r: Result<num_bigint::BigInt, ClosedFormError>| {
        r.map(BigRational::from_integer)
            .map_err(|e| internal(engine, e))
    };
    match engine {
        EngineId::Grr => grr::tev_grr(p)
            .map(BigRational::from_integer)
            .map_err(|e: GrrError| internal(engine, e)),
        EngineId::Residue => grr::tev_residue_l1(p)
            .map(BigRational::from_integer)
            .map_err(|e| internal(engine, e)),
        EngineId::ClosedL1 => closed(closedform::tev_l1(p)),
        EngineId::Genus0 => closed(closedform::tev_genus0(p)),
        EngineId::R2L2 => closed(closedform::tev_r2_l2(p)),
        EngineId::VirtualL1 => closed(closedform::vtev_l1(p)),
        EngineId::Qh => qh::vtev_qh(p).map_err(|e: QhError| internal(engine, e)),
        EngineId::ProjectiveReference => Ok(BigRational::from_integer(closedform::vtev_pr(p.r, p.g))),
        EngineId::P1 => closed(closedform::tev_p1(p.g, p.d(), p.n)),
    }
}
