//! One computation request end to end: validate, pick engines, run them,
//! and package the answers. Every number in a report is a decimal string.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crosscheck::{judge, Verdict};
use crate::engine::{self, EngineError, EngineId, EngineKind};
use crate::problem::{validate, CurveClass, ProblemError, RegimeReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Tev,
    Vtev,
    #[default]
    Both,
}

impl Kind {
    fn admits(self, kind: EngineKind) -> bool {
        match self {
            Kind::Tev => kind == EngineKind::Geometric,
            Kind::Vtev => kind == EngineKind::Virtual,
            Kind::Both => true,
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tev" => Ok(Kind::Tev),
            "vtev" => Ok(Kind::Vtev),
            "both" => Ok(Kind::Both),
            _ => Err(format!("unknown kind {s:?}")),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Tev => "tev",
            Kind::Vtev => "vtev",
            Kind::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    #[default]
    Auto,
    Grr,
    Closed,
    Residue,
    Qh,
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "grr" => Ok(EngineChoice::Grr),
            "closed" => Ok(EngineChoice::Closed),
            "residue" => Ok(EngineChoice::Residue),
            "qh" => Ok(EngineChoice::Qh),
            _ => Err(format!("unknown engine {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("regime violation: {0}")]
    Regime(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputationReport {
    pub r: String,
    pub g: String,
    pub d: String,
    pub k: Vec<String>,
    pub n: String,
    pub n_derived: bool,
    pub kind: Kind,
    pub regime: RegimeReport,
    /// Engine name to value.
    pub engines: BTreeMap<String, String>,
    /// Engine name to error message, for engines that failed.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<String, String>,
    pub tev: Option<String>,
    pub vtev: Option<String>,
    /// `agree`, `disagree` or `skipped`; only set for automatic engine choice.
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl ComputationReport {
    /// True when any engine failed internally or the verdict is a disagreement.
    pub fn inconsistent(&self) -> bool {
        self.verdict.as_deref() == Some("disagree")
            || (self.verdict.is_none() && !self.errors.is_empty())
    }
}

const CLOSED: [EngineId; 6] = [
    EngineId::ClosedL1,
    EngineId::Genus0,
    EngineId::R2L2,
    EngineId::VirtualL1,
    EngineId::ProjectiveReference,
    EngineId::P1,
];

fn select(
    choice: EngineChoice,
    kind: Kind,
    available: &BTreeSet<EngineId>,
) -> Result<Vec<EngineId>, ComputeError> {
    let wanted: Vec<EngineId> = match choice {
        EngineChoice::Auto => available.iter().copied().collect(),
        EngineChoice::Grr => vec![EngineId::Grr],
        EngineChoice::Residue => vec![EngineId::Residue],
        EngineChoice::Qh => vec![EngineId::Qh],
        EngineChoice::Closed => CLOSED
            .into_iter()
            .filter(|e| available.contains(e))
            .collect(),
    };
    let chosen: Vec<EngineId> = wanted
        .into_iter()
        .filter(|e| kind.admits(e.kind()))
        .collect();
    if chosen.is_empty() {
        return Err(ComputeError::Regime(format!(
            "no {kind} engine applies for the requested choice"
        )));
    }
    if let Some(missing) = chosen.iter().find(|e| !available.contains(e)) {
        return Err(ComputeError::Regime(format!(
            "engine {missing} does not apply to this instance"
        )));
    }
    Ok(chosen)
}

fn first_value(
    outcomes: &[(EngineId, Result<BigRational, EngineError>)],
    kind: EngineKind,
) -> Option<String> {
    outcomes
        .iter()
        .find(|(id, res)| id.kind() == kind && res.is_ok())
        .and_then(|(_, res)| res.as_ref().ok())
        .map(BigRational::to_string)
}

pub fn compute(
    r: i64,
    g: i64,
    beta: CurveClass,
    n: Option<i64>,
    kind: Kind,
    choice: EngineChoice,
) -> Result<ComputationReport, ComputeError> {
    let (p, rep) = validate(r, g, beta, n)?;
    let chosen = select(choice, kind, &rep.engines_available)?;
    let outcomes: Vec<(EngineId, Result<BigRational, EngineError>)> =
        chosen.into_iter().map(|id| (id, engine::run(id, &p))).collect();
    let (verdict, reason) = if choice == EngineChoice::Auto {
        match judge(&outcomes, rep.geometric_regime()) {
            Verdict::Skipped(why) => (Some("skipped".to_string()), Some(why)),
            v => (Some(v.label().to_string()), None),
        }
    } else {
        (None, None)
    };
    let mut engines = BTreeMap::new();
    let mut errors = BTreeMap::new();
    for (id, res) in &outcomes {
        match res {
            Ok(v) => engines.insert(id.name().to_string(), v.to_string()),
            Err(e) => errors.insert(id.name().to_string(), e.to_string()),
        };
    }
    Ok(ComputationReport {
        r: p.r.to_string(),
        g: p.g.to_string(),
        d: p.d().to_string(),
        k: p.k().iter().map(i64::to_string).collect(),
        n: p.n.to_string(),
        n_derived: n.is_none(),
        kind,
        tev: first_value(&outcomes, EngineKind::Geometric),
        vtev: first_value(&outcomes, EngineKind::Virtual),
        regime: rep,
        engines,
        errors,
        verdict,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tev_example() {
        let rep = compute(2, 0, CurveClass::new(3, [1]), None, Kind::Tev, EngineChoice::Auto).unwrap();
        assert_eq!(rep.tev.as_deref(), Some("1"));
        assert_eq!(rep.n, "5");
        assert!(rep.n_derived);
        assert_eq!(rep.verdict.as_deref(), Some("agree"));
        assert!(rep.vtev.is_none());
    }

    #[test]
    fn vtev_qh_example() {
        let rep = compute(2, 1, CurveClass::new(1, [1]), Some(1), Kind::Vtev, EngineChoice::Qh).unwrap();
        assert_eq!(rep.vtev.as_deref(), Some("0"));
        assert!(rep.verdict.is_none());
    }

    #[test]
    fn unbalanced_and_out_of_regime() {
        let err = compute(2, 0, CurveClass::new(3, [1]), Some(4), Kind::Both, EngineChoice::Auto);
        assert!(matches!(err, Err(ComputeError::Problem(ProblemError::NotBalanced(_)))));
        let err = compute(2, 1, CurveClass::new(1, [1]), Some(1), Kind::Tev, EngineChoice::Grr);
        assert!(matches!(err, Err(ComputeError::Regime(_))));
        let err = compute(2, 0, CurveClass::new(3, [1]), None, Kind::Tev, EngineChoice::Qh);
        assert!(matches!(err, Err(ComputeError::Regime(_))));
    }

    #[test]
    fn json_numbers_are_strings() {
        let rep = compute(2, 1, CurveClass::new(5, [1]), None, Kind::Both, EngineChoice::Auto).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["tev"], "7");
        assert_eq!(json["vtev"], "7");
        assert_eq!(json["n"], "7");
        assert_eq!(json["k"][0], "1");
        let back: ComputationReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, rep);
    }
}
