//! Grid scans that route every instance to all applicable engines and
//! compare the answers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{self, EngineError, EngineId, EngineKind};
use crate::problem::{validate, CurveClass, Problem, RegimeReport};
use crate::qh;

/// Ranges for a scan over Tevelev instances. `n` is always derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TevelevGrid {
    pub r: RangeInclusive<i64>,
    pub ell: RangeInclusive<usize>,
    pub g: RangeInclusive<i64>,
    pub k: RangeInclusive<i64>,
    pub d: RangeInclusive<i64>,
    /// `None` means every available engine.
    pub engines: Option<BTreeSet<EngineId>>,
}

/// Ranges for a scan over the coefficient lemma; `(m, d, k)` run over
/// every hypothesis-satisfying triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaGrid {
    pub r: RangeInclusive<usize>,
    pub ell: RangeInclusive<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridSpec {
    Tevelev(TevelevGrid),
    QhLemma(LemmaGrid),
}

pub const PRESETS: [&str; 4] = ["l1-small", "genus0-small", "r2l2", "qh-lemma"];

impl GridSpec {
    pub fn preset(name: &str) -> Option<GridSpec> {
        let grid = match name {
            "l1-small" => GridSpec::Tevelev(TevelevGrid {
                r: 2..=3,
                ell: 1..=1,
                g: 0..=1,
                k: 0..=2,
                d: 0..=20,
                engines: None,
            }),
            "genus0-small" => GridSpec::Tevelev(TevelevGrid {
                r: 2..=3,
                ell: 0..=4,
                g: 0..=0,
                k: 0..=2,
                d: 0..=12,
                engines: None,
            }),
            "r2l2" => GridSpec::Tevelev(TevelevGrid {
                r: 2..=2,
                ell: 2..=2,
                g: 0..=2,
                k: 1..=2,
                d: 0..=16,
                engines: None,
            }),
            "qh-lemma" => GridSpec::QhLemma(LemmaGrid {
                r: 2..=3,
                ell: 1..=15,
            }),
            _ => return None,
        };
        Some(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Instance {
    Tevelev {
        r: i64,
        g: i64,
        n: i64,
        d: i64,
        k: Vec<i64>,
    },
    QhLemma {
        r: usize,
        ell: i64,
        m: i64,
        d: i64,
        k: i64,
    },
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Tevelev { r, g, n, d, k } => {
                let k: Vec<String> = k.iter().map(i64::to_string).collect();
                write!(f, "r={r} g={g} n={n} d={d} k=[{}]", k.join(","))
            }
            Instance::QhLemma { r, ell, m, d, k } => {
                write!(f, "lemma r={r} ell={ell} m={m} d={d} k={k}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree,
    Skipped(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Agree => "agree",
            Verdict::Disagree => "disagree",
            Verdict::Skipped(_) => "skipped",
        }
    }
}

/// One engine's answer; `value` and `error` are mutually exclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineValue {
    pub engine: String,
    pub kind: Option<EngineKind>,
    pub value: Option<BigRational>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub instance: Instance,
    pub regime: Option<RegimeReport>,
    pub values: Vec<EngineValue>,
    pub verdict: Verdict,
}

impl CheckResult {
    pub fn value_of(&self, engine: &str) -> Option<&BigRational> {
        self.values
            .iter()
            .find(|v| v.engine == engine)
            .and_then(|v| v.value.as_ref())
    }
}

/// Compare engine outcomes: same-kind values must match, and geometric
/// and virtual values must match inside the geometric regime.
pub fn judge(
    outcomes: &[(EngineId, Result<BigRational, EngineError>)],
    geometric_regime: bool,
) -> Verdict {
    let mut ok: Vec<(EngineId, &BigRational)> = Vec::new();
    let mut skipped = Vec::new();
    for (id, res) in outcomes {
        match res {
            Ok(v) => ok.push((*id, v)),
            Err(e) if e.is_regime() => skipped.push(id.name()),
            Err(_) => return Verdict::Disagree,
        }
    }
    if ok.len() < 2 {
        let mut reason = format!("{} engine(s) applicable", ok.len());
        if !skipped.is_empty() {
            reason.push_str(&format!("; out of regime: {}", skipped.join(", ")));
        }
        return Verdict::Skipped(reason);
    }
    let first_of = |kind: EngineKind| ok.iter().find(|(id, _)| id.kind() == kind).map(|x| x.1);
    for kind in [EngineKind::Geometric, EngineKind::Virtual] {
        if let Some(first) = first_of(kind) {
            if ok.iter().any(|(id, v)| id.kind() == kind && *v != first) {
                return Verdict::Disagree;
            }
        }
    }
    if geometric_regime {
        if let (Some(a), Some(b)) = (first_of(EngineKind::Geometric), first_of(EngineKind::Virtual)) {
            if a != b {
                return Verdict::Disagree;
            }
        }
    }
    Verdict::Agree
}

/// Run `engines` (or every available engine) on one problem.
pub fn check_problem(p: &Problem, engines: Option<&BTreeSet<EngineId>>) -> CheckResult {
    let rep = p.regime();
    let chosen: Vec<EngineId> = match engines {
        Some(set) => set.iter().copied().collect(),
        None => rep.engines_available.iter().copied().collect(),
    };
    let outcomes: Vec<(EngineId, Result<BigRational, EngineError>)> =
        chosen.into_iter().map(|id| (id, engine::run(id, p))).collect();
    let verdict = judge(&outcomes, rep.geometric_regime());
    let values = outcomes
        .into_iter()
        .map(|(id, res)| {
            let (value, error) = match res {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            EngineValue {
                engine: id.name().to_string(),
                kind: Some(id.kind()),
                value,
                error,
            }
        })
        .collect();
    CheckResult {
        instance: Instance::Tevelev {
            r: p.r,
            g: p.g,
            n: p.n,
            d: p.d(),
            k: p.k().to_vec(),
        },
        regime: Some(rep),
        values,
        verdict,
    }
}

fn k_vectors(len: usize, range: &RangeInclusive<i64>) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                range.clone().map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// Balanced instances in lexicographic order of `(r, ell, g, k, d)`.
pub fn tevelev_instances(grid: &TevelevGrid) -> Vec<Problem> {
    let mut out = Vec::new();
    for r in grid.r.clone() {
        for ell in grid.ell.clone() {
            if r < 1 || ell as i64 > r + 1 {
                continue;
            }
            for g in grid.g.clone() {
                for k in k_vectors(ell, &grid.k) {
                    for d in grid.d.clone() {
                        if let Ok((p, _)) = validate(r, g, CurveClass::new(d, k.clone()), None) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Hypothesis-satisfying `(r, ell, m, d, k)` in lexicographic order.
pub fn lemma_instances(grid: &LemmaGrid) -> Vec<(usize, i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for r in grid.r.clone() {
        let ri = r as i64;
        for ell in grid.ell.clone() {
            for m in 0..ell {
                for d in 1..ell - m {
                    for k in 0..=d {
                        if (ri + 1) * d - (ri - 1) * k == ri * (ell - 1) {
                            out.push((r, ell, m, d, k));
                        }
                    }
                }
            }
        }
    }
    out
}

fn check_lemma(&(r, ell, m, d, k): &(usize, i64, i64, i64, i64)) -> CheckResult {
    let instance = Instance::QhLemma { r, ell, m, d, k };
    let (values, verdict) = match qh::qh_coeff_lemma_check(r, ell, m, d, k) {
        Ok((computed, predicted)) => {
            let predicted = BigRational::from_integer(predicted);
            let verdict = if computed == predicted {
                Verdict::Agree
            } else {
                Verdict::Disagree
            };
            let values = vec![
                EngineValue {
                    engine: "qh-ring".into(),
                    kind: None,
                    value: Some(computed),
                    error: None,
                },
                EngineValue {
                    engine: "binomial".into(),
                    kind: None,
                    value: Some(predicted),
                    error: None,
                },
            ];
            (values, verdict)
        }
        Err(e) => (Vec::new(), Verdict::Skipped(e.to_string())),
    };
    CheckResult {
        instance,
        regime: None,
        values,
        verdict,
    }
}

/// Evaluate every instance of `spec` on a pool of `threads` workers; the
/// result order is the enumeration order.
pub fn run_grid(spec: &GridSpec, threads: usize) -> Vec<CheckResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| match spec {
        GridSpec::Tevelev(grid) => tevelev_instances(grid)
            .par_iter()
            .map(|p| check_problem(p, grid.engines.as_ref()))
            .collect(),
        GridSpec::QhLemma(grid) => lemma_instances(grid).par_iter().map(check_lemma).collect(),
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
}

pub fn summarize(results: &[CheckResult]) -> Summary {
    let mut s = Summary {
        total: results.len(),
        ..Summary::default()
    };
    for r in results {
        match r.verdict {
            Verdict::Agree => s.agree += 1,
            Verdict::Disagree => s.disagree += 1,
            Verdict::Skipped(_) => s.skipped += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic_and_balanced() {
        let GridSpec::Tevelev(grid) = GridSpec::preset("genus0-small").unwrap() else {
            unreachable!()
        };
        let all = tevelev_instances(&grid);
        assert!(all.iter().all(|p| p.regime().balanced));
        let keys: Vec<_> = all
            .iter()
            .map(|p| (p.r, p.ell(), p.g, p.k().to_vec(), p.d()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn degenerate_one_point_instance_is_skipped() {
        let (p, _) = validate(2, 1, CurveClass::new(1, [1]), Some(1)).unwrap();
        let engines: BTreeSet<_> = [EngineId::Qh, EngineId::VirtualL1].into();
        let res = check_problem(&p, Some(&engines));
        assert!(matches!(res.verdict, Verdict::Skipped(_)));
        assert_eq!(res.value_of("qh"), Some(&BigRational::from_integer(0.into())));
        assert!(res.value_of("virtual-l1").is_none());
    }

    #[test]
    fn empty_regime_grid_is_all_skipped() {
        // d <= 1 leaves no room for the strong inequality at g = 2
        let spec = GridSpec::Tevelev(TevelevGrid {
            r: 2..=3,
            ell: 2..=2,
            g: 2..=2,
            k: 0..=1,
            d: 0..=1,
            engines: None,
        });
        let res = run_grid(&spec, 2);
        assert!(res.iter().all(|r| matches!(r.verdict, Verdict::Skipped(_))));
    }

    #[test]
    fn deterministic() {
        let spec = GridSpec::preset("l1-small").unwrap();
        assert_eq!(run_grid(&spec, 1), run_grid(&spec, 4));
    }

    #[test]
    fn lemma_preset_all_agree() {
        let res = run_grid(&GridSpec::preset("qh-lemma").unwrap(), 2);
        assert!(!res.is_empty());
        assert!(res.iter().all(|r| r.verdict == Verdict::Agree));
    }
}
