//! Exact geometric and virtual Tevelev degrees of blow-ups of `P^r` at up
//! to `r + 1` general points.

pub mod closedform;
pub mod cohring;
pub mod crosscheck;
pub mod engine;
pub mod exactmath;
pub mod grr;
pub mod problem;
pub mod qh;
pub mod report;

pub use engine::{EngineError, EngineId, EngineKind};
pub use problem::{validate, CurveClass, Problem, ProblemError, RegimeReport, Sae};
