//! Scalable benchmark problems (DTLZ1–9, WFG1–9) with the standard dimension
//! settings, plus samplers for their Pareto fronts.

mod dtlz;
mod front;
mod wfg;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aco::SearchSpace;
use crate::error::{Error, Result};

pub use front::{sample_true_front, FRONT_TOLERANCE};

/// Objective counts used in the reference experiments.
pub const REFERENCE_OBJECTIVE_COUNTS: [usize; 4] = [3, 5, 7, 10];

/// Objective vector and aggregate constraint violation of one solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objectives: Vec<f64>,
    pub violation: f64,
}

/// A box-constrained multi-objective minimization problem.
pub trait Problem: Sync {
    fn id(&self) -> String;

    fn n_obj(&self) -> usize;

    fn space(&self) -> &SearchSpace;

    /// Evaluates `x` without checking its length or bounds.
    fn evaluate_unchecked(&self, x: &[f64]) -> Evaluation;

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        let space = self.space();
        if x.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                actual: x.len(),
            });
        }
        for (index, ((&value, &lower), &upper)) in x.iter().zip(space.lower()).zip(space.upper()).enumerate() {
            if !(lower..=upper).contains(&value) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(self.evaluate_unchecked(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dtlz,
    Wfg,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Dtlz => "DTLZ",
            Family::Wfg => "WFG",
        })
    }
}

/// Problem identifier such as `dtlz2` or `wfg7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemId {
    pub family: Family,
    pub index: u8,
}

impl ProblemId {
    pub fn new(family: Family, index: u8) -> Result<Self> {
        if !(1..=9).contains(&index) {
            return Err(Error::UnknownProblem(format!("{family}{index}").to_lowercase()));
        }
        Ok(Self { family, index })
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Dtlz => write!(f, "dtlz{}", self.index),
            Family::Wfg => write!(f, "wfg{}", self.index),
        }
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (family, rest) = if let Some(rest) = lower.strip_prefix("dtlz") {
            (Family::Dtlz, rest)
        } else if let Some(rest) = lower.strip_prefix("wfg") {
            (Family::Wfg, rest)
        } else {
            return Err(Error::UnknownProblem(s.to_string()));
        };
        let index: u8 = rest.parse().map_err(|_| Error::UnknownProblem(s.to_string()))?;
        ProblemId::new(family, index).map_err(|_| Error::UnknownProblem(s.to_string()))
    }
}

impl Serialize for ProblemId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProblemId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A DTLZ or WFG instance with its dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub n_obj: usize,
    pub n_vars: usize,
    /// Position-related parameter count `k`.
    pub position_params: usize,
    pub has_constraints: bool,
    space: SearchSpace,
}

/// WFG decision-vector sizes for the reference objective counts.
fn wfg_n_vars(n_obj: usize, k: usize) -> usize {
    match n_obj {
        3 => 24,
        5 => 47,
        7 => 70,
        10 => 105,
        _ => k + 20,
    }
}

impl ProblemSpec {
    pub fn new(id: ProblemId, n_obj: usize) -> Result<Self> {
        if n_obj < 2 {
            return Err(Error::InvalidConfig(format!("{id} needs at least 2 objectives, got {n_obj}")));
        }
        let (k, n_vars) = match (id.family, id.index) {
            (Family::Dtlz, 1) => (5, n_obj + 4),
            (Family::Dtlz, 2..=6) => (10, n_obj + 9),
            (Family::Dtlz, 7) => (20, n_obj + 19),
            (Family::Dtlz, 8 | 9) => (n_obj - 1, 10 * n_obj),
            (Family::Wfg, _) => {
                let k = 2 * (n_obj - 1);
                (k, wfg_n_vars(n_obj, k))
            }
            _ => return Err(Error::UnknownProblem(id.to_string())),
        };
        if id == (ProblemId { family: Family::Dtlz, index: 8 }) && n_obj < 3 {
            return Err(Error::InvalidConfig("dtlz8 needs at least 3 objectives".into()));
        }
        let upper: Vec<f64> = match id.family {
            Family::Dtlz => vec![1.0; n_vars],
            Family::Wfg => (1..=n_vars).map(|i| 2.0 * i as f64).collect(),
        };
        let space = SearchSpace::new(vec![0.0; n_vars], upper)?;
        Ok(Self {
            id,
            n_obj,
            n_vars,
            position_params: k,
            has_constraints: id.family == Family::Dtlz && matches!(id.index, 8 | 9),
            space,
        })
    }

    /// Whether the objective count is one of the reference settings.
    pub fn is_reference_setting(&self) -> bool {
        REFERENCE_OBJECTIVE_COUNTS.contains(&self.n_obj)
    }
}

/// Builds the problem with the standard dimension settings.
pub fn make_problem(family: Family, index: u8, n_obj: usize) -> Result<ProblemSpec> {
    ProblemSpec::new(ProblemId::new(family, index)?, n_obj)
}

impl Problem for ProblemSpec {
    fn id(&self) -> String {
        self.id.to_string()
    }

    fn n_obj(&self) -> usize {
        self.n_obj
    }

    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate_unchecked(&self, x: &[f64]) -> Evaluation {
        let m = self.n_obj;
        let (objectives, violation) = match (self.id.family, self.id.index) {
            (Family::Dtlz, 1) => (dtlz::dtlz1(x, m), 0.0),
            (Family::Dtlz, 2) => (dtlz::dtlz2(x, m), 0.0),
            (Family::Dtlz, 3) => (dtlz::dtlz3(x, m), 0.0),
            (Family::Dtlz, 4) => (dtlz::dtlz4(x, m), 0.0),
            (Family::Dtlz, 5) => (dtlz::dtlz5(x, m), 0.0),
            (Family::Dtlz, 6) => (dtlz::dtlz6(x, m), 0.0),
            (Family::Dtlz, 7) => (dtlz::dtlz7(x, m), 0.0),
            (Family::Dtlz, 8) => dtlz::dtlz8(x, m),
            (Family::Dtlz, 9) => dtlz::dtlz9(x, m),
            (Family::Wfg, index) => (wfg::evaluate(index, x, self.position_params, m), 0.0),
            _ => unreachable!("problem id validated at construction"),
        };
        Evaluation { objectives, violation }
    }
}
