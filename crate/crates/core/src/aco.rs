//! Continuous ant-colony construction over a solution archive.
//!
//! The archive plays the role of the pheromone: each row seeds one Gaussian
//! per decision variable. An ant picks one guide row with probability
//! proportional to its weight, then samples every variable from a normal
//! centred on the guide with a spread proportional to the mean distance from
//! the guide to the other rows in that column.

use std::f64::consts::PI;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outranking::StrengthWeakness;

/// Number of redraws for a Gaussian sample that lands outside the box before
/// it is clamped to the violated bound.
pub const BOUNDARY_RESAMPLES: usize = 10;

/// Box-constrained decision space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidConfig("search space needs at least one variable".into()));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidConfig(format!(
                    "variable {j}: bounds [{lo}, {hi}] must be finite with lower < upper"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// Uniform sample from the box.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.random_range(lo..=hi))
            .collect()
    }
}

/// One archive row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: Vec<f64>,
    pub objectives: Vec<f64>,
    /// Objectives after normalization over the set the row was last ranked in.
    pub normalized: Vec<f64>,
    /// Aggregate constraint violation, 0 when feasible.
    pub violation: f64,
    /// 1-based front index.
    pub front: usize,
    /// Outranking scores, present in preference mode.
    pub score: Option<StrengthWeakness>,
    /// Iteration in which the row was constructed (0 for the initial archive).
    pub birth: usize,
    /// Creation sequence number, unique within a run.
    pub id: usize,
}

/// The pheromone archive: κ solutions sorted by front with their weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PheromoneArchive {
    solutions: Vec<Solution>,
    weights: Vec<f64>,
    zeta: f64,
    xi: f64,
}

impl PheromoneArchive {
    pub fn new(solutions: Vec<Solution>, weights: Vec<f64>, zeta: f64, xi: f64) -> Result<Self> {
        if solutions.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "archive needs at least 2 solutions, got {}",
                solutions.len()
            )));
        }
        if weights.len() != solutions.len() {
            return Err(Error::DimensionMismatch {
                expected: solutions.len(),
                actual: weights.len(),
            });
        }
        check_zeta_xi(zeta, xi)?;
        if solutions.windows(2).any(|w| w[0].front > w[1].front) {
            return Err(Error::InvalidConfig("archive rows must be sorted by front".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || weights.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidConfig(
                "archive weights must be finite, non-negative and not all zero".into(),
            ));
        }
        Ok(Self {
            solutions,
            weights,
            zeta,
            xi,
        })
    }

    pub fn kappa(&self) -> usize {
        self.solutions.len()
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn into_solutions(self) -> Vec<Solution> {
        self.solutions
    }

    /// Selection probabilities `ω_l / Σ ω`.
    pub fn probabilities(&self) -> Vec<f64> {
        let total: f64 = self.weights.iter().sum();
        self.weights.iter().map(|w| w / total).collect()
    }

    /// Standard deviation of the Gaussian centred on row `l` for variable `j`.
    pub fn kernel_std(&self, l: usize, j: usize) -> f64 {
        let centre = self.solutions[l].x[j];
        let spread: f64 = self.solutions.iter().map(|s| (s.x[j] - centre).abs()).sum();
        self.xi * spread / (self.kappa() - 1) as f64
    }

    /// Builds one decision vector: pick a guide once, then sample every
    /// variable around it.
    pub fn construct_solution<R: Rng + ?Sized>(&self, space: &SearchSpace, rng: &mut R) -> Vec<f64> {
        let guide = select_guide(&self.weights, rng);
        (0..space.dim())
            .map(|j| {
                let mean = self.solutions[guide].x[j];
                let std = self.kernel_std(guide, j);
                sample_in_box(mean, std, space.lower[j], space.upper[j], rng)
            })
            .collect()
    }
}

pub(crate) fn check_zeta_xi(zeta: f64, xi: f64) -> Result<()> {
    if !(zeta.is_finite() && zeta > 0.0) {
        return Err(Error::InvalidConfig(format!("zeta must be > 0, got {zeta}")));
    }
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::InvalidConfig(format!("xi must be in (0, 1], got {xi}")));
    }
    Ok(())
}

/// Free-function form of [`PheromoneArchive::kernel_std`]; rejects `κ < 2`.
pub fn kernel_std(archive: &PheromoneArchive, l: usize, j: usize) -> Result<f64> {
    if archive.kappa() < 2 {
        return Err(Error::InvalidConfig("kernel spread needs at least 2 archive rows".into()));
    }
    Ok(archive.kernel_std(l, j))
}

fn sample_in_box<R: Rng + ?Sized>(mean: f64, std: f64, lower: f64, upper: f64, rng: &mut R) -> f64 {
    if std <= 0.0 || !std.is_finite() {
        return mean.clamp(lower, upper);
    }
    let normal = Normal::new(mean, std).expect("positive finite std");
    let mut value = normal.sample(rng);
    for _ in 0..BOUNDARY_RESAMPLES {
        if (lower..=upper).contains(&value) {
            return value;
        }
        value = normal.sample(rng);
    }
    value.clamp(lower, upper)
}

/// Front-based weights: a Gaussian of the front index with mean 1 and
/// standard deviation `ζ · F_max`, where `F_max` is the last row's front.
pub fn rank_weights(fronts: &[usize], zeta: f64) -> Vec<f64> {
    let Some(&last) = fronts.last() else {
        return Vec::new();
    };
    let scale = zeta * last.max(1) as f64;
    fronts.iter().map(|&f| gaussian_weight(f as f64 - 1.0, scale)).collect()
}

/// Position-based weights for a sorted archive: a Gaussian of the row index
/// with mean 1 and standard deviation `ζ · κ`.
pub fn rank_weights_positional(kappa: usize, zeta: f64) -> Vec<f64> {
    let scale = zeta * kappa as f64;
    (0..kappa).map(|l| gaussian_weight(l as f64, scale)).collect()
}

#[inline]
fn gaussian_weight(offset: f64, scale: f64) -> f64 {
    (-(offset * offset) / (2.0 * scale * scale)).exp() / (scale * (2.0 * PI).sqrt())
}

/// Roulette selection of a row index with probability proportional to its weight.
pub fn select_guide<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    WeightedIndex::new(weights)
        .expect("guide weights must be finite, non-negative and not all zero")
        .sample(rng)
}
