//! Interval outranking preference model.
//!
//! A [`DmModel`] holds a decision maker's interval-valued parameters. From it
//! we derive, for any ordered pair of objective vectors `(x, y)` (all
//! objectives minimized):
//!
//! * the concordance coalition and its interval concordance index `c(x, y)`,
//! * the discordance index `d(x, y)` driven by veto thresholds,
//! * the credibility `σ(x, y) = min(P(c(x, y) >= λ), d(x, y))`,
//! * the crisp relations outranking (`σ >= β`) and strict preference.
//!
//! Over a population, each solution gets a *strength* (how many others it
//! outranks) and a *weakness* (how many others are strictly preferred to it).
//! Solutions are then ordered lexicographically on `(weakness, -strength)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{possibility, Interval};
pub use crate::pareto::pareto_dominates;

/// Slack used when checking the weight-sum conditions, so that generated or
/// hand-typed weights summing to one up to rounding are accepted.
const WEIGHT_SUM_SLACK: f64 = 1e-9;

/// A decision maker's outranking parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DmModelFields", into = "DmModelFields")]
pub struct DmModel {
    weights: Vec<Interval>,
    indifference: Vec<Interval>,
    veto: Vec<Interval>,
    lambda: Interval,
    beta: f64,
}

#[derive(Serialize, Deserialize)]
struct DmModelFields {
    n: usize,
    weights: Vec<Interval>,
    indifference: Vec<Interval>,
    veto: Vec<Interval>,
    lambda: Interval,
    beta: f64,
}

impl TryFrom<DmModelFields> for DmModel {
    type Error = Error;

    fn try_from(f: DmModelFields) -> Result<Self> {
        if f.weights.len() != f.n {
            return Err(Error::InvalidDm(format!(
                "n = {} but {} weights given",
                f.n,
                f.weights.len()
            )));
        }
        DmModel::new(f.weights, f.indifference, f.veto, f.lambda, f.beta)
    }
}

impl From<DmModel> for DmModelFields {
    fn from(dm: DmModel) -> Self {
        DmModelFields {
            n: dm.n(),
            weights: dm.weights,
            indifference: dm.indifference,
            veto: dm.veto,
            lambda: dm.lambda,
            beta: dm.beta,
        }
    }
}

impl DmModel {
    /// Validates and builds a model. Every violated constraint is reported by
    /// name and criterion index.
    pub fn new(
        weights: Vec<Interval>,
        indifference: Vec<Interval>,
        veto: Vec<Interval>,
        lambda: Interval,
        beta: f64,
    ) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidDm("at least one criterion is required".into()));
        }
        if indifference.len() != n {
            return Err(Error::InvalidDm(format!(
                "indifference has {} thresholds, expected n = {n}",
                indifference.len()
            )));
        }
        if veto.len() != n {
            return Err(Error::InvalidDm(format!(
                "veto has {} thresholds, expected n = {n}",
                veto.len()
            )));
        }
        for (k, w) in weights.iter().enumerate() {
            if w.lo() <= 0.0 {
                return Err(Error::InvalidDm(format!(
                    "weight {} lower limit must be > 0, got {}",
                    k + 1,
                    w.lo()
                )));
            }
        }
        let sum_lo: f64 = weights.iter().map(Interval::lo).sum();
        let sum_hi: f64 = weights.iter().map(Interval::hi).sum();
        if sum_lo > 1.0 + WEIGHT_SUM_SLACK {
            return Err(Error::InvalidDm(format!(
                "sum of weight lower limits must be <= 1, got {sum_lo}"
            )));
        }
        if sum_hi < 1.0 - WEIGHT_SUM_SLACK {
            return Err(Error::InvalidDm(format!(
                "sum of weight upper limits must be >= 1, got {sum_hi}"
            )));
        }
        for (k, (v, q)) in veto.iter().zip(&indifference).enumerate() {
            if !v.gt(q) {
                return Err(Error::InvalidDm(format!(
                    "veto {} = {v} must exceed indifference {} = {q}",
                    k + 1,
                    k + 1
                )));
            }
        }
        if lambda.lo() < 0.5 {
            return Err(Error::InvalidDm(format!(
                "lambda lower limit must be >= 0.5, got {}",
                lambda.lo()
            )));
        }
        if lambda.hi() > 1.0 {
            return Err(Error::InvalidDm(format!(
                "lambda upper limit must be <= 1, got {}",
                lambda.hi()
            )));
        }
        if !beta.is_finite() || beta < 0.5 {
            return Err(Error::InvalidDm(format!("beta must be >= 0.5, got {beta}")));
        }
        Ok(Self {
            weights,
            indifference,
            veto,
            lambda,
            beta,
        })
    }

    /// Number of criteria (objectives).
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Interval] {
        &self.weights
    }

    pub fn indifference(&self) -> &[Interval] {
        &self.indifference
    }

    pub fn veto(&self) -> &[Interval] {
        &self.veto
    }

    pub fn lambda(&self) -> Interval {
        self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn check_pair(&self, fx: &[f64], fy: &[f64]) -> Result<()> {
        check_len(self.n(), fx.len())?;
        check_len(self.n(), fy.len())
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

/// Concordance, discordance and credibility of `x S y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CredibilityRecord {
    pub concordance: Interval,
    pub discordance: f64,
    pub sigma: f64,
}

/// `|S(O, x)|` and `|P(O, x)|`, self excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrengthWeakness {
    pub strength: usize,
    pub weakness: usize,
}

impl StrengthWeakness {
    /// Lexicographic order key: smaller weakness first, then larger strength.
    #[inline]
    pub fn key(&self) -> (usize, std::cmp::Reverse<usize>) {
        (self.weakness, std::cmp::Reverse(self.strength))
    }
}

#[inline]
fn in_coalition(fx_k: f64, fy_k: f64, q: &Interval) -> bool {
    possibility(&Interval::point(fy_k - fx_k), &-*q) >= 0.5
}

/// Criteria `k` where `x` is at least as good as `y` up to indifference,
/// i.e. `P(f_k(y) - f_k(x) >= -q_k) >= 0.5`. Returns a membership mask.
pub fn concordance_coalition(fx: &[f64], fy: &[f64], dm: &DmModel) -> Result<Vec<bool>> {
    dm.check_pair(fx, fy)?;
    Ok(coalition_mask(fx, fy, dm))
}

fn coalition_mask(fx: &[f64], fy: &[f64], dm: &DmModel) -> Vec<bool> {
    fx.iter()
        .zip(fy)
        .zip(&dm.indifference)
        .map(|((&a, &b), q)| in_coalition(a, b, q))
        .collect()
}

/// Interval concordance index for a given coalition mask.
pub fn concordance_from_mask(mask: &[bool], weights: &[Interval]) -> Interval {
    let (mut c_lo, mut c_hi, mut d_lo, mut d_hi) = (0.0, 0.0, 0.0, 0.0);
    for (&inside, w) in mask.iter().zip(weights) {
        if inside {
            c_lo += w.lo();
            c_hi += w.hi();
        } else {
            d_lo += w.lo();
            d_hi += w.hi();
        }
    }
    let inside = mask.iter().filter(|&&m| m).count();
    concordance_bounds(inside, mask.len() - inside, c_lo, c_hi, d_lo, d_hi)
}

#[inline]
fn concordance_bounds(inside: usize, outside: usize, c_lo: f64, c_hi: f64, d_lo: f64, d_hi: f64) -> Interval {
    // Every feasible weight vector sums to one, so these two are exact.
    if inside == 0 {
        return Interval::point(0.0);
    }
    if outside == 0 {
        return Interval::point(1.0);
    }
    let lo = if c_lo + d_hi >= 1.0 { c_lo } else { 1.0 - d_hi }.clamp(0.0, 1.0);
    let hi = if c_hi + d_lo <= 1.0 { c_hi } else { 1.0 - d_lo }.clamp(0.0, 1.0);
    // Valid weights keep lo <= hi mathematically; rounding can flip them by an ulp.
    Interval::new(lo.min(hi), hi).expect("concordance limits are finite")
}

pub fn concordance_index(fx: &[f64], fy: &[f64], dm: &DmModel) -> Result<Interval> {
    let mask = concordance_coalition(fx, fy, dm)?;
    Ok(concordance_from_mask(&mask, &dm.weights))
}

/// `d(x, y) = 1 - max_{k in D} P(f_k(x) - f_k(y) >= v_k)`, and 1 when the
/// discordance coalition is empty.
pub fn discordance_index(fx: &[f64], fy: &[f64], dm: &DmModel) -> Result<f64> {
    let mask = concordance_coalition(fx, fy, dm)?;
    Ok(discordance_from_mask(fx, fy, &mask, &dm.veto))
}

fn discordance_from_mask(fx: &[f64], fy: &[f64], mask: &[bool], veto: &[Interval]) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..mask.len() {
        if !mask[k] {
            worst = worst.max(possibility(&Interval::point(fx[k] - fy[k]), &veto[k]));
        }
    }
    1.0 - worst
}

pub fn credibility(fx: &[f64], fy: &[f64], dm: &DmModel) -> Result<CredibilityRecord> {
    dm.check_pair(fx, fy)?;
    Ok(credibility_unchecked(fx, fy, dm))
}

/// Credibility without length checks; callers guarantee `fx.len() == fy.len() == dm.n()`.
#[inline]
pub(crate) fn credibility_unchecked(fx: &[f64], fy: &[f64], dm: &DmModel) -> CredibilityRecord {
    let (mut c_lo, mut c_hi, mut d_lo, mut d_hi) = (0.0, 0.0, 0.0, 0.0);
    let mut worst: f64 = 0.0;
    let mut inside = 0;
    for k in 0..fx.len() {
        let w = &dm.weights[k];
        if in_coalition(fx[k], fy[k], &dm.indifference[k]) {
            inside += 1;
            c_lo += w.lo();
            c_hi += w.hi();
        } else {
            d_lo += w.lo();
            d_hi += w.hi();
            worst = worst.max(possibility(&Interval::point(fx[k] - fy[k]), &dm.veto[k]));
        }
    }
    let concordance = concordance_bounds(inside, fx.len() - inside, c_lo, c_hi, d_lo, d_hi);
    let discordance = 1.0 - worst;
    let sigma = possibility(&concordance, &dm.lambda).min(discordance);
    CredibilityRecord {
        concordance,
        discordance,
        sigma,
    }
}

/// Relation `x S y`: `σ(x, y) >= β`.
pub fn outranks(fx: &[f64], fy: &[f64], dm: &DmModel) -> Result<bool> {
    Ok(credibility(fx, fy, dm)?.sigma >= dm.beta)
}

/// Relation `x Pr y`: Pareto dominance, or `x S y` without `y S x`.
pub fn prefers(fx: &[f64], fy: &[f64], dm: &DmModel) -> Result<bool> {
    if pareto_dominates(fx, fy)? {
        return Ok(true);
    }
    Ok(outranks(fx, fy, dm)? && !outranks(fy, fx, dm)?)
}

/// Pairwise relations over a population, computed once.
///
/// Holds the outranking matrix `S` and the preference matrix `Pr` in row-major
/// order (`s[i * len + j]` is `i S j`). The diagonal is left false.
#[derive(Debug, Clone)]
pub struct RelationMatrix {
    len: usize,
    outranks: Vec<bool>,
    prefers: Vec<bool>,
}

impl RelationMatrix {
    pub fn new(pop: &[Vec<f64>], dm: &DmModel) -> Result<Self> {
        for f in pop {
            check_len(dm.n(), f.len())?;
        }
        let len = pop.len();
        let mut outranks = vec![false; len * len];
        for i in 0..len {
            for j in 0..len {
                if i != j {
                    outranks[i * len + j] =
                        credibility_unchecked(&pop[i], &pop[j], dm).sigma >= dm.beta;
                }
            }
        }
        let mut prefers = vec![false; len * len];
        for i in 0..len {
            for j in (i + 1)..len {
                let (ij, ji) = (i * len + j, j * len + i);
                match crate::pareto::dominance(&pop[i], &pop[j]) {
                    std::cmp::Ordering::Less => prefers[ij] = true,
                    std::cmp::Ordering::Greater => prefers[ji] = true,
                    std::cmp::Ordering::Equal => {
                        prefers[ij] = outranks[ij] && !outranks[ji];
                        prefers[ji] = outranks[ji] && !outranks[ij];
                    }
                }
            }
        }
        Ok(Self {
            len,
            outranks,
            prefers,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn outranks(&self, i: usize, j: usize) -> bool {
        self.outranks[i * self.len + j]
    }

    #[inline]
    pub fn prefers(&self, i: usize, j: usize) -> bool {
        self.prefers[i * self.len + j]
    }

    pub fn strength_weakness(&self, i: usize) -> StrengthWeakness {
        let strength = (0..self.len).filter(|&j| self.outranks(i, j)).count();
        let weakness = (0..self.len).filter(|&j| self.prefers(j, i)).count();
        StrengthWeakness { strength, weakness }
    }

    pub fn all_strength_weakness(&self) -> Vec<StrengthWeakness> {
        let mut out = vec![
            StrengthWeakness {
                strength: 0,
                weakness: 0
            };
            self.len
        ];
        for i in 0..self.len {
            for j in 0..self.len {
                if self.outranks(i, j) {
                    out[i].strength += 1;
                }
                if self.prefers(i, j) {
                    out[j].weakness += 1;
                }
            }
        }
        out
    }
}

/// Strength and weakness of `pop[x_index]` against the rest of `pop`.
pub fn strength_weakness(pop: &[Vec<f64>], x_index: usize, dm: &DmModel) -> Result<StrengthWeakness> {
    if x_index >= pop.len() {
        return Err(Error::InvalidConfig(format!(
            "solution index {x_index} out of range for population of {}",
            pop.len()
        )));
    }
    let x = &pop[x_index];
    let mut sw = StrengthWeakness {
        strength: 0,
        weakness: 0,
    };
    for (j, y) in pop.iter().enumerate() {
        if j == x_index {
            continue;
        }
        if outranks(x, y, dm)? {
            sw.strength += 1;
        }
        if prefers(y, x, dm)? {
            sw.weakness += 1;
        }
    }
    Ok(sw)
}

/// Front index `1 + #{strictly better keys}` for each entry, where better
/// means lexicographically smaller `(weakness, -strength)`.
pub fn fronts_from_scores(scores: &[StrengthWeakness]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by_key(|&i| scores[i].key());
    let mut fronts = vec![0; scores.len()];
    let mut start = 0;
    while start < order.len() {
        let key = scores[order[start]].key();
        let mut end = start;
        while end < order.len() && scores[order[end]].key() == key {
            fronts[order[end]] = start + 1;
            end += 1;
        }
        start = end;
    }
    fronts
}

/// Outranking-based ranking of a population.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateRanking {
    pub scores: Vec<StrengthWeakness>,
    pub fronts: Vec<usize>,
}

/// Ranks `pop` by `(weakness, -strength)`; equal scores share a front.
pub fn surrogate_rank(pop: &[Vec<f64>], dm: &DmModel) -> Result<SurrogateRanking> {
    if pop.is_empty() {
        return Err(Error::InvalidConfig("cannot rank an empty population".into()));
    }
    let scores = RelationMatrix::new(pop, dm)?.all_strength_weakness();
    let fronts = fronts_from_scores(&scores);
    Ok(SurrogateRanking { scores, fronts })
}

/// Indices of the best-compromise solutions (front 1), in population order.
pub fn best_compromise(pop: &[Vec<f64>], dm: &DmModel) -> Result<Vec<usize>> {
    let ranking = surrogate_rank(pop, dm)?;
    Ok(ranking
        .fronts
        .iter()
        .enumerate()
        .filter(|&(_, &f)| f == 1)
        .map(|(i, _)| i)
        .collect())
}
