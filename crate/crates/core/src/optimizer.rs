//! The optimizer main loop.
//!
//! Each iteration constructs `n_ants` solutions from the archive, merges them
//! with the archive, normalizes and ranks the merged set, and keeps the `κ`
//! best. The ranking rule is pluggable: [`OutrankingRanking`] orders solutions
//! by the decision maker's outranking model, [`ParetoRanking`] is the
//! preference-free baseline that uses non-dominated sorting.
//!
//! Constrained problems use a feasibility-first rule on top of either ranking:
//! every feasible solution precedes every infeasible one, and infeasible
//! solutions are ordered by their aggregate violation.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aco::{check_zeta_xi, rank_weights, rank_weights_positional, PheromoneArchive, Solution};
use crate::error::{Error, Result};
use crate::outranking::{fronts_from_scores, DmModel, RelationMatrix, StrengthWeakness};
use crate::pareto::non_dominated_sort;
use crate::problems::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Rank by the outranking model.
    Preference,
    /// Rank by Pareto non-dominated sorting with positional weights.
    ParetoBaseline,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Preference => "preference",
            Mode::ParetoBaseline => "pareto-baseline",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub zeta: f64,
    pub xi: f64,
    pub kappa: usize,
    pub n_ants: usize,
    pub iter_max: usize,
    pub mode: Mode,
    /// Floor on the per-objective range used by normalization.
    pub epsilon: f64,
    /// Carried for configuration compatibility; min–max normalization does
    /// not use it.
    pub alpha: f64,
    pub seed: u64,
    /// Record a per-iteration trace in the result.
    pub trace: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            zeta: 0.1,
            xi: 0.5,
            kappa: 50,
            n_ants: 50,
            iter_max: 100,
            mode: Mode::Preference,
            epsilon: 0.001,
            alpha: 0.5,
            seed: 0,
            trace: false,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        check_zeta_xi(self.zeta, self.xi)?;
        if self.kappa < 2 {
            return Err(Error::InvalidConfig(format!("kappa must be >= 2, got {}", self.kappa)));
        }
        if self.n_ants == 0 {
            return Err(Error::InvalidConfig("n_ants must be >= 1".into()));
        }
        if self.iter_max == 0 {
            return Err(Error::InvalidConfig("iter_max must be >= 1".into()));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!("epsilon must be > 0, got {}", self.epsilon)));
        }
        Ok(())
    }

    /// Objective evaluations performed by a full run.
    pub fn evaluation_budget(&self) -> usize {
        self.kappa + self.iter_max * self.n_ants
    }
}

/// Min–max normalization per objective with the range floored at `epsilon`.
pub fn normalize(objectives: &[Vec<f64>], epsilon: f64) -> Vec<Vec<f64>> {
    let Some(first) = objectives.first() else {
        return Vec::new();
    };
    let n = first.len();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for f in objectives {
        for k in 0..n {
            lo[k] = lo[k].min(f[k]);
            hi[k] = hi[k].max(f[k]);
        }
    }
    let scale: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| (h - l).max(epsilon)).collect();
    objectives
        .iter()
        .map(|f| (0..n).map(|k| (f[k] - lo[k]) / scale[k]).collect())
        .collect()
}

/// Fronts (1-based) and optional outranking scores for a ranked set.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub fronts: Vec<usize>,
    pub scores: Option<Vec<StrengthWeakness>>,
}

/// A rule that orders a set of feasible solutions and turns fronts into
/// archive weights.
pub trait ArchiveRanking: Sync {
    fn rank(&self, normalized: &[Vec<f64>]) -> Result<Ranking>;

    fn weights(&self, fronts: &[usize], zeta: f64) -> Vec<f64>;

    fn mode(&self) -> Mode;
}

/// Orders by `(weakness, -strength)` under a decision maker's model.
#[derive(Debug, Clone)]
pub struct OutrankingRanking {
    pub dm: DmModel,
}

impl ArchiveRanking for OutrankingRanking {
    fn rank(&self, normalized: &[Vec<f64>]) -> Result<Ranking> {
        let scores = RelationMatrix::new(normalized, &self.dm)?.all_strength_weakness();
        Ok(Ranking {
            fronts: fronts_from_scores(&scores),
            scores: Some(scores),
        })
    }

    fn weights(&self, fronts: &[usize], zeta: f64) -> Vec<f64> {
        rank_weights(fronts, zeta)
    }

    fn mode(&self) -> Mode {
        Mode::Preference
    }
}

/// Preference-free ranking by non-dominated sorting.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParetoRanking;

impl ArchiveRanking for ParetoRanking {
    fn rank(&self, normalized: &[Vec<f64>]) -> Result<Ranking> {
        Ok(Ranking {
            fronts: non_dominated_sort(normalized),
            scores: None,
        })
    }

    fn weights(&self, fronts: &[usize], zeta: f64) -> Vec<f64> {
        rank_weights_positional(fronts.len(), zeta)
    }

    fn mode(&self) -> Mode {
        Mode::ParetoBaseline
    }
}

/// Applies the feasibility-first rule around `ranker`.
pub fn rank_with_feasibility(ranker: &dyn ArchiveRanking, normalized: &[Vec<f64>], violations: &[f64]) -> Result<Ranking> {
    let feasible: Vec<usize> = (0..violations.len()).filter(|&i| violations[i] <= 0.0).collect();
    if feasible.len() == violations.len() {
        return ranker.rank(normalized);
    }
    let mut fronts = vec![0usize; violations.len()];
    let mut scores = None;
    let mut last_front = 0;
    if !feasible.is_empty() {
        let subset: Vec<Vec<f64>> = feasible.iter().map(|&i| normalized[i].clone()).collect();
        let inner = ranker.rank(&subset)?;
        for (pos, &i) in feasible.iter().enumerate() {
            fronts[i] = inner.fronts[pos];
        }
        last_front = inner.fronts.iter().copied().max().unwrap_or(0);
        if let Some(inner_scores) = inner.scores {
            let mut all = vec![StrengthWeakness { strength: 0, weakness: 0 }; violations.len()];
            for (pos, &i) in feasible.iter().enumerate() {
                all[i] = inner_scores[pos];
            }
            scores = Some(all);
        }
    } else if ranker.mode() == Mode::Preference {
        scores = Some(vec![StrengthWeakness { strength: 0, weakness: 0 }; violations.len()]);
    }
    for i in 0..violations.len() {
        if violations[i] > 0.0 {
            let better = violations.iter().filter(|&&v| v > 0.0 && v < violations[i]).count();
            fronts[i] = last_front + 1 + better;
        }
    }
    Ok(Ranking { fronts, scores })
}

/// Per-iteration snapshot of the archive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    /// `(front, count)` pairs in ascending front order.
    pub front_histogram: Vec<(usize, usize)>,
    /// Scores of the top archive row in preference mode.
    pub best_score: Option<StrengthWeakness>,
}

/// Mutable optimizer state between steps.
#[derive(Debug, Clone)]
pub struct OptimizerState {
    pub archive: PheromoneArchive,
    pub iteration: usize,
    pub evaluations: usize,
    next_id: usize,
    rng: ChaCha8Rng,
}

/// Binds a problem, a ranking rule and a configuration.
pub struct Optimizer<'a> {
    problem: &'a dyn Problem,
    ranker: &'a dyn ArchiveRanking,
    config: OptimizerConfig,
}

impl<'a> Optimizer<'a> {
    pub fn new(problem: &'a dyn Problem, ranker: &'a dyn ArchiveRanking, config: OptimizerConfig) -> Result<Self> {
        config.validate()?;
        if config.mode != ranker.mode() {
            return Err(Error::InvalidConfig(format!(
                "config mode {} does not match the ranking rule ({})",
                config.mode,
                ranker.mode()
            )));
        }
        Ok(Self { problem, ranker, config })
    }

    pub fn config(&self) -> &OptimizerConfig {
        &self.config
    }

    /// Samples `κ` uniform solutions, evaluates and ranks them.
    pub fn initialize(&self) -> Result<OptimizerState> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let space = self.problem.space();
        let mut rows = Vec::with_capacity(self.config.kappa);
        for id in 0..self.config.kappa {
            let x = space.sample_uniform(&mut rng);
            rows.push(self.evaluate(x, 0, id)?);
        }
        let archive = self.build_archive(rows)?;
        Ok(OptimizerState {
            archive,
            iteration: 0,
            evaluations: self.config.kappa,
            next_id: self.config.kappa,
            rng,
        })
    }

    fn evaluate(&self, x: Vec<f64>, birth: usize, id: usize) -> Result<Solution> {
        let eval = self.problem.evaluate(&x)?;
        Ok(Solution {
            x,
            normalized: Vec::new(),
            objectives: eval.objectives,
            violation: eval.violation,
            front: 0,
            score: None,
            birth,
            id,
        })
    }

    /// Normalizes and ranks `rows`, returning them in truncation order.
    fn rank_rows(&self, mut rows: Vec<Solution>) -> Result<Vec<Solution>> {
        let objectives: Vec<Vec<f64>> = rows.iter().map(|s| s.objectives.clone()).collect();
        let normalized = normalize(&objectives, self.config.epsilon);
        let violations: Vec<f64> = rows.iter().map(|s| s.violation).collect();
        let ranking = rank_with_feasibility(self.ranker, &normalized, &violations)?;
        for (i, (row, norm)) in rows.iter_mut().zip(normalized).enumerate() {
            row.normalized = norm;
            row.front = ranking.fronts[i];
            row.score = ranking.scores.as_ref().map(|s| s[i]);
        }
        rows.sort_by_key(|s| (s.front, Reverse(s.score.map_or(0, |sc| sc.strength)), s.birth, s.id));
        Ok(rows)
    }

    /// Ranks the archive rows among themselves and attaches weights.
    fn build_archive(&self, rows: Vec<Solution>) -> Result<PheromoneArchive> {
        let rows = self.rank_rows(rows)?;
        let fronts: Vec<usize> = rows.iter().map(|s| s.front).collect();
        let weights = self.ranker.weights(&fronts, self.config.zeta);
        PheromoneArchive::new(rows, weights, self.config.zeta, self.config.xi)
    }

    /// One iteration: construct, merge, normalize, rank, truncate.
    pub fn step(&self, state: &mut OptimizerState) -> Result<()> {
        let iteration = state.iteration + 1;
        let stream_seed: u64 = state.rng.random();
        let space = self.problem.space();
        let mut merged: Vec<Solution> = state.archive.solutions().to_vec();
        for ant in 0..self.config.n_ants {
            let mut ant_rng = ChaCha8Rng::seed_from_u64(stream_seed);
            ant_rng.set_stream(ant as u64);
            let x = state.archive.construct_solution(space, &mut ant_rng);
            merged.push(self.evaluate(x, iteration, state.next_id)?);
            state.next_id += 1;
        }
        state.evaluations += self.config.n_ants;

        let mut survivors = self.rank_rows(merged)?;
        survivors.truncate(self.config.kappa);
        state.archive = self.build_archive(survivors)?;
        state.iteration = iteration;
        Ok(())
    }

    pub fn run(&self) -> Result<RunResult> {
        let mut state = self.initialize()?;
        let mut trace = Vec::new();
        if self.config.trace {
            trace.push(trace_entry(&state));
        }
        for _ in 0..self.config.iter_max {
            self.step(&mut state)?;
            if self.config.trace {
                trace.push(trace_entry(&state));
            }
        }
        Ok(RunResult::new(self.problem, &self.config, state, trace))
    }
}

fn trace_entry(state: &OptimizerState) -> TraceEntry {
    let mut histogram = BTreeMap::new();
    for s in state.archive.solutions() {
        *histogram.entry(s.front).or_insert(0) += 1;
    }
    TraceEntry {
        iteration: state.iteration,
        front_histogram: histogram.into_iter().collect(),
        best_score: state.archive.solutions()[0].score,
    }
}

/// One archive row as persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchiveRecord {
    pub x: Vec<f64>,
    pub objectives: Vec<f64>,
    pub normalized: Vec<f64>,
    pub violation: f64,
    pub front: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<StrengthWeakness>,
    pub weight: f64,
}

/// Outcome of a full run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub problem: String,
    pub n_obj: usize,
    pub seed: u64,
    pub config: OptimizerConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dm: Option<DmModel>,
    pub evaluations: usize,
    pub archive: Vec<ArchiveRecord>,
    /// Archive indices of front 1.
    pub best_compromise: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
}

impl RunResult {
    fn new(problem: &dyn Problem, config: &OptimizerConfig, state: OptimizerState, trace: Vec<TraceEntry>) -> Self {
        let weights = state.archive.weights().to_vec();
        let archive: Vec<ArchiveRecord> = state
            .archive
            .into_solutions()
            .into_iter()
            .zip(weights)
            .map(|(s, weight)| ArchiveRecord {
                x: s.x,
                objectives: s.objectives,
                normalized: s.normalized,
                violation: s.violation,
                front: s.front,
                score: s.score,
                weight,
            })
            .collect();
        let best_compromise = archive
            .iter()
            .enumerate()
            .filter(|(_, r)| r.front == 1)
            .map(|(i, _)| i)
            .collect();
        Self {
            problem: problem.id(),
            n_obj: problem.n_obj(),
            seed: config.seed,
            config: config.clone(),
            dm: None,
            evaluations: state.evaluations,
            archive,
            best_compromise,
            trace,
        }
    }

    /// Raw objective vectors of the front-1 rows.
    pub fn best_compromise_objectives(&self) -> Vec<Vec<f64>> {
        self.best_compromise.iter().map(|&i| self.archive[i].objectives.clone()).collect()
    }

    pub fn archive_objectives(&self) -> Vec<Vec<f64>> {
        self.archive.iter().map(|r| r.objectives.clone()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Runs the optimizer end to end. Preference mode requires a decision-maker
/// model whose criterion count matches the problem; baseline mode ignores `dm`.
pub fn run(problem: &dyn Problem, dm: Option<&DmModel>, config: &OptimizerConfig) -> Result<RunResult> {
    config.validate()?;
    match config.mode {
        Mode::Preference => {
            let dm = dm.ok_or_else(|| Error::InvalidConfig("preference mode requires a decision-maker model".into()))?;
            if dm.n() != problem.n_obj() {
                return Err(Error::InvalidConfig(format!(
                    "decision-maker model has {} criteria but {} has {} objectives",
                    dm.n(),
                    problem.id(),
                    problem.n_obj()
                )));
            }
            let ranker = OutrankingRanking { dm: dm.clone() };
            let optimizer = Optimizer::new(problem, &ranker, config.clone())?;
            let mut result = optimizer.run()?;
            result.dm = Some(dm.clone());
            Ok(result)
        }
        Mode::ParetoBaseline => {
            let ranker = ParetoRanking;
            Optimizer::new(problem, &ranker, config.clone())?.run()
        }
    }
}
