//! Region-of-interest construction, distance indicators and the statistical
//! comparison pipeline (rank-sum test, Holm step-down, Borda counts).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::optimizer::normalize;
use crate::outranking::{best_compromise, DmModel};

/// Where an A-RoI came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub problem: String,
    pub n_obj: usize,
    pub dm_id: String,
    pub sample_size: usize,
    pub seed: u64,
}

/// Approximate region of interest: the best-compromise subset of a front
/// sample, in raw objective coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ARoI {
    pub points: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

impl ARoI {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let aroi: Self = serde_json::from_str(text)?;
        if aroi.points.is_empty() {
            return Err(Error::InvalidConfig("A-RoI file has no points".into()));
        }
        Ok(aroi)
    }
}

/// Indices of the best-compromise points of `front_sample` under `dm`.
///
/// The sample is min–max normalized first (floor `epsilon`), so the DM's
/// thresholds are read in the same units the optimizer ranks in.
pub fn aroi_indices(front_sample: &[Vec<f64>], dm: &DmModel, epsilon: f64) -> Result<Vec<usize>> {
    if front_sample.is_empty() {
        return Err(Error::InvalidConfig("front sample is empty".into()));
    }
    best_compromise(&normalize(front_sample, epsilon), dm)
}

pub fn build_aroi(front_sample: &[Vec<f64>], dm: &DmModel, epsilon: f64, provenance: Provenance) -> Result<ARoI> {
    let points = aroi_indices(front_sample, dm, epsilon)?
        .into_iter()
        .map(|i| front_sample[i].clone())
        .collect();
    Ok(ARoI { points, provenance })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorBlock {
    pub min_euclid: f64,
    pub avg_euclid: f64,
    pub min_cheby: f64,
    pub avg_cheby: f64,
}

/// How the two "average" indicators aggregate distances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Averaging {
    /// Mean over `X*` of the distance to the nearest A-RoI point.
    #[default]
    NearestNeighbour,
    /// Mean over all `(x, r)` pairs.
    AllPairs,
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn cheby(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn indicators(final_set: &[Vec<f64>], aroi: &[Vec<f64>]) -> Result<IndicatorBlock> {
    indicators_with(final_set, aroi, Averaging::NearestNeighbour)
}

pub fn indicators_with(final_set: &[Vec<f64>], aroi: &[Vec<f64>], averaging: Averaging) -> Result<IndicatorBlock> {
    if final_set.is_empty() || aroi.is_empty() {
        return Err(Error::InvalidConfig("indicator sets must be non-empty".into()));
    }
    let m = aroi[0].len();
    for p in final_set.iter().chain(aroi) {
        if p.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: p.len(),
            });
        }
    }
    let mut block = IndicatorBlock {
        min_euclid: f64::INFINITY,
        avg_euclid: 0.0,
        min_cheby: f64::INFINITY,
        avg_cheby: 0.0,
    };
    for x in final_set {
        let (mut near_e, mut near_c) = (f64::INFINITY, f64::INFINITY);
        for r in aroi {
            let (e, c) = (euclid(x, r), cheby(x, r));
            near_e = near_e.min(e);
            near_c = near_c.min(c);
            if averaging == Averaging::AllPairs {
                block.avg_euclid += e;
                block.avg_cheby += c;
            }
        }
        block.min_euclid = block.min_euclid.min(near_e);
        block.min_cheby = block.min_cheby.min(near_c);
        if averaging == Averaging::NearestNeighbour {
            block.avg_euclid += near_e;
            block.avg_cheby += near_c;
        }
    }
    let count = match averaging {
        Averaging::NearestNeighbour => final_set.len(),
        Averaging::AllPairs => final_set.len() * aroi.len(),
    } as f64;
    block.avg_euclid /= count;
    block.avg_cheby /= count;
    Ok(block)
}

/// Outcome of a two-sided rank-sum test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSumTest {
    pub p_value: f64,
    pub significant: bool,
    /// Standardized statistic of the first sample; negative when its values
    /// tend to be smaller.
    pub z: f64,
}

/// Smallest sample size accepted by [`wilcoxon_rank_sum`].
pub const MIN_RANK_SUM_SAMPLE: usize = 5;

/// Mid-ranks (1-based) of `values`, plus the tie-correction term `Σ (t³ − t)`.
pub fn mid_ranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        let t = (end - start) as f64;
        ties += t * t * t - t;
        start = end;
    }
    (ranks, ties)
}

/// Two-sided Wilcoxon rank-sum test, normal approximation with tie and
/// continuity corrections.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<RankSumTest> {
    if a.len() < MIN_RANK_SUM_SAMPLE || b.len() < MIN_RANK_SUM_SAMPLE {
        return Err(Error::Statistics(format!(
            "rank-sum test needs at least {MIN_RANK_SUM_SAMPLE} values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::Statistics("rank-sum samples contain NaN".into()));
    }
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = mid_ranks(&pooled);
    let w: f64 = ranks[..a.len()].iter().sum();
    let mean = n1 * (n + 1.0) / 2.0;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(RankSumTest {
            p_value: 1.0,
            significant: false,
            z: 0.0,
        });
    }
    let diff = w - mean;
    let corrected = (diff.abs() - 0.5).max(0.0).copysign(diff);
    let z = corrected / var.sqrt();
    let p_value = erfc(z.abs() / std::f64::consts::SQRT_2).min(1.0);
    Ok(RankSumTest {
        p_value,
        significant: p_value < alpha,
        z,
    })
}

/// Holm's step-down procedure. Decisions are returned in input order.
pub fn holm_bonferroni(p_values: &[f64], alpha: f64) -> Result<Vec<bool>> {
    if let Some(p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Statistics(format!("p-value {p} outside [0, 1]")));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| p_values[i].total_cmp(&p_values[j]));
    let mut reject = vec![false; m];
    for (rank, &i) in order.iter().enumerate() {
        if p_values[i] > alpha / (m - rank) as f64 {
            break;
        }
        reject[i] = true;
    }
    Ok(reject)
}

/// Positions (1 = best) for one problem from per-algorithm scores where a
/// higher score is better. Tied scores share the mean of their positions.
pub fn positions_from_scores(scores: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let names: Vec<&String> = scores.keys().collect();
    let negated: Vec<f64> = names.iter().map(|k| -scores[*k]).collect();
    let (ranks, _) = mid_ranks(&negated);
    names.into_iter().cloned().zip(ranks).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BordaResult {
    /// Per-algorithm position sums.
    pub sums: BTreeMap<String, f64>,
    /// Algorithms from best (lowest sum) to worst.
    pub order: Vec<String>,
}

/// Sums per-problem positions. Every problem must rank the same algorithms.
pub fn borda_ranking(positions: &[BTreeMap<String, f64>]) -> Result<BordaResult> {
    let mut sums: BTreeMap<String, f64> = BTreeMap::new();
    if let Some(first) = positions.first() {
        for (i, problem) in positions.iter().enumerate() {
            if !problem.keys().eq(first.keys()) {
                return Err(Error::Statistics(format!("problem {i} ranks a different algorithm set")));
            }
            for (name, pos) in problem {
                *sums.entry(name.clone()).or_insert(0.0) += pos;
            }
        }
    }
    let mut order: Vec<String> = sums.keys().cloned().collect();
    order.sort_by(|a, b| sums[a].total_cmp(&sums[b]).then_with(|| a.cmp(b)));
    Ok(BordaResult { sums, order })
}
