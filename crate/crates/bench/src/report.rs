//! Aggregates a results CSV into win lists, best-position counts and Borda
//! sums per indicator.
//!
//! Within each group (a problem and objective count, optionally split per
//! DM) every pair of algorithms is compared with the rank-sum test, and the
//! group's pairwise p-values are corrected with Holm's procedure. Lower
//! indicator values are better. An algorithm scores one point per significant
//! win and loses one per significant loss; positions follow the scores, with
//! draws sharing the mean position.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use ioaco::assessment::{borda_ranking, holm_bonferroni, positions_from_scores, wilcoxon_rank_sum, BordaResult};
use serde::Serialize;

use crate::error::Result;
use crate::results::{schema_hash, LoadedResults, ResultRow, INDICATORS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub alpha: f64,
    /// Compare per (problem, m, DM) instead of pooling the DMs.
    pub per_dm: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            per_dm: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairComparison {
    pub group: String,
    pub first: String,
    pub second: String,
    pub p_value: f64,
    pub reject: bool,
    pub winner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinList {
    pub winner: String,
    pub loser: String,
    pub groups: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorSection {
    pub indicator: String,
    pub comparisons: Vec<PairComparison>,
    pub wins: Vec<WinList>,
    /// Groups in which each algorithm holds position 1 (shared or alone).
    pub best_counts: BTreeMap<String, usize>,
    pub positions: BTreeMap<String, BTreeMap<String, f64>>,
    pub borda: BordaResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: String,
    pub alpha: f64,
    pub per_dm: bool,
    pub algorithms: Vec<String>,
    pub groups: Vec<String>,
    pub indicators: Vec<IndicatorSection>,
    /// Groups left out because an algorithm is missing or has fewer than five runs.
    pub excluded_groups: Vec<String>,
    pub skipped_rows: Vec<String>,
}

type GroupKey = (String, usize, Option<String>);

fn label(key: &GroupKey) -> String {
    match &key.2 {
        Some(dm) => format!("{} m={} {dm}", key.0, key.1),
        None => format!("{} m={}", key.0, key.1),
    }
}

pub fn build_report(loaded: &LoadedResults, options: ReportOptions) -> Result<Report> {
    let mut groups: BTreeMap<GroupKey, BTreeMap<String, Vec<&ResultRow>>> = BTreeMap::new();
    let mut algorithms = BTreeSet::new();
    for row in &loaded.rows {
        let key = (row.problem.clone(), row.m, options.per_dm.then(|| row.dm_id.clone()));
        groups
            .entry(key)
            .or_default()
            .entry(row.algorithm.clone())
            .or_default()
            .push(row);
        algorithms.insert(row.algorithm.clone());
    }
    let algorithms: Vec<String> = algorithms.into_iter().collect();

    let mut usable = Vec::new();
    let mut excluded = Vec::new();
    for (key, by_alg) in &groups {
        let complete = algorithms
            .iter()
            .all(|a| by_alg.get(a).is_some_and(|rows| rows.len() >= ioaco::assessment::MIN_RANK_SUM_SAMPLE));
        if complete {
            usable.push((label(key), by_alg));
        } else {
            excluded.push(label(key));
        }
    }

    let mut sections = Vec::new();
    for indicator in INDICATORS {
        let mut comparisons = Vec::new();
        let mut positions = BTreeMap::new();
        let mut wins: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for (name, by_alg) in &usable {
            let samples: Vec<Vec<f64>> = algorithms
                .iter()
                .map(|a| by_alg[a].iter().filter_map(|r| r.indicator(indicator)).collect())
                .collect();
            let mut pairs = Vec::new();
            for i in 0..algorithms.len() {
                for j in (i + 1)..algorithms.len() {
                    let test = wilcoxon_rank_sum(&samples[i], &samples[j], options.alpha)?;
                    pairs.push((i, j, test));
                }
            }
            let p: Vec<f64> = pairs.iter().map(|t| t.2.p_value).collect();
            let reject = holm_bonferroni(&p, options.alpha)?;
            let mut score = vec![0.0; algorithms.len()];
            for ((i, j, test), rejected) in pairs.into_iter().zip(reject) {
                let winner = rejected.then(|| if test.z < 0.0 { (i, j) } else { (j, i) });
                if let Some((w, l)) = winner {
                    score[w] += 1.0;
                    score[l] -= 1.0;
                    wins.entry((algorithms[w].clone(), algorithms[l].clone()))
                        .or_default()
                        .push(name.clone());
                }
                comparisons.push(PairComparison {
                    group: name.clone(),
                    first: algorithms[i].clone(),
                    second: algorithms[j].clone(),
                    p_value: test.p_value,
                    reject: rejected,
                    winner: winner.map(|(w, _)| algorithms[w].clone()),
                });
            }
            let scores = algorithms.iter().cloned().zip(score).collect();
            positions.insert(name.clone(), positions_from_scores(&scores));
        }
        let borda = borda_ranking(&positions.values().cloned().collect::<Vec<_>>())?;
        let best_counts = algorithms
            .iter()
            .map(|a| {
                let count = positions
                    .values()
                    .filter(|pos| {
                        let best = pos.values().copied().fold(f64::INFINITY, f64::min);
                        pos[a] == best
                    })
                    .count();
                (a.clone(), count)
            })
            .collect();
        let mut win_lists = Vec::new();
        for w in &algorithms {
            for l in &algorithms {
                if w != l {
                    win_lists.push(WinList {
                        winner: w.clone(),
                        loser: l.clone(),
                        groups: wins.remove(&(w.clone(), l.clone())).unwrap_or_default(),
                    });
                }
            }
        }
        sections.push(IndicatorSection {
            indicator: indicator.to_string(),
            comparisons,
            wins: win_lists,
            best_counts,
            positions,
            borda,
        });
    }

    Ok(Report {
        schema: schema_hash(),
        alpha: options.alpha,
        per_dm: options.per_dm,
        algorithms,
        groups: usable.into_iter().map(|(n, _)| n).collect(),
        indicators: sections,
        excluded_groups: excluded,
        skipped_rows: loaded.skipped.clone(),
    })
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let pooling = if self.per_dm { "per decision maker" } else { "pooled over decision makers" };
        let _ = writeln!(out, "schema {}; alpha = {}; groups {pooling}", self.schema, self.alpha);
        let _ = writeln!(out, "{} groups, algorithms: {}", self.groups.len(), self.algorithms.join(", "));
        for s in &self.skipped_rows {
            let _ = writeln!(out, "skipped row {s}");
        }
        for g in &self.excluded_groups {
            let _ = writeln!(out, "excluded group {g}: missing algorithm or fewer than 5 runs");
        }
        if self.groups.is_empty() {
            let _ = writeln!(out, "no complete groups to compare");
            return out;
        }
        for section in &self.indicators {
            let _ = writeln!(out, "\n== {} ==", section.indicator);
            let _ = writeln!(out, "significant wins:");
            for w in &section.wins {
                let listed = if w.groups.is_empty() { "-".to_string() } else { w.groups.join(", ") };
                let _ = writeln!(out, "  {} > {} ({}): {listed}", w.winner, w.loser, w.groups.len());
            }
            let counts: Vec<String> = section.best_counts.iter().map(|(a, c)| format!("{a} {c}")).collect();
            let _ = writeln!(out, "best position: {}", counts.join(", "));
            let sums: Vec<String> = section
                .borda
                .order
                .iter()
                .map(|a| format!("{a} {:.1}", section.borda.sums[a]))
                .collect();
            let total: f64 = section.borda.sums.values().sum();
            let _ = writeln!(out, "borda: {} (total {total:.1})", sums.join(", "));
        }
        out
    }
}
