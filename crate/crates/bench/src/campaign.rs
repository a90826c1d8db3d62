//! Campaign execution: A-RoIs, runs and the results CSV.
//!
//! Output layout under the campaign directory:
//!
//! ```text
//! dms-m<m>.cfg                              decision makers used per objective count
//! aroi/<problem>-m<m>-<dm>.json             cached A-RoIs
//! runs/<problem>-m<m>/ioaco-<dm>-r<k>.json  preference runs
//! runs/<problem>-m<m>/baseline-r<k>.json    baseline runs (one per seed, shared by all DMs)
//! results.csv                               one row per (run, DM)
//! ```
//!
//! A run or A-RoI whose file already exists and parses is not recomputed, so
//! an interrupted campaign resumes where it stopped. `results.csv` is rebuilt
//! from the run files every time.

use std::path::{Path, PathBuf};
use std::time::Instant;

use ioaco::assessment::{build_aroi, indicators, IndicatorBlock, Provenance, ARoI};
use ioaco::optimizer::{run, OptimizerConfig, RunResult};
use ioaco::problems::{sample_true_front, Problem, ProblemSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dms::{write_dms, NamedDm};
use crate::error::{BenchError, Result};
use crate::files::{atomic_write, read_to_string};
use crate::plan::{Algorithm, ExperimentPlan};
use crate::results::{write_results, ResultRow};
use crate::seeds::cell_seed;

/// Seed stream label for runs that do not depend on a DM.
const BASELINE_STREAM: &str = "baseline";
/// Seed stream label for the front sample behind the A-RoIs.
const FRONT_STREAM: &str = "front";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSummary {
    pub arois_computed: Vec<PathBuf>,
    pub runs_computed: Vec<PathBuf>,
    pub runs_skipped: usize,
    pub rows: usize,
    pub results_path: PathBuf,
}

fn cell_dir(spec: &ProblemSpec) -> String {
    format!("{}-m{}", spec.id, spec.n_obj)
}

pub fn aroi_path(out: &Path, spec: &ProblemSpec, dm_id: &str) -> PathBuf {
    out.join("aroi").join(format!("{}-{dm_id}.json", cell_dir(spec)))
}

pub fn run_path(out: &Path, spec: &ProblemSpec, algorithm: Algorithm, dm_id: Option<&str>, run: usize) -> PathBuf {
    let name = match dm_id {
        Some(dm) => format!("{algorithm}-{dm}-r{run:03}.json"),
        None => format!("{algorithm}-r{run:03}.json"),
    };
    out.join("runs").join(cell_dir(spec)).join(name)
}

fn timing_path(run_file: &Path) -> PathBuf {
    run_file.with_extension("ms")
}

/// Indicators of a run's best-compromise set against an A-RoI.
pub fn run_indicators(result: &RunResult, aroi: &ARoI) -> ioaco::Result<IndicatorBlock> {
    indicators(&result.best_compromise_objectives(), &aroi.points)
}

struct RunJob {
    spec: ProblemSpec,
    algorithm: Algorithm,
    dm: Option<NamedDm>,
    seed: u64,
    path: PathBuf,
}

fn load_run(path: &Path) -> Option<RunResult> {
    RunResult::from_json(&std::fs::read_to_string(path).ok()?).ok()
}

fn load_aroi(path: &Path) -> Result<ARoI> {
    Ok(ARoI::from_json(&read_to_string(path)?)?)
}

fn jobs_for(plan: &ExperimentPlan, out: &Path, spec: &ProblemSpec, dms: &[NamedDm]) -> Vec<RunJob> {
    let mut jobs = Vec::new();
    let problem = spec.id.to_string();
    for &algorithm in &plan.algorithms {
        for run in 0..plan.seeds_per_cell {
            match algorithm {
                Algorithm::Ioaco => {
                    for dm in dms {
                        jobs.push(RunJob {
                            spec: spec.clone(),
                            algorithm,
                            dm: Some(dm.clone()),
                            seed: cell_seed(plan.master_seed, &problem, spec.n_obj, &dm.id, run),
                            path: run_path(out, spec, algorithm, Some(&dm.id), run),
                        });
                    }
                }
                Algorithm::Baseline => jobs.push(RunJob {
                    spec: spec.clone(),
                    algorithm,
                    dm: None,
                    seed: cell_seed(plan.master_seed, &problem, spec.n_obj, BASELINE_STREAM, run),
                    path: run_path(out, spec, algorithm, None, run),
                }),
            }
        }
    }
    jobs
}

fn execute(job: &RunJob, base: &OptimizerConfig, timing: bool) -> Result<()> {
    let config = OptimizerConfig {
        mode: job.algorithm.mode(),
        seed: job.seed,
        ..base.clone()
    };
    let start = Instant::now();
    let result = run(&job.spec, job.dm.as_ref().map(|d| &d.model), &config)?;
    let elapsed = start.elapsed().as_millis() as u64;
    atomic_write(&job.path, result.to_json()?.as_bytes())?;
    if timing {
        atomic_write(&timing_path(&job.path), elapsed.to_string().as_bytes())?;
    }
    Ok(())
}

fn compute_arois(plan: &ExperimentPlan, out: &Path, spec: &ProblemSpec, dms: &[NamedDm]) -> Result<Vec<PathBuf>> {
    let missing: Vec<&NamedDm> = dms
        .iter()
        .filter(|dm| load_aroi(&aroi_path(out, spec, &dm.id)).is_err())
        .collect();
    if missing.is_empty() {
        return Ok(Vec::new());
    }
    let seed = cell_seed(plan.master_seed, &spec.id.to_string(), spec.n_obj, FRONT_STREAM, 0);
    let sample = sample_true_front(spec, plan.aroi_size, &mut ChaCha8Rng::seed_from_u64(seed))?;
    let mut written = Vec::new();
    for dm in missing {
        let provenance = Provenance {
            problem: spec.id(),
            n_obj: spec.n_obj,
            dm_id: dm.id.clone(),
            sample_size: plan.aroi_size,
            seed,
        };
        let aroi = build_aroi(&sample, &dm.model, plan.optimizer.epsilon, provenance)?;
        let path = aroi_path(out, spec, &dm.id);
        atomic_write(&path, aroi.to_json()?.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

/// Runs every missing cell of `plan` under `out`, then rebuilds `results.csv`.
/// `threads` bounds the worker pool; outputs do not depend on it.
pub fn run_campaign(plan: &ExperimentPlan, out: &Path, threads: Option<usize>) -> Result<CampaignSummary> {
    plan.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| BenchError::Runtime(e.to_string()))?;

    let mut cells = Vec::new();
    let mut seen_m = Vec::new();
    for spec in &plan.problems {
        let dms = plan.dms_for(spec.n_obj)?;
        if !seen_m.contains(&spec.n_obj) {
            seen_m.push(spec.n_obj);
            atomic_write(&out.join(format!("dms-m{}.cfg", spec.n_obj)), write_dms(&dms).as_bytes())?;
        }
        cells.push((spec.clone(), dms));
    }

    let arois_computed: Vec<PathBuf> = pool.install(|| {
        cells
            .par_iter()
            .map(|(spec, dms)| compute_arois(plan, out, spec, dms))
            .collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();

    let jobs: Vec<RunJob> = cells.iter().flat_map(|(spec, dms)| jobs_for(plan, out, spec, dms)).collect();
    let (todo, done): (Vec<&RunJob>, Vec<&RunJob>) = jobs.iter().partition(|j| load_run(&j.path).is_none());
    pool.install(|| todo.par_iter().try_for_each(|job| execute(job, &plan.optimizer, plan.timing)))?;

    let rows = collect_rows(plan, out, &cells)?;
    let results_path = out.join("results.csv");
    atomic_write(&results_path, &write_results(&rows)?)?;
    Ok(CampaignSummary {
        arois_computed,
        runs_computed: todo.iter().map(|j| j.path.clone()).collect(),
        runs_skipped: done.len(),
        rows: rows.len(),
        results_path,
    })
}

fn collect_rows(plan: &ExperimentPlan, out: &Path, cells: &[(ProblemSpec, Vec<NamedDm>)]) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for (spec, dms) in cells {
        let problem = spec.id.to_string();
        for dm in dms {
            let aroi = load_aroi(&aroi_path(out, spec, &dm.id))?;
            for &algorithm in &plan.algorithms {
                for run in 0..plan.seeds_per_cell {
                    let dm_key = (algorithm == Algorithm::Ioaco).then_some(dm.id.as_str());
                    let path = run_path(out, spec, algorithm, dm_key, run);
                    let result = load_run(&path)
                        .ok_or_else(|| BenchError::Runtime(format!("run file {} is missing or corrupt", path.display())))?;
                    let block = run_indicators(&result, &aroi)?;
                    let wall_ms = if plan.timing {
                        read_to_string(&timing_path(&path))?.trim().parse().unwrap_or(0)
                    } else {
                        0
                    };
                    rows.push(ResultRow {
                        problem: problem.clone(),
                        m: spec.n_obj,
                        dm_id: dm.id.clone(),
                        algorithm: algorithm.to_string(),
                        seed: result.seed,
                        min_euclid: block.min_euclid,
                        avg_euclid: block.avg_euclid,
                        min_cheby: block.min_cheby,
                        avg_cheby: block.avg_cheby,
                        evaluations: result.evaluations,
                        wall_ms,
                    });
                }
            }
        }
    }
    Ok(rows)
}
