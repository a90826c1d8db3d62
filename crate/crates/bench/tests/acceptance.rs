//! Acceptance suite. Prints one pass/fail line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ioaco::aco::{rank_weights, rank_weights_positional, select_guide, PheromoneArchive, Solution};
use ioaco::interval::{interval_geq, possibility, Interval};
use ioaco::optimizer::{ArchiveRanking, OutrankingRanking};
use ioaco::outranking::{best_compromise, concordance_from_mask, credibility, surrogate_rank, RelationMatrix};
use ioaco::pareto::non_dominated_indices;
use ioaco::problems::{make_problem, sample_true_front, Family};
use ioaco_bench::campaign::run_campaign;
use ioaco_bench::dms::{generate_dm_settings, DmDefaults};
use ioaco_bench::plan::ExperimentPlan;
use ioaco_bench::report::{build_report, ReportOptions};
use ioaco_bench::results::{read_results, write_results, ResultRow, INDICATORS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("outranking oracle equivalence", oracle_equivalence),
        ("interval laws", interval_laws),
        ("concordance bounds", concordance_bounds),
        ("sampling statistics", sampling_statistics),
        ("front-sample validity", front_samples),
        ("preference beats the baseline", directional_claim),
        ("ranking complexity", ranking_complexity),
        ("borda accounting", borda_accounting),
        ("campaign determinism", campaign_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({name}): {verdict}: {} [{:.1} s]",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = Vec::new();
    let mut pairs = 0usize;
    for case in 0..1000 {
        let n = rng.random_range(1..=4);
        let size = rng.random_range(1..=12);
        let dm = common::random_dm(&mut rng, n);
        let pop = common::random_population(&mut rng, size, n);
        let want = common::reference(&pop, &dm);
        let rel = RelationMatrix::new(&pop, &dm).unwrap();
        let mut ok = true;
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    pairs += 1;
                    ok &= credibility(&pop[i], &pop[j], &dm).unwrap().sigma == want.sigma[i][j];
                }
                ok &= rel.outranks(i, j) == want.s[i][j] && rel.prefers(i, j) == want.pr[i][j];
            }
        }
        let ranking = surrogate_rank(&pop, &dm).unwrap();
        ok &= ranking.scores.iter().map(|s| s.strength).eq(want.strength.iter().copied());
        ok &= ranking.scores.iter().map(|s| s.weakness).eq(want.weakness.iter().copied());
        ok &= ranking.fronts == want.fronts;
        ok &= best_compromise(&pop, &dm).unwrap() == want.best;
        if !ok {
            mismatches.push(case);
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!("1000 populations, {pairs} ordered pairs, mismatching populations {mismatches:?}"),
    )
}

fn random_interval<R: Rng>(rng: &mut R) -> Interval {
    let lo = if rng.random_bool(0.3) {
        rng.random_range(-4..=4) as f64 / 4.0
    } else {
        rng.random_range(-1.0..1.0)
    };
    let width = match rng.random_range(0..4) {
        0 => 0.0,
        1 => rng.random_range(0..=4) as f64 / 4.0,
        _ => rng.random_range(0.0..1.0),
    };
    Interval::new(lo, lo + width).unwrap()
}

fn interval_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut clamp, mut complement, mut degenerate, mut transitive) = (0, 0, 0, 0);
    let mut premises = 0;
    for _ in 0..100_000 {
        let t = [random_interval(&mut rng), random_interval(&mut rng), random_interval(&mut rng)];
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let (e, d) = (&t[a], &t[b]);
                let p = possibility(e, d);
                if !(0.0..=1.0).contains(&p) {
                    clamp += 1;
                }
                let open = p > 0.0 && p < 1.0;
                if open && !(e.is_degenerate() && d.is_degenerate()) && (p + possibility(d, e) - 1.0).abs() > 1e-12 {
                    complement += 1;
                }
                if e.is_degenerate() && d.is_degenerate() {
                    let expected = if e.lo() >= d.lo() { 1.0 } else { 0.0 };
                    if p != expected || interval_geq(e, d) != (e.lo() >= d.lo()) {
                        degenerate += 1;
                    }
                }
            }
        }
        let (e, d, c) = (&t[0], &t[1], &t[2]);
        let (a1, a2) = (possibility(e, d), possibility(d, c));
        if a1 >= 0.5 && a2 >= 0.5 {
            premises += 1;
            if possibility(e, c) < a1.min(a2) - 1e-12 {
                transitive += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        clamp + complement + degenerate + transitive == 0 && elapsed < Duration::from_secs(10),
        format!(
            "1e5 triples; violations: clamping {clamp}, complementarity {complement}, degenerate {degenerate}, \
             transitivity {transitive} of {premises} premises"
        ),
    )
}

fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<Interval> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let spread = if rng.random_bool(0.2) { 0.0 } else { rng.random_range(0.0..0.9) };
    raw.iter()
        .map(|r| {
            let c = r / total;
            Interval::new(c * (1.0 - spread), c * (1.0 + spread)).unwrap()
        })
        .collect()
}

fn concordance_bounds() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut bounds, mut full, mut empty) = (0, 0, 0);
    for _ in 0..100_000 {
        let n = rng.random_range(1..=10);
        let w = random_weights(&mut rng, n);
        let mask: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let c = concordance_from_mask(&mask, &w);
        if !(0.0 <= c.lo() && c.lo() <= c.hi() && c.hi() <= 1.0) {
            bounds += 1;
        }
        let all = concordance_from_mask(&vec![true; n], &w);
        if (all.lo() - 1.0).abs() > 1e-12 || (all.hi() - 1.0).abs() > 1e-12 {
            full += 1;
        }
        let none = concordance_from_mask(&vec![false; n], &w);
        if none.lo() != 0.0 || none.hi() != 0.0 {
            empty += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        bounds + full + empty == 0 && elapsed < Duration::from_secs(10),
        format!("1e5 weight vectors; violations: bounds {bounds}, full coalition {full}, empty coalition {empty}"),
    )
}

fn archive_row(front: usize) -> Solution {
    Solution {
        x: vec![0.5],
        objectives: vec![0.0],
        normalized: vec![0.0],
        violation: 0.0,
        front,
        score: None,
        birth: 0,
        id: 0,
    }
}

fn six_figures(x: f64) -> String {
    format!("{x:.5e}")
}

fn sampling_statistics() -> Outcome {
    let archives: [(Vec<usize>, Vec<f64>); 3] = [
        (vec![1, 1, 2, 3, 3, 5], rank_weights(&[1, 1, 2, 3, 3, 5], 0.5)),
        (vec![1; 6], rank_weights_positional(6, 0.3)),
        (vec![1, 2, 2, 4], vec![3.0, 1.0, 0.5, 0.25]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for (fronts, weights) in archives {
        let rows = fronts.iter().map(|&f| archive_row(f)).collect();
        let archive = PheromoneArchive::new(rows, weights, 0.1, 0.5).unwrap();
        let p = archive.probabilities();
        let mut counts = vec![0usize; p.len()];
        let draws = 100_000;
        for _ in 0..draws {
            counts[select_guide(archive.weights(), &mut rng)] += 1;
        }
        for (c, p) in counts.iter().zip(&p) {
            worst = worst.max((*c as f64 / draws as f64 - p).abs());
        }
    }
    let got = [
        six_figures(rank_weights(&[1, 1, 1], 0.1)[0]),
        six_figures(rank_weights(&[1, 2, 3, 4, 5], 0.1)[0]),
        six_figures(rank_weights(&[1, 2, 3, 5, 5], 0.1)[4]),
        six_figures(rank_weights_positional(5, 0.1)[1]),
    ];
    let want = ["3.98942e0", "7.97885e-1", "1.01045e-14", "1.07982e-1"];
    Outcome::new(
        worst <= 0.01 && got == want,
        format!("largest frequency error {worst:.4} over 1e5 draws; weights {}", got.join(", ")),
    )
}

fn front_samples() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut altered = Vec::new();
    for m in [3, 5] {
        for index in [1, 2] {
            let spec = make_problem(Family::Dtlz, index, m).unwrap();
            let sample = sample_true_front(&spec, 10_000, &mut rng).unwrap();
            let residual = sample
                .iter()
                .map(|f| match index {
                    1 => (f.iter().sum::<f64>() - 0.5).abs(),
                    _ => (f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs(),
                })
                .fold(0.0, f64::max);
            worst = worst.max(residual);
            if non_dominated_indices(&sample).len() != sample.len() {
                altered.push(format!("{} m={m}", spec.id));
            }
        }
    }
    let mut checked = 4;
    for family in [Family::Dtlz, Family::Wfg] {
        for index in 1..=9 {
            let spec = make_problem(family, index, 3).unwrap();
            let sample = sample_true_front(&spec, 2000, &mut rng).unwrap();
            checked += 1;
            if non_dominated_indices(&sample).len() != sample.len() {
                altered.push(format!("{} m=3", spec.id));
            }
        }
    }
    Outcome::new(
        worst <= 1e-9 && altered.is_empty(),
        format!("largest residual {worst:.2e}; {checked} samples filtered, altered {altered:?}"),
    )
}

fn write_plan(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("plan.cfg");
    fs::write(&path, body).unwrap();
    path
}

const DESK_PLAN: &str = "\
[plan]
master_seed = 2024
problems = dtlz1:3, dtlz2:3, dtlz7:3, dtlz1:5, dtlz2:5, dtlz7:5
seeds_per_cell = 30
algorithms = ioaco, baseline
aroi_size = 2000
dm_count = 3

[optimizer]
kappa = 50
n_ants = 50
iter_max = 300
";

fn directional_claim() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let plan = ExperimentPlan::read(&write_plan(dir.path(), DESK_PLAN)).unwrap();
    let summary = run_campaign(&plan, dir.path(), None).unwrap();
    let loaded = read_results(fs::File::open(&summary.results_path).unwrap()).unwrap();
    let report = build_report(&loaded, ReportOptions { alpha: 0.05, per_dm: true }).unwrap();

    // (m, dm) -> indicator -> problems won
    let mut cells: BTreeMap<(usize, String), BTreeMap<&str, usize>> = BTreeMap::new();
    for group in &report.groups {
        let parts: Vec<&str> = group.split(' ').collect();
        let m: usize = parts[1].trim_start_matches("m=").parse().unwrap();
        cells.entry((m, parts[2].to_string())).or_default();
    }
    for section in report.indicators.iter().filter(|s| s.indicator.ends_with("euclid")) {
        for list in section.wins.iter().filter(|w| w.winner == "ioaco") {
            for group in &list.groups {
                let parts: Vec<&str> = group.split(' ').collect();
                let m: usize = parts[1].trim_start_matches("m=").parse().unwrap();
                *cells
                    .get_mut(&(m, parts[2].to_string()))
                    .unwrap()
                    .entry(section.indicator.as_str())
                    .or_default() += 1;
            }
        }
    }
    let mut pass = cells.len() == 6;
    let mut summary_parts = Vec::new();
    for ((m, dm), wins) in &cells {
        let min = wins.get("min_euclid").copied().unwrap_or(0);
        let avg = wins.get("avg_euclid").copied().unwrap_or(0);
        pass &= min >= 2 && avg >= 2;
        summary_parts.push(format!("m={m} {dm}: {min}/3 min, {avg}/3 avg"));
    }
    Outcome::new(pass, format!("{} runs; ioaco wins per cell: {}", summary.rows, summary_parts.join("; ")))
}

fn ranking_complexity() -> Outcome {
    let dm = generate_dm_settings(1, 7, 3, &DmDefaults::default()).unwrap().remove(0).model;
    let ranker = OutrankingRanking { dm };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pops: Vec<Vec<Vec<f64>>> = [200, 400, 800]
        .iter()
        .map(|&size| (0..size).map(|_| (0..3).map(|_| rng.random::<f64>()).collect()).collect())
        .collect();
    // Rounds interleave the sizes so that load changes affect all three alike.
    let mut times = vec![f64::INFINITY; 3];
    for _ in 0..11 {
        for (t, pop) in times.iter_mut().zip(&pops) {
            let start = Instant::now();
            std::hint::black_box(ranker.rank(pop).unwrap());
            *t = t.min(start.elapsed().as_secs_f64());
        }
    }
    let ratios = [times[1] / times[0], times[2] / times[1]];
    Outcome::new(
        ratios.iter().all(|r| (3.2..=4.8).contains(r)),
        format!(
            "ranking times {:.2} / {:.2} / {:.2} ms; ratios {:.2}, {:.2}",
            times[0] * 1e3,
            times[1] * 1e3,
            times[2] * 1e3,
            ratios[0],
            ratios[1]
        ),
    )
}

fn borda_accounting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let noise = Normal::new(0.0f64, 0.2).unwrap();
    let mut rows = Vec::new();
    let mut groups = 0;
    for family in ["dtlz", "wfg"] {
        for index in 1..=9 {
            for m in [3, 5, 8, 10] {
                groups += 1;
                for algorithm in ["alpha", "beta", "gamma"] {
                    let offset = rng.random_range(0..3) as f64 * 0.5;
                    for seed in 0..10 {
                        let v = 1.0 + offset + noise.sample(&mut rng).abs();
                        rows.push(ResultRow {
                            problem: format!("{family}{index}"),
                            m,
                            dm_id: "dm1".into(),
                            algorithm: algorithm.into(),
                            seed,
                            min_euclid: v,
                            avg_euclid: v + 0.1,
                            min_cheby: v * 0.8,
                            avg_cheby: v * 0.8 + 0.1,
                            evaluations: 100,
                            wall_ms: 0,
                        });
                    }
                }
            }
        }
    }
    let bytes = write_results(&rows).unwrap();
    let loaded = read_results(bytes.as_slice()).unwrap();
    let report = build_report(&loaded, ReportOptions::default()).unwrap();
    let expected = (groups * 6) as f64;
    let totals: Vec<f64> = report.indicators.iter().map(|s| s.borda.sums.values().sum()).collect();
    let wins: usize = report.indicators[0].wins.iter().map(|w| w.groups.len()).sum();
    let pass = report.groups.len() == groups
        && report.indicators.len() == INDICATORS.len()
        && totals.iter().all(|t| *t == expected)
        && 120.0 + 143.0 + 169.0 == 72.0 * 6.0;
    Outcome::new(
        pass,
        format!(
            "{groups} groups x 3 algorithms; borda totals {totals:?} (expected {expected}); {wins} significant wins on {}",
            INDICATORS[0]
        ),
    )
}

const SMALL_PLAN: &str = "\
[plan]
master_seed = 99
problems = dtlz2:3, dtlz7:3, wfg4:3, dtlz1:4
seeds_per_cell = 5
algorithms = ioaco, baseline
aroi_size = 300
dm_count = 2

[optimizer]
kappa = 12
iter_max = 15
";

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn cli_campaign(plan: &Path, out: &Path, threads: usize) -> bool {
    Command::new(env!("CARGO_BIN_EXE_ioaco"))
        .arg("--threads")
        .arg(threads.to_string())
        .arg("campaign")
        .arg(plan)
        .arg("--out-dir")
        .arg(out)
        .output()
        .unwrap()
        .status
        .success()
}

fn cli_report(results: &Path) -> Option<Vec<u8>> {
    let out = Command::new(env!("CARGO_BIN_EXE_ioaco")).arg("report").arg(results).output().unwrap();
    (out.status.success() && !out.stdout.is_empty()).then_some(out.stdout)
}

fn campaign_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let plan_path = write_plan(dir.path(), SMALL_PLAN);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    if !cli_campaign(&plan_path, &a, 1) || !cli_campaign(&plan_path, &b, 4) {
        return Outcome::new(false, "campaign command failed");
    }
    let (ta, tb) = (tree(&a), tree(&b));
    let identical = ta == tb;
    let report = cli_report(&a.join("results.csv"));
    let same_report = report.is_some() && report == cli_report(&b.join("results.csv"));

    let victim = ta.keys().find(|p| p.starts_with("runs")).unwrap().clone();
    fs::remove_file(b.join(&victim)).unwrap();
    let plan = ExperimentPlan::read(&plan_path).unwrap();
    let resumed = run_campaign(&plan, &b, Some(2)).unwrap();
    let only_victim = resumed.runs_computed == vec![b.join(&victim)] && resumed.arois_computed.is_empty();
    let restored = tree(&b) == ta;

    Outcome::new(
        identical && same_report && only_victim && restored,
        format!(
            "{} files identical across thread counts: {identical}; reports identical: {same_report}; \
             resume recomputed only the deleted run: {only_victim}; resumed tree identical: {restored}",
            ta.len()
        ),
    )
}
