use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ioaco::assessment::{build_aroi, indicators, Provenance, ARoI};
use ioaco::interval::Interval;
use ioaco::optimizer::{run, Mode, OptimizerConfig};
use ioaco::problems::{sample_true_front, Problem, ProblemId, ProblemSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::campaign::run_campaign;
use crate::config::{parse_interval_str, ConfigDoc};
use crate::dms::{generate_dm_settings, parse_dms, write_dms, DmDefaults, NamedDm};
use crate::error::{BenchError, Result};
use crate::files::{atomic_write, read_to_string};
use crate::plan::ExperimentPlan;
use crate::report::{build_report, ReportOptions};
use crate::results::read_results;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "IOACO_OUT";

#[derive(Debug, Parser)]
#[command(name = "ioaco", version, about = "Interval-outranking ant colony optimizer and benchmark runner")]
pub struct Cli {
    /// Random seed (A-RoI sample, single run, generated DMs, or campaign master seed)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for campaigns
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory [default: $IOACO_OUT or .]
    #[arg(long, global = true, env = OUT_ENV)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and cache an A-RoI from a sampled Pareto front
    Aroi(AroiArgs),
    /// Execute one optimizer run
    Run(RunArgs),
    /// Run every cell of an experiment plan
    Campaign(CampaignArgs),
    /// Summarize a results CSV
    Report(ReportArgs),
    /// Write synthetic decision-maker models
    GenDms(GenDmsArgs),
}

#[derive(Debug, Args)]
pub struct AroiArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub m: usize,
    /// Decision-maker file
    #[arg(long)]
    pub dm: PathBuf,
    /// Model to use when the file holds several for this objective count
    #[arg(long)]
    pub dm_id: Option<String>,
    /// Front sample size
    #[arg(long, default_value_t = 5000)]
    pub count: usize,
    #[arg(long, default_value_t = 0.001)]
    pub epsilon: f64,
    #[arg(long)]
    pub out_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub m: usize,
    /// Decision-maker file (preference mode)
    #[arg(long)]
    pub dm: Option<PathBuf>,
    #[arg(long)]
    pub dm_id: Option<String>,
    /// Rank by non-dominated sorting and ignore any decision maker
    #[arg(long)]
    pub baseline: bool,
    #[arg(long, default_value_t = 50)]
    pub kappa: usize,
    /// Ants per iteration [default: kappa]
    #[arg(long)]
    pub ants: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0.1)]
    pub zeta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub xi: f64,
    #[arg(long, default_value_t = 0.001)]
    pub epsilon: f64,
    /// A-RoI file; when given the indicators of the final front 1 are printed
    #[arg(long)]
    pub aroi: Option<PathBuf>,
    /// Record a per-iteration trace
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub out_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    pub plan: PathBuf,
    /// Campaign directory [default: --out]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub results: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Compare per decision maker instead of pooling them
    #[arg(long)]
    pub per_dm: bool,
    /// Also write the report as JSON
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenDmsArgs {
    #[arg(long)]
    pub count: usize,
    #[arg(long)]
    pub m: usize,
    /// Relative half-width of the weight intervals
    #[arg(long, default_value_t = 0.1)]
    pub spread: f64,
    /// Indifference threshold `lo,hi`
    #[arg(long, default_value = "0.02,0.05", value_parser = parse_interval_str)]
    pub q: Interval,
    /// Veto threshold `lo,hi`
    #[arg(long, default_value = "0.2,0.4", value_parser = parse_interval_str)]
    pub v: Interval,
    #[arg(long, default_value = "0.6,0.7", value_parser = parse_interval_str)]
    pub lambda: Interval,
    #[arg(long, default_value_t = 0.67)]
    pub beta: f64,
    /// Write here instead of standard output
    #[arg(long)]
    pub out_path: Option<PathBuf>,
}

/// Parses `args` and runs the command. Returns the process exit code;
/// messages go to standard output and standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn out_dir(cli_out: &Option<PathBuf>) -> PathBuf {
    cli_out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn problem_spec(name: &str, m: usize) -> Result<ProblemSpec> {
    let id: ProblemId = name.parse()?;
    Ok(ProblemSpec::new(id, m)?)
}

fn select_dm(path: &Path, dm_id: Option<&str>, m: usize) -> Result<NamedDm> {
    let dms = parse_dms(&ConfigDoc::read(path)?)?;
    let chosen = match dm_id {
        Some(id) => dms
            .into_iter()
            .find(|d| d.id == id)
            .ok_or_else(|| BenchError::Validation(format!("{} has no decision maker `{id}`", path.display())))?,
        None => {
            let mut matching: Vec<NamedDm> = dms.into_iter().filter(|d| d.model.n() == m).collect();
            match matching.len() {
                1 => matching.remove(0),
                0 => {
                    return Err(BenchError::Validation(format!(
                        "{} has no decision maker with {m} criteria",
                        path.display()
                    )))
                }
                n => {
                    return Err(BenchError::Validation(format!(
                        "{} has {n} decision makers with {m} criteria; pick one with --dm-id",
                        path.display()
                    )))
                }
            }
        }
    };
    if chosen.model.n() != m {
        return Err(BenchError::Validation(format!(
            "decision maker `{}` has {} criteria but m = {m}",
            chosen.id,
            chosen.model.n()
        )));
    }
    Ok(chosen)
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Aroi(a) => {
            let spec = problem_spec(&a.problem, a.m)?;
            let dm = select_dm(&a.dm, a.dm_id.as_deref(), a.m)?;
            if a.count == 0 {
                return Err(BenchError::Validation("--count must be at least 1".into()));
            }
            let seed = cli.seed.unwrap_or(0);
            let sample = sample_true_front(&spec, a.count, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let provenance = Provenance {
                problem: spec.id(),
                n_obj: a.m,
                dm_id: dm.id.clone(),
                sample_size: a.count,
                seed,
            };
            let aroi = build_aroi(&sample, &dm.model, a.epsilon, provenance)?;
            let path = a.out_path.unwrap_or_else(|| {
                out_dir(&cli.out).join(format!("aroi-{}-m{}-{}-n{}-s{seed}.json", spec.id, a.m, dm.id, a.count))
            });
            atomic_write(&path, aroi.to_json()?.as_bytes())?;
            println!("A-RoI: {} of {} points -> {}", aroi.points.len(), a.count, path.display());
        }
        Command::Run(r) => {
            let spec = problem_spec(&r.problem, r.m)?;
            let mode = if r.baseline { Mode::ParetoBaseline } else { Mode::Preference };
            let dm = match (&r.dm, r.baseline) {
                (Some(_), true) => {
                    eprintln!("warning: --baseline ignores the decision-maker file");
                    None
                }
                (Some(path), false) => Some(select_dm(path, r.dm_id.as_deref(), r.m)?),
                (None, true) => None,
                (None, false) => {
                    return Err(BenchError::Validation(
                        "preference mode needs --dm (or pass --baseline)".into(),
                    ))
                }
            };
            let aroi = r.aroi.as_deref().map(|p| -> Result<ARoI> { Ok(ARoI::from_json(&read_to_string(p)?)?) }).transpose()?;
            let seed = cli.seed.unwrap_or(0);
            let config = OptimizerConfig {
                zeta: r.zeta,
                xi: r.xi,
                kappa: r.kappa,
                n_ants: r.ants.unwrap_or(r.kappa),
                iter_max: r.iterations,
                mode,
                epsilon: r.epsilon,
                seed,
                trace: r.trace,
                ..Default::default()
            };
            let result = run(&spec, dm.as_ref().map(|d| &d.model), &config)?;
            let tag = match &dm {
                Some(d) => format!("ioaco-{}", d.id),
                None => "baseline".to_string(),
            };
            let path = r
                .out_path
                .unwrap_or_else(|| out_dir(&cli.out).join(format!("run-{}-m{}-{tag}-s{seed}.json", spec.id, r.m)));
            atomic_write(&path, result.to_json()?.as_bytes())?;
            println!("front-1 size: {}", result.best_compromise.len());
            println!("evaluations: {}", result.evaluations);
            if let Some(aroi) = aroi {
                let b = indicators(&result.best_compromise_objectives(), &aroi.points)?;
                println!(
                    "min_euclid={} avg_euclid={} min_cheby={} avg_cheby={}",
                    b.min_euclid, b.avg_euclid, b.min_cheby, b.avg_cheby
                );
            }
            println!("result: {}", path.display());
        }
        Command::Campaign(c) => {
            let mut plan = ExperimentPlan::read(&c.plan)?;
            if let Some(seed) = cli.seed {
                plan.master_seed = seed;
            }
            let dir = c.out_dir.unwrap_or_else(|| out_dir(&cli.out));
            let summary = run_campaign(&plan, &dir, cli.threads)?;
            println!(
                "runs: {} computed, {} reused; A-RoIs computed: {}; rows: {}",
                summary.runs_computed.len(),
                summary.runs_skipped,
                summary.arois_computed.len(),
                summary.rows
            );
            println!("results: {}", summary.results_path.display());
        }
        Command::Report(r) => {
            if !(r.alpha > 0.0 && r.alpha < 1.0) {
                return Err(BenchError::Validation(format!("--alpha must be in (0, 1), got {}", r.alpha)));
            }
            let file = std::fs::File::open(&r.results).map_err(|e| BenchError::io(&r.results, e))?;
            let loaded = read_results(file)?;
            for s in &loaded.skipped {
                eprintln!("warning: skipped row {s}");
            }
            let report = build_report(&loaded, ReportOptions { alpha: r.alpha, per_dm: r.per_dm })?;
            print!("{}", report.render_text());
            if let Some(path) = r.json {
                atomic_write(&path, report.to_json()?.as_bytes())?;
            }
        }
        Command::GenDms(g) => {
            let defaults = DmDefaults {
                spread: g.spread,
                indifference: g.q,
                veto: g.v,
                lambda: g.lambda,
                beta: g.beta,
            };
            let dms = generate_dm_settings(g.count, cli.seed.unwrap_or(0), g.m, &defaults)?;
            let text = write_dms(&dms);
            match g.out_path {
                Some(path) => atomic_write(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}
