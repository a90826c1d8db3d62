//! Experiment plans.
//!
//! ```text
//! [plan]
//! master_seed = 2024
//! problems = dtlz1:3, dtlz2:3, dtlz7:5
//! seeds_per_cell = 30
//! algorithms = ioaco, baseline
//! aroi_size = 2000
//! dm_count = 3          # synthetic DMs per objective count
//! # dm_file = dms.cfg   # or explicit models, relative to the plan file
//! timing = false
//!
//! [optimizer]
//! kappa = 50
//! n_ants = 50
//! iter_max = 300
//! ```
//!
//! Explicit `[dm <id>]` sections may also appear in the plan itself. When any
//! explicit model is given, each problem uses the models whose criterion count
//! matches its objective count.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ioaco::optimizer::{Mode, OptimizerConfig};
use ioaco::problems::{ProblemId, ProblemSpec};

use crate::config::{self, ConfigDoc, Section};
use crate::dms::{generate_dm_settings, parse_dms, DmDefaults, NamedDm};
use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ioaco,
    Baseline,
}

impl Algorithm {
    pub fn mode(self) -> Mode {
        match self {
            Algorithm::Ioaco => Mode::Preference,
            Algorithm::Baseline => Mode::ParetoBaseline,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Ioaco => "ioaco",
            Algorithm::Baseline => "baseline",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ioaco" => Ok(Algorithm::Ioaco),
            "baseline" => Ok(Algorithm::Baseline),
            other => Err(format!("unknown algorithm `{other}` (expected ioaco or baseline)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DmSource {
    Explicit(Vec<NamedDm>),
    Generated { count: usize, defaults: DmDefaults },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub master_seed: u64,
    pub problems: Vec<ProblemSpec>,
    pub dms: DmSource,
    pub seeds_per_cell: usize,
    pub algorithms: Vec<Algorithm>,
    /// Mode and seed are set per run.
    pub optimizer: OptimizerConfig,
    pub aroi_size: usize,
    /// Record wall-clock time per run. Off by default so that outputs are
    /// reproducible byte for byte.
    pub timing: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            master_seed: 0,
            problems: Vec::new(),
            dms: DmSource::Generated {
                count: 3,
                defaults: DmDefaults::default(),
            },
            seeds_per_cell: 30,
            algorithms: vec![Algorithm::Ioaco, Algorithm::Baseline],
            optimizer: OptimizerConfig::default(),
            aroi_size: 5000,
            timing: false,
        }
    }
}

const PLAN_KEYS: [&str; 8] = [
    "master_seed",
    "problems",
    "seeds_per_cell",
    "algorithms",
    "aroi_size",
    "dm_count",
    "dm_file",
    "timing",
];
const OPTIMIZER_KEYS: [&str; 7] = ["kappa", "n_ants", "iter_max", "zeta", "xi", "epsilon", "alpha"];

/// Parses `dtlz2:3`.
pub fn parse_problem(text: &str) -> std::result::Result<ProblemSpec, String> {
    let (id, m) = text
        .split_once(':')
        .ok_or_else(|| format!("expected `problem:objectives`, got `{text}`"))?;
    let id: ProblemId = id.trim().parse().map_err(|e: ioaco::Error| e.to_string())?;
    let m: usize = m.trim().parse().map_err(|_| format!("bad objective count in `{text}`"))?;
    ProblemSpec::new(id, m).map_err(|e| e.to_string())
}

impl ExperimentPlan {
    pub fn read(path: &Path) -> Result<Self> {
        let doc = ConfigDoc::read(path)?;
        Self::from_doc(&doc, path.parent().unwrap_or(Path::new(".")))
    }

    /// `base_dir` resolves a relative `dm_file`.
    pub fn from_doc(doc: &ConfigDoc, base_dir: &Path) -> Result<Self> {
        for s in &doc.sections {
            if !matches!(s.kind.as_str(), "plan" | "optimizer" | "dm") {
                return Err(doc.error(s.line, format!("unknown section [{}]", s.kind)));
            }
        }
        let mut plan = ExperimentPlan::default();
        let mut explicit = parse_dms(doc)?;
        let plans: Vec<&Section> = doc.sections_of("plan").collect();
        if plans.len() > 1 {
            return Err(doc.error(plans[1].line, "more than one [plan] section"));
        }
        if let Some(s) = plans.first() {
            s.check_keys(doc, &PLAN_KEYS)?;
            if let Some(e) = s.get("master_seed") {
                plan.master_seed = config::parse_count(doc, e)?;
            }
            if let Some(e) = s.get("problems") {
                plan.problems = config::parse_list(e)
                    .iter()
                    .map(|p| parse_problem(p).map_err(|m| doc.error(e.line, m)))
                    .collect::<Result<_>>()?;
            }
            if let Some(e) = s.get("seeds_per_cell") {
                plan.seeds_per_cell = config::parse_count(doc, e)?;
            }
            if let Some(e) = s.get("algorithms") {
                plan.algorithms = config::parse_list(e)
                    .iter()
                    .map(|a| a.parse().map_err(|m: String| doc.error(e.line, m)))
                    .collect::<Result<_>>()?;
            }
            if let Some(e) = s.get("aroi_size") {
                plan.aroi_size = config::parse_count(doc, e)?;
            }
            if let Some(e) = s.get("timing") {
                plan.timing = config::parse_bool(doc, e)?;
            }
            if let Some(e) = s.get("dm_file") {
                let dm_doc = ConfigDoc::read(&base_dir.join(&e.value))?;
                explicit.extend(parse_dms(&dm_doc)?);
            }
            if let Some(e) = s.get("dm_count") {
                if !explicit.is_empty() {
                    return Err(doc.error(e.line, "dm_count cannot be combined with explicit decision makers"));
                }
                plan.dms = DmSource::Generated {
                    count: config::parse_count(doc, e)?,
                    defaults: DmDefaults::default(),
                };
            }
        }
        if !explicit.is_empty() {
            plan.dms = DmSource::Explicit(explicit);
        }
        if let Some(s) = doc.sections_of("optimizer").next() {
            s.check_keys(doc, &OPTIMIZER_KEYS)?;
            let o = &mut plan.optimizer;
            if let Some(e) = s.get("kappa") {
                o.kappa = config::parse_count(doc, e)?;
                o.n_ants = o.kappa;
            }
            if let Some(e) = s.get("n_ants") {
                o.n_ants = config::parse_count(doc, e)?;
            }
            if let Some(e) = s.get("iter_max") {
                o.iter_max = config::parse_count(doc, e)?;
            }
            for (key, slot) in [("zeta", &mut o.zeta), ("xi", &mut o.xi), ("epsilon", &mut o.epsilon), ("alpha", &mut o.alpha)] {
                if let Some(e) = s.get(key) {
                    *slot = config::parse_real(doc, e)?;
                }
            }
        }
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        self.optimizer.validate()?;
        if self.seeds_per_cell == 0 {
            return Err(BenchError::Validation("seeds_per_cell must be at least 1".into()));
        }
        if self.aroi_size == 0 {
            return Err(BenchError::Validation("aroi_size must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Validation("the plan lists no algorithms".into()));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(BenchError::Validation(format!("algorithm {a} is listed twice")));
            }
        }
        for p in &self.problems {
            self.dms_for(p.n_obj)?;
        }
        Ok(())
    }

    /// Decision makers applicable to problems with `n_obj` objectives.
    pub fn dms_for(&self, n_obj: usize) -> Result<Vec<NamedDm>> {
        match &self.dms {
            DmSource::Generated { count, defaults } => generate_dm_settings(*count, self.master_seed, n_obj, defaults),
            DmSource::Explicit(all) => {
                let matching: Vec<NamedDm> = all.iter().filter(|d| d.model.n() == n_obj).cloned().collect();
                if matching.is_empty() {
                    return Err(BenchError::Validation(format!(
                        "no decision maker has {n_obj} criteria"
                    )));
                }
                Ok(matching)
            }
        }
    }
}
