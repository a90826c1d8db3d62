//! Decision-maker files and the synthetic decision-maker generator.
//!
//! A DM file holds one `[dm <id>]` section per model:
//!
//! ```text
//! [dm dm1]
//! weights = 0.27,0.33; 0.36,0.44; 0.27,0.33
//! indifference = 0.02,0.05; 0.02,0.05; 0.02,0.05
//! veto = 0.2,0.4; 0.2,0.4; 0.2,0.4
//! lambda = 0.6,0.7
//! beta = 0.67
//! ```
//!
//! Thresholds are in normalized objective units: the optimizer and the
//! A-RoI builder both rank min–max normalized objectives.

use std::fmt::Write as _;

use ioaco::interval::Interval;
use ioaco::outranking::DmModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::config::{self, ConfigDoc};
use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NamedDm {
    pub id: String,
    pub model: DmModel,
}

const DM_KEYS: [&str; 5] = ["weights", "indifference", "veto", "lambda", "beta"];

/// Reads every `[dm <id>]` section of `doc`.
pub fn parse_dms(doc: &ConfigDoc) -> Result<Vec<NamedDm>> {
    let mut out: Vec<NamedDm> = Vec::new();
    for section in doc.sections_of("dm") {
        section.check_keys(doc, &DM_KEYS)?;
        let id = section
            .name
            .clone()
            .ok_or_else(|| doc.error(section.line, "a [dm] section needs an id, e.g. [dm dm1]"))?;
        if out.iter().any(|d| d.id == id) {
            return Err(doc.error(section.line, format!("duplicate decision maker `{id}`")));
        }
        let weights = config::parse_interval_list(doc, section.require(doc, "weights")?)?;
        let indifference = config::parse_interval_list(doc, section.require(doc, "indifference")?)?;
        let veto = config::parse_interval_list(doc, section.require(doc, "veto")?)?;
        let lambda = config::parse_interval(doc, section.require(doc, "lambda")?)?;
        let beta = config::parse_real(doc, section.require(doc, "beta")?)?;
        let model = DmModel::new(weights, indifference, veto, lambda, beta)
            .map_err(|e| doc.error(section.line, format!("decision maker `{id}`: {e}")))?;
        out.push(NamedDm { id, model });
    }
    Ok(out)
}

pub fn write_dms(dms: &[NamedDm]) -> String {
    let mut out = String::new();
    for (i, dm) in dms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let m = &dm.model;
        let _ = writeln!(out, "[dm {}]", dm.id);
        let _ = writeln!(out, "weights = {}", config::format_interval_list(m.weights()));
        let _ = writeln!(out, "indifference = {}", config::format_interval_list(m.indifference()));
        let _ = writeln!(out, "veto = {}", config::format_interval_list(m.veto()));
        let _ = writeln!(out, "lambda = {}", config::format_interval(&m.lambda()));
        let _ = writeln!(out, "beta = {}", m.beta());
    }
    out
}

/// Defaults used by [`generate_dm_settings`].
#[derive(Debug, Clone, PartialEq)]
pub struct DmDefaults {
    /// Relative half-width of each weight interval around its central value.
    pub spread: f64,
    pub indifference: Interval,
    pub veto: Interval,
    pub lambda: Interval,
    pub beta: f64,
}

impl Default for DmDefaults {
    fn default() -> Self {
        Self {
            spread: 0.1,
            indifference: Interval::new(0.02, 0.05).expect("valid"),
            veto: Interval::new(0.2, 0.4).expect("valid"),
            lambda: Interval::new(0.6, 0.7).expect("valid"),
            beta: 0.67,
        }
    }
}

/// Deterministic synthetic decision makers `dm1..dm<count>` for `n_obj`
/// objectives. Central weights are a flat Dirichlet draw, widened by
/// `defaults.spread` on each side.
pub fn generate_dm_settings(count: usize, master_seed: u64, n_obj: usize, defaults: &DmDefaults) -> Result<Vec<NamedDm>> {
    if count == 0 {
        return Err(BenchError::Validation("decision-maker count must be at least 1".into()));
    }
    if n_obj == 0 {
        return Err(BenchError::Validation("objective count must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&defaults.spread) {
        return Err(BenchError::Validation(format!(
            "weight spread must be in [0, 1), got {}",
            defaults.spread
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(n_obj as u64);
    (1..=count)
        .map(|i| {
            let raw: Vec<f64> = (0..n_obj).map(|_| Exp1.sample(&mut rng)).collect();
            let total: f64 = raw.iter().sum();
            let weights = raw
                .iter()
                .map(|r| {
                    let c = r / total;
                    Interval::new(c * (1.0 - defaults.spread), c * (1.0 + defaults.spread))
                })
                .collect::<ioaco::Result<Vec<_>>>()?;
            let model = DmModel::new(
                weights,
                vec![defaults.indifference; n_obj],
                vec![defaults.veto; n_obj],
                defaults.lambda,
                defaults.beta,
            )?;
            Ok(NamedDm {
                id: format!("dm{i}"),
                model,
            })
        })
        .collect()
}
