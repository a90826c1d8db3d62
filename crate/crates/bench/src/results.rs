//! The per-run indicator CSV.

use std::io::Read;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{BenchError, Result};

pub const RESULT_COLUMNS: [&str; 11] = [
    "problem",
    "m",
    "dm_id",
    "algorithm",
    "seed",
    "min_euclid",
    "avg_euclid",
    "min_cheby",
    "avg_cheby",
    "evaluations",
    "wall_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub problem: String,
    pub m: usize,
    pub dm_id: String,
    pub algorithm: String,
    pub seed: u64,
    pub min_euclid: f64,
    pub avg_euclid: f64,
    pub min_cheby: f64,
    pub avg_cheby: f64,
    pub evaluations: usize,
    pub wall_ms: u64,
}

impl ResultRow {
    pub fn indicator(&self, name: &str) -> Option<f64> {
        match name {
            "min_euclid" => Some(self.min_euclid),
            "avg_euclid" => Some(self.avg_euclid),
            "min_cheby" => Some(self.min_cheby),
            "avg_cheby" => Some(self.avg_cheby),
            _ => None,
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        for (name, v) in [
            ("min_euclid", self.min_euclid),
            ("avg_euclid", self.avg_euclid),
            ("min_cheby", self.min_cheby),
            ("avg_cheby", self.avg_cheby),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(format!("{name} = {v} is not a finite non-negative distance"));
            }
        }
        // A mean of equal distances may round an ulp below their minimum.
        let above = |min: f64, avg: f64| min > avg + 1e-12 * avg.abs().max(1.0);
        if above(self.min_euclid, self.avg_euclid) || above(self.min_cheby, self.avg_cheby) {
            return Err("a minimum indicator exceeds its average".into());
        }
        Ok(())
    }
}

pub const INDICATORS: [&str; 4] = ["min_euclid", "avg_euclid", "min_cheby", "avg_cheby"];

fn header_hash(fields: &[&str]) -> String {
    let digest = Sha256::digest(fields.join(",").as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash identifying the current column layout.
pub fn schema_hash() -> String {
    header_hash(&RESULT_COLUMNS)
}

pub fn write_results(rows: &[ResultRow]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(RESULT_COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| BenchError::Runtime(e.to_string()))
}

/// Rows that parsed, plus one message per skipped row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LoadedResults {
    pub rows: Vec<ResultRow>,
    pub skipped: Vec<String>,
}

/// Reads a results CSV. A header that does not hash to [`schema_hash`] is a
/// validation error; malformed rows are skipped and reported.
pub fn read_results<R: Read>(reader: R) -> Result<LoadedResults> {
    let mut r = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = r.headers()?.clone();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Ok(LoadedResults::default());
    }
    let fields: Vec<&str> = header.iter().collect();
    if header_hash(&fields) != schema_hash() {
        return Err(BenchError::Validation(format!(
            "results header hashes to {} but schema {} expects columns {}",
            header_hash(&fields),
            schema_hash(),
            RESULT_COLUMNS.join(",")
        )));
    }
    let mut out = LoadedResults::default();
    for (i, record) in r.records().enumerate() {
        let line = i + 2;
        let parsed = record
            .map_err(|e| e.to_string())
            .and_then(|rec| rec.deserialize::<ResultRow>(Some(&header)).map_err(|e| e.to_string()))
            .and_then(|row| row.check().map(|_| row));
        match parsed {
            Ok(row) => out.rows.push(row),
            Err(message) => out.skipped.push(format!("line {line}: {message}")),
        }
    }
    Ok(out)
}
