//! Line-oriented `key = value` configuration files.
//!
//! ```text
//! # comment
//! [plan]
//! master_seed = 7
//!
//! [dm cautious]
//! weights = 0.3,0.4; 0.3,0.4; 0.25,0.35
//! lambda = 0.6,0.7
//! ```
//!
//! A header is `[kind]` or `[kind name]`. Keys are unique within a section.
//! Intervals are written `lo,hi`; interval lists separate items with `;`.

use std::path::Path;

use ioaco::interval::Interval;

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub kind: String,
    pub name: Option<String>,
    pub line: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDoc {
    pub source: String,
    pub sections: Vec<Section>,
}

impl ConfigDoc {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut sections: Vec<Section> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| BenchError::Config {
                path: source.to_string(),
                line,
                message,
            };
            if let Some(header) = content.strip_prefix('[') {
                let inner = header.strip_suffix(']').ok_or_else(|| err("unterminated section header".into()))?;
                let mut parts = inner.split_whitespace();
                let kind = parts.next().ok_or_else(|| err("empty section header".into()))?;
                let name = parts.next().map(str::to_string);
                if parts.next().is_some() {
                    return Err(err(format!("section header [{inner}] has more than one name")));
                }
                sections.push(Section {
                    kind: kind.to_string(),
                    name,
                    line,
                    entries: Vec::new(),
                });
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(err("empty key".into()));
            }
            let section = sections
                .last_mut()
                .ok_or_else(|| err(format!("`{key}` appears before any section header")))?;
            if section.entries.iter().any(|e| e.key == key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            section.entries.push(Entry {
                key: key.to_string(),
                value: value.trim().to_string(),
                line,
            });
        }
        Ok(Self {
            source: source.to_string(),
            sections,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn error(&self, line: usize, message: impl Into<String>) -> BenchError {
        BenchError::Config {
            path: self.source.clone(),
            line,
            message: message.into(),
        }
    }

    pub fn sections_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a Section> + 'a {
        self.sections.iter().filter(move |s| s.kind == kind)
    }
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    /// Fails on any key outside `known`.
    pub fn check_keys(&self, doc: &ConfigDoc, known: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !known.contains(&e.key.as_str())) {
            Some(e) => Err(doc.error(e.line, format!("unknown key `{}` in [{}]", e.key, self.kind))),
            None => Ok(()),
        }
    }

    pub fn require(&self, doc: &ConfigDoc, key: &str) -> Result<&Entry> {
        self.get(key)
            .ok_or_else(|| doc.error(self.line, format!("[{}] is missing `{key}`", self.kind)))
    }
}

pub fn parse_real(doc: &ConfigDoc, e: &Entry) -> Result<f64> {
    e.value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| doc.error(e.line, format!("`{}`: expected a number, got `{}`", e.key, e.value)))
}

pub fn parse_count<T: std::str::FromStr>(doc: &ConfigDoc, e: &Entry) -> Result<T> {
    e.value
        .parse::<T>()
        .map_err(|_| doc.error(e.line, format!("`{}`: expected a non-negative integer, got `{}`", e.key, e.value)))
}

pub fn parse_bool(doc: &ConfigDoc, e: &Entry) -> Result<bool> {
    match e.value.as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(doc.error(e.line, format!("`{}`: expected true or false, got `{other}`", e.key))),
    }
}

/// Parses `lo,hi`.
pub fn parse_interval_str(text: &str) -> std::result::Result<Interval, String> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{text}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad number `{}`", lo.trim()))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad number `{}`", hi.trim()))?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

pub fn parse_interval(doc: &ConfigDoc, e: &Entry) -> Result<Interval> {
    parse_interval_str(&e.value).map_err(|m| doc.error(e.line, format!("`{}`: {m}", e.key)))
}

/// Parses `lo,hi; lo,hi; ...`.
pub fn parse_interval_list(doc: &ConfigDoc, e: &Entry) -> Result<Vec<Interval>> {
    e.value
        .split(';')
        .map(|item| parse_interval_str(item.trim()).map_err(|m| doc.error(e.line, format!("`{}`: {m}", e.key))))
        .collect()
}

pub fn parse_list(e: &Entry) -> Vec<String> {
    e.value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn format_interval(i: &Interval) -> String {
    format!("{},{}", i.lo(), i.hi())
}

pub fn format_interval_list(items: &[Interval]) -> String {
    items.iter().map(format_interval).collect::<Vec<_>>().join("; ")
}
