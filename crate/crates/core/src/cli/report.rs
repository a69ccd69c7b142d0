//! Reports and their csv/json/text renderings.
//!
//! Table commands fill `columns`/`rows`; verification commands fill
//! `results`. CSV output of a table uses the table's own columns; CSV
//! output of a verification uses [`CHECK_COLUMNS`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::verify::{Check, Criterion};

pub const SCHEMA_VERSION: u32 = 1;

pub const CHECK_COLUMNS: [&str; 7] = ["criterion", "name", "lhs", "rhs", "residual", "tolerance", "pass"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckGroup {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl From<Criterion> for CheckGroup {
    fn from(c: Criterion) -> Self {
        Self {
            id: c.id,
            pass: c.pass(),
            name: c.name,
            checks: c.checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub results: Vec<CheckGroup>,
    /// True iff every check in `results` passes.
    pub pass: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            parameters: BTreeMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            results: Vec::new(),
            pass: true,
            seed,
            timestamp: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn table(mut self, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn push(&mut self, c: Criterion) {
        let group = CheckGroup::from(c);
        self.pass &= group.pass;
        self.results.push(group);
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(out: &mut String, fields: impl IntoIterator<Item = String>) {
    let line: Vec<String> = fields.into_iter().map(|f| csv_field(&f)).collect();
    out.push_str(&line.join(","));
    out.push('\n');
}

fn check_fields(group: &CheckGroup, c: &Check) -> Vec<String> {
    vec![
        group.id.to_string(),
        c.name.clone(),
        c.lhs.clone().unwrap_or_default(),
        c.rhs.clone().unwrap_or_default(),
        c.residual.map(float).unwrap_or_default(),
        c.tolerance.map(float).unwrap_or_default(),
        c.pass.to_string(),
    ]
}

fn render_csv(r: &Report) -> String {
    let mut out = String::new();
    if !r.columns.is_empty() {
        csv_line(&mut out, r.columns.iter().cloned());
        for row in &r.rows {
            csv_line(&mut out, row.iter().cloned());
        }
    }
    if !r.results.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        csv_line(&mut out, CHECK_COLUMNS.iter().map(|c| c.to_string()));
        for g in &r.results {
            for c in &g.checks {
                csv_line(&mut out, check_fields(g, c));
            }
        }
    }
    out
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = write!(out, "# {}", r.command);
    for (k, v) in &r.parameters {
        let _ = write!(out, " {k}={v}");
    }
    out.push('\n');
    if !r.columns.is_empty() {
        let widths: Vec<usize> = (0..r.columns.len())
            .map(|i| {
                r.rows
                    .iter()
                    .filter_map(|row| row.get(i))
                    .map(|s| s.chars().count())
                    .chain([r.columns[i].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "{}", line(&r.columns));
        for row in &r.rows {
            let _ = writeln!(out, "{}", line(row));
        }
    }
    for g in &r.results {
        let failed = g.checks.iter().filter(|c| !c.pass).count();
        let worst = g.checks.iter().filter_map(|c| c.residual).reduce(f64::max);
        let _ = write!(
            out,
            "[{}] {:>2} {} ({} checks",
            if g.pass { "PASS" } else { "FAIL" },
            g.id,
            g.name,
            g.checks.len()
        );
        if let Some(w) = worst {
            let _ = write!(out, ", max residual {}", float(w));
        }
        let _ = writeln!(out, ")");
        for c in g.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(
                out,
                "    failed: {} lhs={} rhs={} residual={} tol={}",
                c.name,
                c.lhs.as_deref().unwrap_or("-"),
                c.rhs.as_deref().unwrap_or("-"),
                c.residual.map(float).unwrap_or_else(|| "-".into()),
                c.tolerance.map(float).unwrap_or_else(|| "-".into()),
            );
        }
        if failed > 0 {
            let _ = writeln!(out, "    {failed} of {} failed", g.checks.len());
        }
    }
    if !r.results.is_empty() {
        let _ = writeln!(out, "summary: {}", if r.pass { "pass" } else { "fail" });
    }
    out
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Csv => render_csv(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report is always serialisable");
            s.push('\n');
            s
        }
        Format::Text => render_text(r),
    }
}
