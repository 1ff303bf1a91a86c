//! Output records and their human, JSON and CSV renderings.

use std::fmt::Write as _;

use penney_core::Rational;
use serde::{Deserialize, Serialize};

use crate::decimal::{self, SIGNIFICANT};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

/// An exact value next to its decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Number {
    pub exact: String,
    pub decimal: String,
}

impl Number {
    pub fn new(x: &Rational) -> Self {
        Number {
            exact: decimal::exact(x),
            decimal: decimal::render(x, SIGNIFICANT),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    #[serde(flatten)]
    pub value: Number,
}

impl Quantity {
    pub fn new(name: impl Into<String>, x: &Rational) -> Self {
        Quantity {
            name: name.into(),
            value: Number::new(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedFunction {
    pub name: String,
    pub function: String,
}

/// Result of `mean`, `duel`, `trio` and `race`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub patterns: Vec<String>,
    pub p: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub given: Option<String>,
    pub results: Vec<Quantity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generating_functions: Vec<NamedFunction>,
    pub provenance: String,
}

impl OutputRecord {
    pub fn result(&self, name: &str) -> Option<&Number> {
        self.results
            .iter()
            .find(|q| q.name == name)
            .map(|q| &q.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub patterns: Vec<String>,
    pub p: Number,
    pub nmax: usize,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimColumn {
    pub name: String,
    pub simulated: f64,
    pub std_error: f64,
    pub exact: Number,
    /// `None` when the standard error is zero.
    pub z: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimRecord {
    pub patterns: Vec<String>,
    pub p: Number,
    pub games: u64,
    pub seed: u64,
    pub win_counts: Vec<u64>,
    pub columns: Vec<SimColumn>,
    pub exact_route: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: String,
    pub values: Vec<String>,
}

/// Grid table; `columns` excludes the leading `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub patterns: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimumRecord {
    pub patterns: Vec<String>,
    pub column: String,
    /// Minimizer rounded to 4 decimals.
    pub p_star: String,
    pub value: String,
    pub grid_p: String,
    pub grid_value: String,
}

pub trait Render: Serialize {
    fn human(&self) -> String;
    fn csv(&self) -> String;

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }
}

impl Render for OutputRecord {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "patterns: {}", self.patterns.join(" "));
        let _ = writeln!(out, "p: {} ({})", self.p.exact, self.p.decimal);
        if let Some(h) = &self.head {
            let _ = writeln!(out, "head start: {h}");
        }
        if let Some(g) = &self.given {
            let _ = writeln!(out, "given: {g}");
        }
        let width = self.results.iter().map(|q| q.name.len()).max().unwrap_or(0);
        for q in &self.results {
            let _ = writeln!(
                out,
                "{:<width$}  {}  ({})",
                q.name, q.value.exact, q.value.decimal
            );
        }
        for g in &self.generating_functions {
            let _ = writeln!(out, "{} = {}", g.name, g.function);
        }
        let _ = writeln!(out, "route: {}", self.provenance);
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("name,exact,decimal\n");
        for q in &self.results {
            let _ = writeln!(out, "{},{},{}", q.name, q.value.exact, q.value.decimal);
        }
        out
    }
}

impl Render for VerifyRecord {
    fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "ok" } else { "MISMATCH" };
            let _ = writeln!(out, "{tag:<8} {}: {}", c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            out,
            "{} checks, {} mismatches ({} at p = {}, nmax = {})",
            self.checks.len(),
            failed,
            self.patterns.join(" "),
            self.p.exact,
            self.nmax
        );
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("check,passed\n");
        for c in &self.checks {
            let _ = writeln!(out, "{},{}", c.name, c.passed);
        }
        out
    }
}

impl Render for SimRecord {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "patterns: {}", self.patterns.join(" "));
        let _ = writeln!(
            out,
            "p: {}  games: {}  seed: {}",
            self.p.exact, self.games, self.seed
        );
        let width = self
            .columns
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(6);
        let _ = writeln!(
            out,
            "{:<width$}  {:>14}  {:>12}  {:>16}  {:>8}",
            "column", "simulated", "std error", "exact", "z"
        );
        for c in &self.columns {
            let _ = writeln!(
                out,
                "{:<width$}  {:>14.8}  {:>12.3e}  {:>16}  {:>8}",
                c.name,
                c.simulated,
                c.std_error,
                c.exact.decimal,
                c.z.map_or("-".to_string(), |z| format!("{z:.3}"))
            );
        }
        let _ = writeln!(out, "exact route: {}", self.exact_route);
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("column,simulated,std_error,exact,exact_decimal,z\n");
        for c in &self.columns {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                c.name,
                c.simulated,
                c.std_error,
                c.exact.exact,
                c.exact.decimal,
                c.z.map_or(String::new(), |z| z.to_string())
            );
        }
        out
    }
}

impl Render for SweepTable {
    fn human(&self) -> String {
        self.csv()
    }

    fn csv(&self) -> String {
        let mut out = String::from("p");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.p);
            for v in &r.values {
                out.push(',');
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }
}

impl Render for MinimumRecord {
    fn human(&self) -> String {
        format!(
            "minimum of {} for {}: p* = {}, value = {} (grid: p = {}, value = {})\n",
            self.column,
            self.patterns.join(" "),
            self.p_star,
            self.value,
            self.grid_p,
            self.grid_value
        )
    }

    fn csv(&self) -> String {
        format!(
            "column,p_star,value\n{},{},{}\n",
            self.column, self.p_star, self.value
        )
    }
}
