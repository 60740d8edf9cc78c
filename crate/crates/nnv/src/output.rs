//! Rendering of tallies, comparisons, simulations, and boundary curves as
//! aligned text tables, CSV, or JSON.
//!
//! Precision rules: tables round to a configurable number of decimals
//! (default 2); CSV and JSON default to shortest round-trip floats so the
//! numbers re-parse exactly. An explicit digit count also rounds CSV. JSON
//! always round-trips, and maps infinite polarity to `null` since JSON has
//! no infinity.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::ballot::{CandidateIndex, Tally};
use crate::error::{Error, Result};
use crate::metrics::Winner;
use crate::montecarlo::SimReport;
use crate::ranked::{ComparisonReport, MethodOutcome};

/// Output encoding for every CLI command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidConfig(format!(
                "format `{other}`: expected table, json, or csv"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// Decimal places for table (and, when explicit, CSV) values. `None` means
/// shortest round-trip.
pub type Digits = Option<usize>;

/// Number of table decimals when the user asks for nothing else.
pub const DEFAULT_TABLE_DIGITS: usize = 2;

fn fmt_float(v: f64, digits: Digits) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    match digits {
        Some(d) => format!("{v:.d$}"),
        None => format!("{v}"),
    }
}

fn json_float(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Render aligned columns with a two-space gutter.
fn layout(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[i].saturating_sub(cell.len());
            if i + 1 < row.len() {
                line.push_str(&" ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_from_rows(rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .write_record(row)
            .map_err(|e| Error::InvalidConfig(format!("csv write failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidConfig(format!("csv write failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

/// One winner column of a tally report: a metric or a satisfaction
/// aggregate evaluated per candidate, with the resulting winner.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnOutcome {
    pub label: String,
    pub values: Vec<f64>,
    /// `None` when every candidate was disqualified.
    pub winner: Option<Winner>,
}

/// Everything the tally command prints.
#[derive(Debug, Clone, PartialEq)]
pub struct TallyReport {
    pub candidates: Vec<String>,
    pub norm: f64,
    pub tally: Tally,
    pub columns: Vec<ColumnOutcome>,
    pub disqualified: Vec<CandidateIndex>,
    /// Ballots that missed the norm, kept under lenient validation.
    pub norm_deviations: usize,
}

impl TallyReport {
    fn winner_names(&self, winner: &Winner) -> Vec<String> {
        winner
            .candidates()
            .iter()
            .map(|c| self.candidates[c.0].clone())
            .collect()
    }

    fn rows(&self, digits: Digits) -> Vec<Vec<String>> {
        let mut header = vec![
            "candidate".to_string(),
            "positive".to_string(),
            "negative".to_string(),
            "popularity".to_string(),
            "polarity".to_string(),
            "qualified".to_string(),
        ];
        for column in &self.columns {
            header.push(column.label.clone());
        }
        let mut rows = vec![header];
        for (i, name) in self.candidates.iter().enumerate() {
            let counts = &self.tally.counts()[i];
            let mut row = vec![
                name.clone(),
                fmt_float(counts.positive, digits),
                fmt_float(counts.negative, digits),
                fmt_float(counts.popularity(), digits),
                fmt_float(counts.polarity(), digits),
                if counts.qualified() { "yes" } else { "no" }.to_string(),
            ];
            for column in &self.columns {
                row.push(fmt_float(column.values[i], digits));
            }
            rows.push(row);
        }
        rows
    }

    fn to_table(&self, digits: Digits) -> String {
        let digits = digits.or(Some(DEFAULT_TABLE_DIGITS));
        let mut out = layout(&self.rows(digits));
        out.push('\n');
        for column in &self.columns {
            let verdict = match &column.winner {
                Some(w) => self.winner_names(w).join(", "),
                None => "none (all disqualified)".to_string(),
            };
            let tied = matches!(column.winner, Some(Winner::Tie(_)));
            out.push_str(&format!(
                "winner ({}): {}{}\n",
                column.label,
                if tied { "tie " } else { "" },
                verdict
            ));
        }
        if !self.disqualified.is_empty() {
            let names: Vec<String> = self
                .disqualified
                .iter()
                .map(|c| self.candidates[c.0].clone())
                .collect();
            out.push_str(&format!("disqualified: {}\n", names.join(", ")));
        }
        if self.norm_deviations > 0 {
            out.push_str(&format!(
                "note: {} ballot(s) off the vote norm, kept by lenient validation\n",
                self.norm_deviations
            ));
        }
        out
    }

    fn to_csv(&self, digits: Digits) -> Result<String> {
        let mut rows = self.rows(digits);
        // Winner membership per column, since CSV has no room for footer
        // lines: `winner_<label>` is true on winning rows.
        for column in &self.columns {
            rows[0].push(format!("winner_{}", column.label));
            for (i, row) in rows.iter_mut().skip(1).enumerate() {
                let is_winner = column
                    .winner
                    .as_ref()
                    .is_some_and(|w| w.contains(CandidateIndex(i)));
                row.push(is_winner.to_string());
            }
        }
        csv_from_rows(&rows)
    }

    fn to_json(&self) -> String {
        let tally: Vec<Value> = self
            .candidates
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let counts = &self.tally.counts()[i];
                json!({
                    "candidate": name,
                    "positive": counts.positive,
                    "negative": counts.negative,
                    "popularity": counts.popularity(),
                    "polarity": json_float(counts.polarity()),
                    "qualified": counts.qualified(),
                })
            })
            .collect();
        let results: Vec<Value> = self
            .columns
            .iter()
            .map(|column| {
                json!({
                    "method": column.label,
                    "values": column.values.iter().map(|&v| json_float(v)).collect::<Vec<_>>(),
                    "winner": column.winner.as_ref().map(|w| self.winner_names(w)),
                    "tied": matches!(column.winner, Some(Winner::Tie(_))),
                })
            })
            .collect();
        json_pretty(&json!({
            "candidates": self.candidates,
            "norm": self.norm,
            "norm_deviations": self.norm_deviations,
            "tally": tally,
            "results": results,
            "disqualified": self.disqualified.iter().map(|c| self.candidates[c.0].clone()).collect::<Vec<_>>(),
        }))
    }

    pub fn render(&self, format: OutputFormat, digits: Digits) -> Result<String> {
        match format {
            OutputFormat::Table => Ok(self.to_table(digits)),
            OutputFormat::Csv => self.to_csv(digits),
            OutputFormat::Json => Ok(self.to_json()),
        }
    }
}

fn outcome_names(outcome: &MethodOutcome, candidates: &[String]) -> (String, Option<Vec<String>>) {
    match outcome {
        MethodOutcome::Winner(c) => (candidates[c.0].clone(), Some(vec![candidates[c.0].clone()])),
        MethodOutcome::Tie(set) => {
            let names: Vec<String> = set.iter().map(|c| candidates[c.0].clone()).collect();
            (format!("tie {}", names.join(", ")), Some(names))
        }
        MethodOutcome::NoWinner => ("none".to_string(), None),
    }
}

/// Render a method comparison.
pub fn render_comparison(
    report: &ComparisonReport,
    format: OutputFormat,
    digits: Digits,
) -> Result<String> {
    match format {
        OutputFormat::Table => {
            let digits = digits.or(Some(DEFAULT_TABLE_DIGITS));
            let mut rows = Vec::new();
            let mut header = vec!["method".to_string(), "winner".to_string()];
            header.extend(report.candidates.iter().cloned());
            rows.push(header);
            for result in &report.results {
                let (verdict, _) = outcome_names(&result.outcome, &report.candidates);
                let mut row = vec![result.method.clone(), verdict];
                match &result.scores {
                    Some(scores) => {
                        row.extend(scores.iter().map(|&v| fmt_float(v, digits)));
                    }
                    None => row.extend(report.candidates.iter().map(|_| "-".to_string())),
                }
                rows.push(row);
            }
            let mut out = layout(&rows);
            out.push('\n');
            out.push_str(&format!(
                "divergent: {}\n",
                if report.divergent { "yes" } else { "no" }
            ));
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            let mut header = vec!["method".to_string(), "winner".to_string()];
            header.extend(report.candidates.iter().cloned());
            header.push("divergent".to_string());
            rows.push(header);
            for result in &report.results {
                let (verdict, _) = outcome_names(&result.outcome, &report.candidates);
                let mut row = vec![result.method.clone(), verdict];
                match &result.scores {
                    Some(scores) => row.extend(scores.iter().map(|&v| fmt_float(v, digits))),
                    None => row.extend(report.candidates.iter().map(|_| String::new())),
                }
                row.push(report.divergent.to_string());
                rows.push(row);
            }
            csv_from_rows(&rows)
        }
        OutputFormat::Json => {
            let results: Vec<Value> = report
                .results
                .iter()
                .map(|result| {
                    let (_, winner) = outcome_names(&result.outcome, &report.candidates);
                    json!({
                        "method": result.method,
                        "signed": result.signed,
                        "winner": winner,
                        "tied": matches!(result.outcome, MethodOutcome::Tie(_)),
                        "scores": result.scores.as_ref().map(|s| {
                            s.iter().map(|&v| json_float(v)).collect::<Vec<_>>()
                        }),
                    })
                })
                .collect();
            Ok(json_pretty(&json!({
                "candidates": report.candidates,
                "results": results,
                "divergent": report.divergent,
            })))
        }
    }
}

/// Render a correlation sweep with candidate counts as rows and metrics as
/// columns.
pub fn render_simulation(
    reports: &[SimReport],
    format: OutputFormat,
    digits: Digits,
) -> Result<String> {
    let labels: Vec<String> = reports
        .first()
        .map(|r| r.agreements.iter().map(|a| a.metric.clone()).collect())
        .unwrap_or_default();
    let grid = |digits: Digits| -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        let mut header = vec!["m".to_string()];
        header.extend(labels.iter().cloned());
        rows.push(header);
        for report in reports {
            let mut row = vec![report.candidates.to_string()];
            row.extend(report.agreements.iter().map(|a| fmt_float(a.rate, digits)));
            rows.push(row);
        }
        rows
    };
    match format {
        OutputFormat::Table => {
            let digits = digits.or(Some(DEFAULT_TABLE_DIGITS));
            let mut out = layout(&grid(digits));
            if let Some(first) = reports.first() {
                out.push('\n');
                out.push_str(&format!(
                    "{} trials per row, seed {}, distribution {}, variant {}\n",
                    first.trials, first.seed, first.distribution, first.variant
                ));
            }
            Ok(out)
        }
        OutputFormat::Csv => csv_from_rows(&grid(digits)),
        OutputFormat::Json => {
            Ok(json_pretty(&serde_json::to_value(reports).expect("reports serialize")))
        }
    }
}

/// One sampled point of the maximal-penalty boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRow {
    pub m: usize,
    pub c: f64,
    pub b_max: f64,
}

/// Render boundary curve samples.
pub fn render_region(rows: &[RegionRow], format: OutputFormat, digits: Digits) -> Result<String> {
    let grid = |digits: Digits| -> Vec<Vec<String>> {
        let mut out = vec![vec!["m".to_string(), "c".to_string(), "b_max".to_string()]];
        for row in rows {
            out.push(vec![
                row.m.to_string(),
                fmt_float(row.c, digits),
                fmt_float(row.b_max, digits),
            ]);
        }
        out
    };
    match format {
        OutputFormat::Table => {
            let digits = digits.or(Some(DEFAULT_TABLE_DIGITS));
            Ok(layout(&grid(digits)))
        }
        OutputFormat::Csv => csv_from_rows(&grid(digits)),
        OutputFormat::Json => {
            let points: Vec<Value> = rows
                .iter()
                .map(|row| json!({"m": row.m, "c": row.c, "b_max": row.b_max}))
                .collect();
            Ok(json_pretty(&json!({ "points": points })))
        }
    }
}
