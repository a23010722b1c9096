//! Run reports and their table and CSV renderings.

use std::time::Duration;

use super::decimal::{render_down, render_interval, render_up};
use super::CliError;
use crate::enclosure::EnclosureList;
use crate::ival::Interval;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub entries: Vec<Option<Interval>>,
}

impl ReportRow {
    pub fn from_list(label: impl Into<String>, list: &EnclosureList, scale: Option<f64>) -> Self {
        let s = scale.map(Interval::point);
        let entries = list.entries.iter().map(|&e| Some(s.map_or(e, |s| e * s))).collect();
        Self { label: label.into(), entries }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub title: String,
    /// Column headers; rows may be shorter.
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// Work counts, printed with `--effort`.
    pub effort: Vec<String>,
    pub notes: Vec<String>,
    pub wall: Duration,
    /// Where the run stopped, if it did not certify everything.
    pub halted: Option<String>,
}

impl RunReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), ..Default::default() }
    }

    /// `μ₀, μ₁, …` up to the longest row.
    pub fn eigen_columns(&mut self) {
        let n = self.rows.iter().map(|r| r.entries.len()).max().unwrap_or(0);
        self.columns = (0..n).map(|i| format!("mu{i}")).collect();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

/// Significant digits of table cells.
const TABLE_DIGITS: usize = 10;

pub fn emit_results(report: &RunReport, format: Format, effort: bool) -> String {
    match format {
        Format::Table => table(report, effort),
        Format::Csv => csv(report),
    }
}

fn table(r: &RunReport, effort: bool) -> String {
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(r.rows.len() + 1);
    grid.push(std::iter::once("stage".to_string()).chain(r.columns.iter().cloned()).collect());
    for row in &r.rows {
        let mut cells = vec![row.label.clone()];
        cells.extend(row.entries.iter().map(|e| e.map_or("-".into(), |v| render_interval(v, TABLE_DIGITS))));
        grid.push(cells);
    }
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| grid.iter().filter_map(|row| row.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    if !r.title.is_empty() {
        out.push_str(&r.title);
        out.push('\n');
    }
    for row in &grid {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    for n in &r.notes {
        out.push_str(n);
        out.push('\n');
    }
    if effort {
        for e in &r.effort {
            out.push_str(e);
            out.push('\n');
        }
    }
    if let Some(h) = &r.halted {
        out.push_str(&format!("halted: {h}\n"));
    }
    if r.wall > Duration::ZERO {
        out.push_str(&format!("wall time {:.3} s\n", r.wall.as_secs_f64()));
    }
    out
}

fn csv(r: &RunReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["stage", "index", "lo", "hi", "width"]).expect("in-memory write");
    for row in &r.rows {
        for (i, e) in row.entries.iter().enumerate() {
            if let Some(v) = e {
                let width = if v.is_bounded() { (Interval::point(v.hi()) - Interval::point(v.lo())).hi() } else { f64::INFINITY };
                let rec = [row.label.clone(), i.to_string(), render_down(v.lo()), render_up(v.hi()), render_up(width)];
                w.write_record(&rec).expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Rows of a CSV report, as `(stage, index, enclosure)`.
pub fn parse_csv(text: &str) -> Result<Vec<(String, usize, Interval)>, CliError> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let bad = |e: String| CliError::Parse(format!("csv: {e}"));
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let field = |i: usize| rec.get(i).ok_or_else(|| bad(format!("missing column {i}")));
        let index = field(1)?.parse().map_err(|_| bad("bad index".into()))?;
        let lo: f64 = field(2)?.parse().map_err(|_| bad("bad lo".into()))?;
        let hi: f64 = field(3)?.parse().map_err(|_| bad("bad hi".into()))?;
        out.push((field(0)?.to_string(), index, Interval::new(lo, hi)));
    }
    Ok(out)
}
