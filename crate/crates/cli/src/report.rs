//! Output documents and their json, csv and text renderings.
//!
//! Json documents are `{config, rows | entries, summary}`; `table` has no summary. Exact
//! values are `"numerator/denominator"` strings (integers without a denominator).

use std::fmt::Write as _;

use qladder::quadrature::checks::NumericCheck;
use qladder::verify::{ReportEntry, Summary};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    pub big_r: String,
    pub small_r: String,
    pub p1: String,
    pub zeta_ratio: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: usize,
    pub oracle_alpha: String,
    pub closed_alpha: String,
    pub oracle_beta: String,
    pub closed_beta: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOutput {
    pub config: RunConfig,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub config: RunConfig,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadcheckOutput {
    pub config: RunConfig,
    pub entries: Vec<NumericCheck>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutput {
    pub config: RunConfig,
    pub rows: Vec<OracleRow>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Table(TableOutput),
    Verify(VerifyOutput),
    Quadcheck(QuadcheckOutput),
    Oracle(OracleOutput),
}

/// Pretty json with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("output documents serialize");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(records: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("flat records serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn summary_line(s: &Summary) -> String {
    format!(
        "summary: {} passed, {} failed, {} failed as expected",
        s.passed, s.failed, s.expected_failures
    )
}

fn header(config: &RunConfig) -> String {
    format!(
        "{:?} {} sqrt-q={} nmax={}",
        config.command,
        config.family(),
        config.sqrt_q,
        config.nmax
    )
    .to_lowercase()
}

fn table_text(doc: &TableOutput) -> String {
    let head = ["n", "alpha_n", "beta_n", "R_n", "r_n", "p1(n)", "zeta_n/zeta_0"];
    let cells: Vec<[String; 7]> = doc
        .rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.alpha.clone(),
                r.beta.clone(),
                r.big_r.clone(),
                r.small_r.clone(),
                r.p1.clone(),
                r.zeta_ratio.clone(),
            ]
        })
        .collect();
    let mut width = head.map(str::len);
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = header(&doc.config);
    out.push('\n');
    let line = |cols: Vec<&str>| {
        let padded: Vec<String> = cols.iter().zip(width).map(|(c, w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    out.push_str(&line(head.to_vec()));
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

fn lines_text<T: std::fmt::Display>(config: &RunConfig, items: &[T], summary: &Summary) -> String {
    let mut out = header(config);
    out.push('\n');
    for item in items {
        let _ = writeln!(out, "{item}");
    }
    out.push_str(&summary_line(summary));
    out.push('\n');
    out
}

fn oracle_text(doc: &OracleOutput) -> String {
    let mut out = header(&doc.config);
    out.push('\n');
    for r in &doc.rows {
        let _ = writeln!(
            out,
            "n={}: alpha oracle {}, closed {}; beta oracle {}, closed {}: {}",
            r.n,
            r.oracle_alpha,
            r.closed_alpha,
            r.oracle_beta,
            r.closed_beta,
            if r.equal { "equal" } else { "MISMATCH" }
        );
    }
    out.push_str(&summary_line(&doc.summary));
    out.push('\n');
    out
}

impl Output {
    pub fn config(&self) -> &RunConfig {
        match self {
            Self::Table(d) => &d.config,
            Self::Verify(d) => &d.config,
            Self::Quadcheck(d) => &d.config,
            Self::Oracle(d) => &d.config,
        }
    }

    pub fn summary(&self) -> Option<&Summary> {
        match self {
            Self::Table(_) => None,
            Self::Verify(d) => Some(&d.summary),
            Self::Quadcheck(d) => Some(&d.summary),
            Self::Oracle(d) => Some(&d.summary),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (format, self) {
            (Format::Json, Self::Table(d)) => to_json(d),
            (Format::Json, Self::Verify(d)) => to_json(d),
            (Format::Json, Self::Quadcheck(d)) => to_json(d),
            (Format::Json, Self::Oracle(d)) => to_json(d),
            (Format::Csv, Self::Table(d)) => to_csv(&d.rows),
            (Format::Csv, Self::Verify(d)) => to_csv(&d.entries),
            (Format::Csv, Self::Quadcheck(d)) => to_csv(&d.entries),
            (Format::Csv, Self::Oracle(d)) => to_csv(&d.rows),
            (Format::Text, Self::Table(d)) => table_text(d),
            (Format::Text, Self::Verify(d)) => lines_text(&d.config, &d.entries, &d.summary),
            (Format::Text, Self::Quadcheck(d)) => lines_text(&d.config, &d.entries, &d.summary),
            (Format::Text, Self::Oracle(d)) => oracle_text(d),
        }
    }

    /// One line for stdout when the report itself goes to a file.
    pub fn brief(&self) -> String {
        match self.summary() {
            Some(s) => summary_line(s),
            None => match self {
                Self::Table(d) => format!("{} rows", d.rows.len()),
                _ => unreachable!("only table lacks a summary"),
            },
        }
    }
}
