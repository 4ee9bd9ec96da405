use std::str::FromStr;

use serde::Serialize;

use super::run::CountRecord;
use super::verify::{CrossCheckReport, VerifyReport};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Md,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format, Error> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidSpec(format!("unknown format {other:?}"))),
        }
    }
}

/// Everything a run produced, rendered after all counting has finished.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub records: Vec<CountRecord>,
    pub verify: Vec<VerifyReport>,
    pub cross: Vec<CrossCheckReport>,
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn tables(report: &Report) -> Vec<Table> {
    let mut out = Vec::new();
    if !report.verify.is_empty() {
        out.push(Table {
            headers: vec![
                "experiment",
                "polynomial",
                "expected degree",
                "expected leading",
                "result",
            ],
            rows: report
                .verify
                .iter()
                .map(|v| {
                    vec![
                        v.label.clone(),
                        v.polynomial.to_string(),
                        v.expected_degree.to_string(),
                        v.expected_leading.to_string(),
                        v.summary(),
                    ]
                })
                .collect(),
        });
    }
    if !report.cross.is_empty() {
        out.push(Table {
            headers: vec![
                "quiver side",
                "hall side",
                "q",
                "quiver count",
                "hall count",
                "result",
            ],
            rows: report
                .cross
                .iter()
                .flat_map(|c| {
                    c.rows.iter().map(|r| {
                        let ok = if r.quiver == r.hall { "PASS" } else { "FAIL" };
                        vec![
                            c.quiver_label.clone(),
                            c.hall_label.clone(),
                            r.q.to_string(),
                            r.quiver.to_string(),
                            r.hall.to_string(),
                            ok.to_string(),
                        ]
                    })
                })
                .collect(),
        });
    }
    if !report.records.is_empty() {
        out.push(Table {
            headers: vec!["experiment", "q", "raw", "group order", "count", "wall ms"],
            rows: report
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.label.clone(),
                        r.q.to_string(),
                        r.raw.to_string(),
                        r.group_order.to_string(),
                        r.normalized.to_string(),
                        r.wall_ms.to_string(),
                    ]
                })
                .collect(),
        });
    }
    out
}

fn csv_table(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("write to memory");
    for row in &t.rows {
        w.write_record(row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf8")
}

fn md_table(t: &Table) -> String {
    let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
    let mut s = line(t.headers.iter().map(|h| h.to_string()).collect());
    s += &line(t.headers.iter().map(|_| "---".to_string()).collect());
    for row in &t.rows {
        s += &line(row.iter().map(|c| c.replace('|', "\\|")).collect());
    }
    s
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => tables(report)
            .iter()
            .map(csv_table)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Md => tables(report)
            .iter()
            .map(md_table)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
