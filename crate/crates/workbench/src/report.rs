//! Experiment reports and their JSON and CSV renderings.
//!
//! CSV rows always use the column order
//! `experiment,series,x,observed,predicted,ratio`.

use std::io::Write;

use irreducibles::{Ideal, QuadElement};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub d: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Ideal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<QuadElement>,
    pub x_grid: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub series: String,
    pub x: u64,
    pub observed: f64,
    pub predicted: Option<f64>,
    pub ratio: Option<f64>,
}

/// A named pass/fail statement about the rows, e.g. a ratio band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: Parameters,
    pub rows: Vec<ReportRow>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub seed: u64,
    /// Kept out of the serialized form so reports are byte-reproducible.
    #[serde(skip)]
    pub wall_clock_seconds: f64,
}

impl ExperimentReport {
    pub fn new(experiment: &str, parameters: Parameters, seed: u64) -> Self {
        ExperimentReport {
            experiment: experiment.to_owned(),
            parameters,
            rows: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            seed,
            wall_clock_seconds: 0.0,
        }
    }

    pub fn push(&mut self, series: impl Into<String>, x: u64, observed: f64, predicted: Option<f64>) {
        let ratio = predicted.filter(|&p| p > 0.0).map(|p| observed / p);
        self.rows.push(ReportRow {
            series: series.into(),
            x,
            observed,
            predicted,
            ratio,
        });
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn series(&self, name: &str) -> impl Iterator<Item = &ReportRow> {
        let name = name.to_owned();
        self.rows.iter().filter(move |r| r.series == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Writes reports as one JSON array or as CSV rows with a single header.
pub fn write_reports(reports: &[ExperimentReport], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, reports)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["experiment", "series", "x", "observed", "predicted", "ratio"])?;
            for r in reports {
                for row in &r.rows {
                    w.serialize((
                        &r.experiment,
                        &row.series,
                        row.x,
                        row.observed,
                        row.predicted,
                        row.ratio,
                    ))?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let mut r = ExperimentReport::new(
            "demo",
            Parameters {
                d: -23,
                modulus: None,
                alpha: None,
                x_grid: vec![10, 100],
            },
            7,
        );
        r.push("C1", 10, 2.0, Some(4.0));
        r.push("C1", 100, 0.0, None);
        r.wall_clock_seconds = 1.5;
        r
    }

    #[test]
    fn csv_has_fixed_columns() {
        let mut buf = Vec::new();
        write_reports(&[sample()], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "experiment,series,x,observed,predicted,ratio");
        assert_eq!(lines[1], "demo,C1,10,2.0,4.0,0.5");
        assert_eq!(lines[2], "demo,C1,100,0.0,,");
    }

    #[test]
    fn json_omits_wall_clock() {
        let mut buf = Vec::new();
        write_reports(&[sample()], Format::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains("wall_clock"));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["rows"][0]["ratio"], 0.5);
    }
}
