//! Result serialization: CSV, JSON, and a generated plot script.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! parsing a CSV back yields bit-identical values and identical runs yield
//! byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::experiment::runner::{SummaryRow, TrialRecord};
use crate::mechanisms::MechanismId;

pub const TRIALS_HEADER: &str =
    "mechanism,sweep_name,sweep_value,trial,objective,true_optimum,suboptimality,epsilon,seed";
pub const SUMMARY_HEADER: &str = "mechanism,sweep_name,sweep_value,mean,two_sigma,runs";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Plotscript,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "plotscript" => Ok(OutputFormat::Plotscript),
            other => Err(Error::invalid(format!(
                "unknown format `{other}` (expected csv, json, or plotscript)"
            ))),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn trials_csv(records: &[TrialRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(TRIALS_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.mechanism,
            r.sweep_name,
            r.sweep_value,
            r.trial,
            r.objective,
            r.true_optimum,
            r.suboptimality,
            r.epsilon,
            r.seed
        );
    }
    out
}

fn summary_csv(summary: &[SummaryRow]) -> String {
    let mut out = String::with_capacity(48 * (summary.len() + 1));
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for r in summary {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.mechanism, r.sweep_name, r.sweep_value, r.mean, r.two_sigma, r.runs
        );
    }
    out
}

/// Standalone matplotlib script: reads `summary.csv` next to itself and
/// renders one mean±two_sigma errorbar series per mechanism.
const PLOT_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Render mean +/- two-sigma curves from summary.csv (same directory)."""
import collections
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
series = collections.defaultdict(lambda: ([], [], []))
sweep_name = "sweep_value"
with open(os.path.join(here, "summary.csv"), newline="") as fh:
    for row in csv.DictReader(fh):
        xs, ys, errs = series[row["mechanism"]]
        xs.append(float(row["sweep_value"]))
        ys.append(float(row["mean"]))
        errs.append(float(row["two_sigma"]))
        sweep_name = row["sweep_name"]

fig, ax = plt.subplots(figsize=(7, 4.5))
for mechanism in sorted(series):
    xs, ys, errs = series[mechanism]
    order = sorted(range(len(xs)), key=xs.__getitem__)
    ax.errorbar(
        [xs[i] for i in order],
        [ys[i] for i in order],
        yerr=[errs[i] for i in order],
        marker="o",
        capsize=3,
        label=mechanism,
    )
ax.set_xlabel(sweep_name)
ax.set_ylabel("objective value (mean +/- 2 sigma)")
ax.legend()
fig.tight_layout()
out = os.path.join(here, "plot.png")
fig.savefig(out, dpi=150)
print(out)
"#;

/// Writes the selected formats into `out_dir` (created if missing) and
/// returns the paths written. Formats: `csv` -> trials.csv + summary.csv,
/// `json` -> trials.json + summary.json, `plotscript` -> plot.py.
pub fn emit_outputs(
    records: &[TrialRecord],
    summary: &[SummaryRow],
    out_dir: &Path,
    formats: &[OutputFormat],
) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(Error::invalid("no trial records to write"));
    }
    if formats.is_empty() {
        return Err(Error::invalid("no output formats selected"));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let mut written = Vec::new();
    let mut emit = |name: &str, contents: String| -> Result<()> {
        let path = out_dir.join(name);
        write_file(&path, &contents)?;
        written.push(path);
        Ok(())
    };

    // Fixed emission order keeps the returned path list deterministic.
    if formats.contains(&OutputFormat::Csv) {
        emit("trials.csv", trials_csv(records))?;
        emit("summary.csv", summary_csv(summary))?;
    }
    if formats.contains(&OutputFormat::Json) {
        emit("trials.json", serde_json::to_string_pretty(records)?)?;
        emit("summary.json", serde_json::to_string_pretty(summary)?)?;
    }
    if formats.contains(&OutputFormat::Plotscript) {
        emit("plot.py", PLOT_SCRIPT.to_string())?;
    }
    Ok(written)
}

fn parse_field<T: std::str::FromStr>(raw: &str, line: usize, column: &str) -> Result<T> {
    raw.parse().map_err(|_| {
        Error::invalid(format!("trials.csv line {line}: bad {column} value `{raw}`"))
    })
}

/// Inverse of the trials.csv writer.
pub fn parse_trials_csv(path: &Path) -> Result<Vec<TrialRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == TRIALS_HEADER => {}
        Some((_, header)) => {
            return Err(Error::invalid(format!("unexpected trials.csv header `{header}`")));
        }
        None => return Err(Error::invalid("trials.csv is empty")),
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::invalid(format!(
                "trials.csv line {}: expected 9 fields, got {}",
                i + 1,
                fields.len()
            )));
        }
        let n = i + 1;
        records.push(TrialRecord {
            mechanism: MechanismId::from_token(fields[0])?,
            sweep_name: fields[1].to_string(),
            sweep_value: parse_field(fields[2], n, "sweep_value")?,
            trial: parse_field(fields[3], n, "trial")?,
            objective: parse_field(fields[4], n, "objective")?,
            true_optimum: parse_field(fields[5], n, "true_optimum")?,
            suboptimality: parse_field(fields[6], n, "suboptimality")?,
            epsilon: parse_field(fields[7], n, "epsilon")?,
            seed: parse_field(fields[8], n, "seed")?,
        });
    }
    Ok(records)
}
