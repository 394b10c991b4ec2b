//! Deterministic writers for run outputs.
//!
//! Every run produces `report.json` (the full machine-readable record),
//! `summary.csv` (one line per check), and a `plotdata/` directory of
//! curve samples. Numbers are printed with a fixed 12-significant-digit
//! format and files end lines with LF, so byte-identical inputs yield
//! byte-identical outputs regardless of worker count or platform.

use std::fs;
use std::path::Path;

use gnlab_core::mems;
use gnlab_core::report::InequalityReport;
use gnlab_core::{Error, Result};
use serde_json::json;

use crate::config::SCHEMA_VERSION;
use crate::runner::{CommandOutput, PlotFile};

/// Fixed float formatting: 12 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.11e}")
    }
}

/// Run-level metadata echoed into `report.json`.
pub struct RunMeta<'a> {
    pub command: &'a str,
    pub jobs: usize,
    pub seed: Option<u64>,
}

/// Write every artifact of a finished run into `out_dir`.
pub fn write_all(out_dir: &Path, meta: &RunMeta<'_>, out: &CommandOutput) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    let plot_dir = out_dir.join("plotdata");
    fs::create_dir_all(&plot_dir)?;
    fs::write(out_dir.join("summary.csv"), summary_csv(&out.reports)?)?;
    fs::write(out_dir.join("report.json"), report_json(meta, out)?)?;
    for plot in &out.plots {
        fs::write(plot_dir.join(&plot.name), plot_csv(plot)?)?;
    }
    if let Some((sol, mcfg)) = &out.solution {
        mems::save_solution(
            sol,
            mcfg,
            &out_dir.join("solution.csv"),
            &out_dir.join("solution.json"),
        )?;
    }
    Ok(())
}

/// The one-line-per-check summary table.
pub fn summary_csv(reports: &[InequalityReport]) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(InequalityReport::CSV_HEADER)?;
    for r in reports {
        writer.write_record(&[
            r.theorem_id.name().to_string(),
            fmt_float(r.p),
            r.n.to_string(),
            r.weight.clone(),
            fmt_float(r.lhs_compare),
            fmt_float(r.rhs_compare),
            fmt_float(r.constant),
            match r.ratio {
                Some(x) => fmt_float(x),
                None => "inf".to_string(),
            },
            r.verdict.name().to_string(),
        ])?;
    }
    writer
        .into_inner()
        .map_err(|e| Error::config("output", format!("summary buffer: {e}")))
}

fn plot_csv(plot: &PlotFile) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&plot.columns)?;
    for row in &plot.rows {
        writer.write_record(row)?;
    }
    writer
        .into_inner()
        .map_err(|e| Error::config("output", format!("plot buffer: {e}")))
}

fn report_json(meta: &RunMeta<'_>, out: &CommandOutput) -> Result<String> {
    let mut root = serde_json::Map::new();
    root.insert("schema_version".into(), json!(SCHEMA_VERSION));
    root.insert("command".into(), json!(meta.command));
    root.insert("jobs".into(), json!(meta.jobs));
    root.insert("seed".into(), json!(meta.seed));
    root.insert("expect_fails".into(), json!(out.expect_fails));
    root.insert("reports".into(), serde_json::to_value(&out.reports)?);
    if !out.rejected.is_empty() {
        root.insert("rejected".into(), serde_json::to_value(&out.rejected)?);
    }
    if !out.ledgers.is_empty() {
        root.insert("constants".into(), serde_json::to_value(&out.ledgers)?);
    }
    for (key, value) in &out.extras {
        root.insert(key.clone(), value.clone());
    }
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))?;
    text.push('\n');
    Ok(text)
}
