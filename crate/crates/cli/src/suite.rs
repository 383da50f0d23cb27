//! Running many scenarios and tabulating them side by side.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use hblab::Prediction;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::row;
use crate::run::{run_scenario, write_report, Metric, Report, TOOL, VERSION};
use crate::scenario::{Kind, Scenario};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Ok,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub source: PathBuf,
    pub name: Option<String>,
    pub kind: Option<Kind>,
    pub status: EntryStatus,
    /// Exit code this scenario alone would have produced.
    pub exit_code: i32,
    pub error: Option<String>,
    pub alpha: Option<f64>,
    pub degree: Option<usize>,
    pub grid: Option<usize>,
    pub fitted_rate: Option<f64>,
    pub metric: Option<Metric>,
    pub prediction: Option<Prediction>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub report: Option<Report>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub entries: Vec<SuiteEntry>,
    #[serde(skip)]
    pub comparison: Table,
    pub wall_time_seconds: f64,
}

impl SuiteReport {
    /// 0 when every scenario succeeded, 1 if any failed internally, else 2.
    pub fn exit_code(&self) -> i32 {
        let codes = self.entries.iter().map(|e| e.exit_code);
        if codes.clone().any(|c| c == 1) {
            1
        } else {
            codes.max().unwrap_or(0)
        }
    }

    pub fn failed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == EntryStatus::Failed)
            .count()
    }
}

/// Expands directories to their `*.json` files in name order; other paths
/// are kept as given so that missing files fail as suite entries.
pub fn scenario_files(paths: &[PathBuf]) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = match std::fs::read_dir(p) {
                Ok(rd) => rd
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|f| f.is_file() && f.extension().is_some_and(|x| x == "json"))
                    .collect(),
                Err(_) => vec![p.clone()],
            };
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    out
}

fn failed(source: &Path, scenario: Option<&Scenario>, err: &CliError) -> SuiteEntry {
    SuiteEntry {
        source: source.to_path_buf(),
        name: scenario.map(|s| s.name.clone()),
        kind: scenario.map(|s| s.kind),
        status: EntryStatus::Failed,
        exit_code: err.exit_code(),
        error: Some(err.to_string()),
        alpha: scenario.map(|s| s.alpha),
        degree: scenario.map(|s| s.max_degree()),
        grid: scenario.map(|s| s.grid),
        fitted_rate: None,
        metric: None,
        prediction: None,
        warnings: Vec::new(),
        report: None,
    }
}

fn succeeded(source: &Path, report: Report) -> SuiteEntry {
    let s = &report.scenario;
    SuiteEntry {
        source: source.to_path_buf(),
        name: Some(s.name.clone()),
        kind: Some(s.kind),
        status: EntryStatus::Ok,
        exit_code: 0,
        error: None,
        alpha: Some(s.alpha),
        degree: Some(s.max_degree()),
        grid: Some(s.grid),
        fitted_rate: report.fit.as_ref().map(|f| f.rate),
        metric: report.metric.clone(),
        prediction: report.prediction,
        warnings: report.warnings.clone(),
        report: Some(report),
    }
}

fn prediction_name(p: Prediction) -> String {
    serde_json::to_value(p)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn comparison_table(entries: &[SuiteEntry]) -> Table {
    let mut t = Table::new(&[
        "scenario",
        "kind",
        "status",
        "alpha",
        "degree",
        "grid",
        "fitted_rate",
        "metric",
        "value",
        "prediction",
        "error",
    ]);
    for e in entries {
        let name = e
            .name
            .clone()
            .unwrap_or_else(|| e.source.display().to_string());
        t.push(row![
            name,
            e.kind.map(|k| k.as_str()),
            if e.status == EntryStatus::Ok {
                "ok"
            } else {
                "failed"
            },
            e.alpha,
            e.degree,
            e.grid,
            e.fitted_rate,
            e.metric.as_ref().map(|m| m.name),
            e.metric.as_ref().map(|m| m.value),
            e.prediction.map(prediction_name),
            e.error.clone(),
        ]);
    }
    t
}

/// Runs every scenario (in parallel), writes per-scenario outputs plus
/// `comparison.csv` and `suite.json` under `out_dir`, and keeps going past
/// failures. Entry order follows `paths` after directory expansion.
pub fn run_suite(paths: &[PathBuf], out_dir: Option<&Path>) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let files = scenario_files(paths);
    let parsed: Vec<CliResult<Scenario>> = files.par_iter().map(|f| Scenario::load(f)).collect();

    let mut seen = HashSet::new();
    let parsed: Vec<CliResult<Scenario>> = parsed
        .into_iter()
        .map(|r| match r {
            Ok(s) if !seen.insert(s.name.clone()) => Err(CliError::Invalid(format!(
                "duplicate scenario name {:?}",
                s.name
            ))),
            other => other,
        })
        .collect();

    let entries: Vec<SuiteEntry> = files
        .par_iter()
        .zip(parsed)
        .map(|(file, parsed)| {
            let scenario = match parsed {
                Ok(s) => s,
                Err(e) => return failed(file, None, &e),
            };
            let report = match run_scenario(scenario.clone()) {
                Ok(r) => r,
                Err(e) => return failed(file, Some(&scenario), &e),
            };
            if let Some(dir) = out_dir {
                let csv = dir.join(format!("{}.csv", scenario.name));
                let json = dir.join(format!("{}.json", scenario.name));
                if let Err(e) = write_report(&report, Some(&csv), Some(&json)) {
                    return failed(file, Some(&scenario), &e);
                }
            }
            succeeded(file, report)
        })
        .collect();

    let report = SuiteReport {
        tool: TOOL,
        version: VERSION,
        comparison: comparison_table(&entries),
        entries,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join("comparison.csv");
        let file = std::fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        report.comparison.write_csv(std::io::BufWriter::new(file))?;
        let path = dir.join("suite.json");
        let mut body = serde_json::to_string_pretty(&report)?;
        body.push('\n');
        std::fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(report)
}
