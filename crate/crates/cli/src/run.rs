//! Dispatch from a resolved scenario to the numerical modules.

use std::path::Path;
use std::time::Instant;

use hblab::{
    annihilator_check, bc_entropy, build_mu, contains_bc_subset_flag, corollary_classifier,
    cyclicity_indicator, division_diagnostic, gram_matrix, j_embedding_solve, kernel_gram,
    splitting_indicator, symbol_eval, BoundaryGrid, DecayFit, DiskSeries, MuMeasure, Prediction,
    Symbol,
};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::row;
use crate::scenario::{Params, Scenario};
use crate::table::Table;

pub const TOOL: &str = "hblab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of one scenario. The table goes to CSV, everything else to the
/// JSON side file.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub scenario: Scenario,
    #[serde(skip)]
    pub table: Table,
    pub columns: Vec<String>,
    pub row_count: usize,
    /// Log-linear fit of the distance sequence, for distance experiments.
    pub fit: Option<DecayFit>,
    /// One number per kind for cross-scenario comparison.
    pub metric: Option<Metric>,
    pub prediction: Option<Prediction>,
    pub summary: serde_json::Value,
    pub warnings: Vec<String>,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: &'static str,
    pub value: f64,
}

struct Outcome {
    table: Table,
    fit: Option<DecayFit>,
    metric: Option<Metric>,
    prediction: Option<Prediction>,
    summary: serde_json::Value,
    warnings: Vec<String>,
}

impl Outcome {
    fn new(table: Table, summary: serde_json::Value) -> Self {
        Self {
            table,
            fit: None,
            metric: None,
            prediction: None,
            summary,
            warnings: Vec::new(),
        }
    }

    fn with_metric(mut self, name: &'static str, value: f64) -> Self {
        self.metric = Some(Metric { name, value });
        self
    }
}

/// Resolves `s` and runs it.
pub fn run_scenario(s: Scenario) -> CliResult<Report> {
    let s = s.resolve()?;
    let start = Instant::now();
    let out = dispatch(&s)?;
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        columns: out.table.columns.clone(),
        row_count: out.table.rows.len(),
        table: out.table,
        fit: out.fit,
        metric: out.metric,
        prediction: out.prediction,
        summary: out.summary,
        warnings: out.warnings,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        scenario: s,
    })
}

fn mu_for(s: &Scenario) -> CliResult<MuMeasure> {
    let delta = Symbol::new(&s.symbol, s.grid)?.delta_weight()?;
    Ok(build_mu(&delta, s.alpha, s.max_degree())?)
}

fn distance_table(values: &[f64], requested: &[usize]) -> Table {
    let mut t = Table::new(&["n", "distance", "requested"]);
    for (n, d) in values.iter().enumerate() {
        t.push(row![n, *d, requested.contains(&n)]);
    }
    t
}

fn dispatch(s: &Scenario) -> CliResult<Outcome> {
    let n = s.max_degree();
    match &s.params {
        Params::Symbol(p) => {
            let sample = symbol_eval(&s.symbol, s.grid, p.radius)?;
            let mut t = Table::new(&["k", "theta", "b_re", "b_im", "b_abs", "delta"]);
            for (k, (b, d)) in sample
                .b
                .values()
                .iter()
                .zip(sample.delta.values())
                .enumerate()
            {
                t.push(row![k, sample.b.theta(k), b.re, b.im, b.norm(), *d]);
            }
            let delta2 = sample.delta.delta2();
            let mass = delta2.iter().sum::<f64>() / delta2.len() as f64;
            Ok(Outcome::new(
                t,
                json!({
                    "radius": sample.radius,
                    "extremality": sample.extremality,
                    "guarded_nodes": sample.guarded_nodes,
                    "delta2_mass": mass,
                    "carrier_measure": sample.delta.carrier().measure(),
                }),
            )
            .with_metric("delta2_mass", mass))
        }
        Params::Moments(_) => {
            let mu = mu_for(s)?;
            let g = gram_matrix(&mu, n)?;
            let beta = hblab::xalpha::disk_moments(n, s.alpha)?;
            let mut t = Table::new(&[
                "n",
                "beta",
                "scaled_beta",
                "gram_diagonal",
                "c_hat_re",
                "c_hat_im",
            ]);
            for (k, b) in beta.iter().enumerate() {
                let c = mu.c_hat(k as i64);
                let scaled = (k as f64 + 1.0).powf(s.alpha) * b;
                t.push(row![k, *b, scaled, g.entries()[(k, k)].re, c.re, c.im]);
            }
            let shift = if n >= 1 { Some(g.shift_norm()?) } else { None };
            Ok(Outcome::new(
                t,
                json!({
                    "boundary_mass": mu.boundary_mass(),
                    "min_eigenvalue": g.min_eigenvalue(),
                    "trace": g.trace(),
                    "shift_norm": shift,
                }),
            )
            .with_metric("min_eigenvalue", g.min_eigenvalue()))
        }
        Params::Splitting(p) => {
            let mu = mu_for(s)?;
            let seq = splitting_indicator(&mu, &p.target, n)?;
            let mut out = Outcome::new(
                distance_table(&seq.values, &s.degrees),
                serde_json::to_value(&seq)?,
            );
            out.fit = seq.fit;
            out.metric = Some(Metric {
                name: "last_distance",
                value: seq.last(),
            });
            Ok(out)
        }
        Params::Cyclicity(p) => {
            let mu = mu_for(s)?;
            let theta = p.theta.as_ref().expect("resolved");
            let rep = cyclicity_indicator(&mu, theta, n, &p.options)?;
            let mut out = Outcome::new(
                distance_table(&rep.distances.values, &s.degrees),
                serde_json::to_value(&rep)?,
            );
            if !rep.converged {
                out.warnings.push(format!(
                    "disk quadrature stopped with entry change {:e} at {} × {} nodes",
                    rep.last_change, rep.radial_nodes, rep.angular_nodes
                ));
            }
            out.fit = rep.distances.fit;
            out.metric = Some(Metric {
                name: "last_distance",
                value: rep.distances.last(),
            });
            Ok(out)
        }
        Params::KernelGram(p) => {
            let kg = kernel_gram(&s.symbol, &p.points, s.grid)?;
            let mut t = Table::new(&["i", "j", "re", "im"]);
            for (i, r) in kg.entries.iter().enumerate() {
                for (j, v) in r.iter().enumerate() {
                    t.push(row![i, j, v.re, v.im]);
                }
            }
            Ok(Outcome::new(
                t,
                json!({
                    "min_eigenvalue": kg.min_eigenvalue,
                    "trace": kg.trace,
                    "b_values": kg.b_values,
                }),
            )
            .with_metric("min_eigenvalue", kg.min_eigenvalue))
        }
        Params::Embed(p) => {
            let (pair, rep) = j_embedding_solve(&s.symbol, &p.target, s.grid, &p.options)?;
            let residuals: Vec<f64> = (0..=p.annihilator_degree)
                .map(|d| {
                    annihilator_check(&s.symbol, &pair, &DiskSeries::monomial(d)).map(|c| c.norm())
                })
                .collect::<hblab::Result<_>>()?;
            let mut t = Table::new(&["k", "theta", "g_re", "g_im"]);
            for (k, g) in pair.g.values().iter().enumerate() {
                t.push(row![k, pair.g.theta(k), g.re, g.im]);
            }
            let mut out = Outcome::new(
                t,
                json!({
                    "solve": rep,
                    "f_degree": pair.f.degree(),
                    "norm2": pair.norm2(),
                    "annihilator_residuals": residuals,
                }),
            )
            .with_metric("residual", rep.residual);
            out.warnings.extend(rep.warning.clone());
            Ok(out)
        }
        Params::Division(p) => {
            let theta = p.theta.as_ref().expect("resolved");
            let mut f = DiskSeries::new(p.f.clone())?.on_grid(s.grid)?.into_values();
            if p.multiply_by_theta {
                let inner = Symbol::new(&theta.inner_part(), s.grid)?.inner_boundary();
                f.iter_mut().zip(&inner.values).for_each(|(x, t)| *x *= t);
            }
            let rep = division_diagnostic(theta, &BoundaryGrid::new(f)?)?;
            let mut t = Table::new(&["grid", "value", "guarded_nodes"]);
            t.push(row![rep.grid, rep.value, rep.guarded_nodes]);
            Ok(Outcome::new(t, serde_json::to_value(&rep)?).with_metric("division", rep.value))
        }
        Params::Bcset(p) => {
            let set = p.set.as_ref().expect("resolved");
            let rep = bc_entropy(set);
            let mut t = Table::new(&["term", "partial_sum"]);
            for (k, v) in rep.partial_sums.iter().enumerate() {
                t.push(row![k + 1, *v]);
            }
            Ok(Outcome::new(
                t,
                json!({
                    "classification": rep.classification,
                    "measure": rep.measure,
                    "witness": rep.witness,
                    "null_bc": rep.is_null_bc(),
                    "contains_bc_subset": contains_bc_subset_flag(set),
                }),
            )
            .with_metric(
                "entropy_partial_sum",
                rep.partial_sums.last().copied().unwrap_or(0.0),
            ))
        }
        Params::Classify(_) => {
            let v = corollary_classifier(&s.symbol, s.alpha)?;
            let mut t = Table::new(&["check", "holds", "detail"]);
            for c in [
                &v.carrier_without_bc_subset,
                &v.nu_k_off_support,
                &v.density_recipe,
            ]
            .into_iter()
            .chain(&v.recipe_items)
            {
                t.push(row![c.name.as_str(), c.holds, c.detail.as_str()]);
            }
            let mut out = Outcome::new(t, serde_json::to_value(&v)?);
            out.prediction = Some(v.prediction);
            Ok(out)
        }
    }
}

/// Writes the CSV table and the JSON side file, creating parent directories.
pub fn write_report(report: &Report, csv: Option<&Path>, json: Option<&Path>) -> CliResult<()> {
    for path in [csv, json].into_iter().flatten() {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
    }
    if let Some(path) = csv {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        report.table.write_csv(std::io::BufWriter::new(file))?;
    }
    if let Some(path) = json {
        let mut body = serde_json::to_string_pretty(report)?;
        body.push('\n');
        std::fs::write(path, body).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}
