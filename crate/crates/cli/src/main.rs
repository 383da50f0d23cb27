use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hblab_cli::{
    run_scenario, run_suite, write_report, CliError, CliResult, Kind, Params, Scenario,
};

#[derive(Parser)]
#[command(
    name = "hblab",
    version,
    about = "Finite-degree experiments on de Branges-Rovnyak spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample b and Δ on the boundary grid (or a circle of radius < 1).
    Symbol(RunArgs),
    /// Disk moments and the moment Gram matrix of μ(b, α).
    Moments(RunArgs),
    /// Distances from a boundary-only target to the polynomials.
    Splitting(RunArgs),
    /// Distances from 1 to θ·Poly_n.
    Cyclicity(RunArgs),
    /// Gram matrix of the H(b) reproducing kernel.
    KernelGram(RunArgs),
    /// Least-squares image of a kernel or polynomial under J.
    Embed(RunArgs),
    /// Size of P₋(f θ̄), a grid test of f/θ ∈ H².
    Division(RunArgs),
    /// Beurling-Carleson entropy of a circle set.
    Bcset(RunArgs),
    /// Density checklist for the symbol.
    Classify(RunArgs),
    /// Run scenario files or directories and tabulate them.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario JSON file; the flags below override its fields.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Symbol as inline JSON or `@path`.
    #[arg(long)]
    symbol: Option<String>,
    /// Kind-specific parameters as inline JSON or `@path`.
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Degree(s) N; repeat or separate with commas.
    #[arg(long = "degree", value_delimiter = ',')]
    degrees: Vec<usize>,
    /// Boundary grid size M.
    #[arg(long)]
    grid: Option<usize>,
    /// Directory for `<name>.csv` and `<name>.json`; without it the CSV
    /// goes to stdout unless the scenario names output paths.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random kernel points.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Scenario files or directories of `*.json` scenarios.
    paths: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn inline_or_file(arg: &str) -> CliResult<(String, String)> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Ok((text, path.to_string()))
        }
        None => Ok((arg.to_string(), "command line".to_string())),
    }
}

fn build_scenario(kind: Kind, a: &RunArgs) -> CliResult<Scenario> {
    let mut s = match &a.scenario {
        Some(path) => {
            let s = Scenario::load(path)?;
            if s.kind != kind {
                return Err(CliError::Invalid(format!(
                    "{} is a `{}` scenario, not `{kind}`",
                    path.display(),
                    s.kind
                )));
            }
            s
        }
        None => Scenario::new(kind.as_str(), kind),
    };
    if let Some(arg) = &a.symbol {
        let (text, source) = inline_or_file(arg)?;
        s.symbol = Scenario::parse_symbol(&text, &source)?;
    }
    if let Some(arg) = &a.params {
        let (text, source) = inline_or_file(arg)?;
        s.params = Params::parse(kind, &text, &source)?;
    }
    if let Some(alpha) = a.alpha {
        s.alpha = alpha;
    }
    if !a.degrees.is_empty() {
        s.degrees = a.degrees.clone();
    }
    if let Some(grid) = a.grid {
        s.grid = grid;
    }
    if let Some(seed) = a.seed {
        match &mut s.params {
            Params::KernelGram(p) => {
                p.seed = seed;
                p.points.clear();
            }
            _ => {
                return Err(CliError::Invalid(
                    "--seed only applies to kernel-gram".into(),
                ))
            }
        }
    }
    if let Some(name) = &a.name {
        s.name = name.clone();
    }
    Ok(s)
}

fn run_one(kind: Kind, a: &RunArgs) -> CliResult<()> {
    let report = run_scenario(build_scenario(kind, a)?)?;
    let name = &report.scenario.name;
    let (csv, json) = match &a.out {
        Some(dir) => (
            Some(dir.join(format!("{name}.csv"))),
            Some(dir.join(format!("{name}.json"))),
        ),
        None => (
            report.scenario.outputs.csv.clone(),
            report.scenario.outputs.json.clone(),
        ),
    };
    if csv.is_none() {
        report.table.write_csv(std::io::stdout().lock())?;
    }
    write_report(&report, csv.as_deref(), json.as_deref())?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(fit) = &report.fit {
        eprintln!(
            "fitted rate {:.6} over degrees {}..={}",
            fit.rate, fit.first_degree, fit.last_degree
        );
    }
    for path in csv.iter().chain(&json) {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn run_many(a: &SuiteArgs) -> CliResult<i32> {
    let report = run_suite(&a.paths, a.out.as_deref())?;
    if a.out.is_none() {
        report.comparison.write_csv(std::io::stdout().lock())?;
    }
    eprintln!(
        "{} scenarios, {} failed",
        report.entries.len(),
        report.failed()
    );
    for e in report.entries.iter().filter(|e| e.error.is_some()) {
        eprintln!(
            "  {}: {}",
            e.source.display(),
            e.error.as_deref().unwrap_or_default()
        );
    }
    Ok(report.exit_code())
}

impl Command {
    fn single(&self) -> Option<(Kind, &RunArgs)> {
        Some(match self {
            Command::Symbol(a) => (Kind::Symbol, a),
            Command::Moments(a) => (Kind::Moments, a),
            Command::Splitting(a) => (Kind::Splitting, a),
            Command::Cyclicity(a) => (Kind::Cyclicity, a),
            Command::KernelGram(a) => (Kind::KernelGram, a),
            Command::Embed(a) => (Kind::Embed, a),
            Command::Division(a) => (Kind::Division, a),
            Command::Bcset(a) => (Kind::Bcset, a),
            Command::Classify(a) => (Kind::Classify, a),
            Command::Suite(_) => return None,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.command, cli.command.single()) {
        (_, Some((kind, args))) => run_one(kind, args).map(|()| 0),
        (Command::Suite(a), None) => run_many(a),
        _ => unreachable!("every command is single or suite"),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
