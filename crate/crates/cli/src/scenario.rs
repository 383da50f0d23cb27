//! Scenario documents: parsing with field paths, defaults and resolution.

use std::fmt;
use std::path::{Path, PathBuf};

use hblab::{
    BoundaryTarget, CircleSet, Complex64, CyclicityOptions, JSolveOptions, JTarget, Symbol,
    SymbolSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Symbol,
    Moments,
    Splitting,
    Cyclicity,
    KernelGram,
    Embed,
    Division,
    Bcset,
    Classify,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Symbol,
        Kind::Moments,
        Kind::Splitting,
        Kind::Cyclicity,
        Kind::KernelGram,
        Kind::Embed,
        Kind::Division,
        Kind::Bcset,
        Kind::Classify,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Symbol => "symbol",
            Kind::Moments => "moments",
            Kind::Splitting => "splitting",
            Kind::Cyclicity => "cyclicity",
            Kind::KernelGram => "kernel-gram",
            Kind::Embed => "embed",
            Kind::Division => "division",
            Kind::Bcset => "bcset",
            Kind::Classify => "classify",
        }
    }

    /// Kinds that build the moment Gram matrix and so need `4N + 4 ≤ M`.
    pub fn uses_degrees(self) -> bool {
        matches!(self, Kind::Moments | Kind::Splitting | Kind::Cyclicity)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SymbolParams {
    /// Sampling radius; 1 samples boundary values.
    pub radius: f64,
}

impl Default for SymbolParams {
    fn default() -> Self {
        Self { radius: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MomentsParams {}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplittingParams {
    pub target: BoundaryTarget,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CyclicityParams {
    /// Inner function to test; defaults to the inner part of the symbol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<SymbolSpec>,
    pub options: CyclicityOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelGramParams {
    /// Explicit points; when empty, `count` points are drawn from `seed`.
    pub points: Vec<Complex64>,
    pub count: usize,
    pub max_radius: f64,
    pub seed: u64,
}

impl Default for KernelGramParams {
    fn default() -> Self {
        Self {
            points: Vec::new(),
            count: 6,
            max_radius: 0.9,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmbedParams {
    pub target: JTarget,
    pub options: JSolveOptions,
    /// Monomials `z^0..=z^d` used for the annihilator residuals.
    pub annihilator_degree: usize,
}

impl Default for EmbedParams {
    fn default() -> Self {
        Self {
            target: JTarget::Kernel {
                lambda: Complex64::new(0.0, 0.0),
            },
            options: JSolveOptions::default(),
            annihilator_degree: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DivisionParams {
    /// Defaults to the inner part of the symbol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<SymbolSpec>,
    /// Taylor coefficients of `f`.
    pub f: Vec<Complex64>,
    /// Replace `f` by `θ·f` before dividing.
    pub multiply_by_theta: bool,
}

impl Default for DivisionParams {
    fn default() -> Self {
        Self {
            theta: None,
            f: vec![Complex64::new(1.0, 0.0)],
            multiply_by_theta: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BcsetParams {
    /// Defaults to the carrier of `Δ` for the symbol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<CircleSet>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyParams {}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Symbol(SymbolParams),
    Moments(MomentsParams),
    Splitting(SplittingParams),
    Cyclicity(CyclicityParams),
    KernelGram(KernelGramParams),
    Embed(EmbedParams),
    Division(DivisionParams),
    Bcset(BcsetParams),
    Classify(ClassifyParams),
}

impl Params {
    pub fn default_for(kind: Kind) -> Self {
        match kind {
            Kind::Symbol => Params::Symbol(Default::default()),
            Kind::Moments => Params::Moments(Default::default()),
            Kind::Splitting => Params::Splitting(Default::default()),
            Kind::Cyclicity => Params::Cyclicity(Default::default()),
            Kind::KernelGram => Params::KernelGram(Default::default()),
            Kind::Embed => Params::Embed(Default::default()),
            Kind::Division => Params::Division(Default::default()),
            Kind::Bcset => Params::Bcset(Default::default()),
            Kind::Classify => Params::Classify(Default::default()),
        }
    }

    /// Parses a bare `params` object for `kind`.
    pub fn parse(kind: Kind, text: &str, source_name: &str) -> CliResult<Self> {
        Ok(match kind {
            Kind::Symbol => Params::Symbol(from_str(text, source_name)?),
            Kind::Moments => Params::Moments(from_str(text, source_name)?),
            Kind::Splitting => Params::Splitting(from_str(text, source_name)?),
            Kind::Cyclicity => Params::Cyclicity(from_str(text, source_name)?),
            Kind::KernelGram => Params::KernelGram(from_str(text, source_name)?),
            Kind::Embed => Params::Embed(from_str(text, source_name)?),
            Kind::Division => Params::Division(from_str(text, source_name)?),
            Kind::Bcset => Params::Bcset(from_str(text, source_name)?),
            Kind::Classify => Params::Classify(from_str(text, source_name)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Outputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

pub const DEFAULT_ALPHA: f64 = 1.0;
pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_DEGREE: usize = 20;

/// A single experiment. After [`Scenario::resolve`] every default is explicit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    pub symbol: SymbolSpec,
    /// Path of a JSON symbol file, relative to the scenario's directory.
    /// Loaded into `symbol` on resolution.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_file: Option<PathBuf>,
    pub alpha: f64,
    pub degrees: Vec<usize>,
    pub grid: usize,
    pub params: Params,
    pub outputs: Outputs,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

fn default_degrees() -> Vec<usize> {
    vec![DEFAULT_DEGREE]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document<P> {
    name: String,
    kind: Kind,
    #[serde(default)]
    symbol: Option<SymbolSpec>,
    #[serde(default)]
    symbol_file: Option<PathBuf>,
    #[serde(default = "default_alpha")]
    alpha: f64,
    #[serde(default = "default_degrees")]
    degrees: Vec<usize>,
    #[serde(default = "default_grid")]
    grid: usize,
    #[serde(default)]
    params: P,
    #[serde(default)]
    outputs: Outputs,
}

#[derive(Deserialize)]
struct KindProbe {
    kind: Kind,
}

fn from_str<T: DeserializeOwned>(text: &str, source_name: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            source_name: source_name.to_string(),
            line: inner.line(),
            column: inner.column(),
            path,
            message: inner.to_string(),
        }
    })?;
    Ok(value)
}

fn document<P: DeserializeOwned + Default>(
    text: &str,
    source_name: &str,
    wrap: fn(P) -> Params,
) -> CliResult<Scenario> {
    let d: Document<P> = from_str(text, source_name)?;
    if d.symbol.is_some() && d.symbol_file.is_some() {
        return Err(CliError::Invalid(
            "give either `symbol` or `symbol_file`, not both".into(),
        ));
    }
    Ok(Scenario {
        name: d.name,
        kind: d.kind,
        symbol: d.symbol.unwrap_or_default(),
        symbol_file: d.symbol_file,
        alpha: d.alpha,
        degrees: d.degrees,
        grid: d.grid,
        params: wrap(d.params),
        outputs: d.outputs,
    })
}

impl Scenario {
    /// Parses a scenario document. Errors carry line, column and field path.
    pub fn parse(text: &str, source_name: &str) -> CliResult<Self> {
        let probe: KindProbe = from_str(text, source_name)?;
        match probe.kind {
            Kind::Symbol => document(text, source_name, Params::Symbol),
            Kind::Moments => document(text, source_name, Params::Moments),
            Kind::Splitting => document(text, source_name, Params::Splitting),
            Kind::Cyclicity => document(text, source_name, Params::Cyclicity),
            Kind::KernelGram => document(text, source_name, Params::KernelGram),
            Kind::Embed => document(text, source_name, Params::Embed),
            Kind::Division => document(text, source_name, Params::Division),
            Kind::Bcset => document(text, source_name, Params::Bcset),
            Kind::Classify => document(text, source_name, Params::Classify),
        }
    }

    /// Reads and parses a scenario file, loading `symbol_file` relative to it.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Invalid(format!("cannot read scenario {}: {e}", path.display()))
        })?;
        let mut s = Self::parse(&text, &path.display().to_string())?;
        if let Some(rel) = s.symbol_file.take() {
            let full = path.parent().unwrap_or(Path::new(".")).join(&rel);
            let body = std::fs::read_to_string(&full)
                .map_err(|e| CliError::Invalid(format!("symbol_file {}: {e}", full.display())))?;
            s.symbol = from_str(&body, &full.display().to_string())?;
        }
        Ok(s)
    }

    /// Parses a bare symbol document.
    pub fn parse_symbol(text: &str, source_name: &str) -> CliResult<SymbolSpec> {
        from_str(text, source_name)
    }

    /// Scenario of `kind` with every field at its default.
    pub fn new(name: &str, kind: Kind) -> Self {
        Self {
            name: name.to_string(),
            kind,
            symbol: SymbolSpec::default(),
            symbol_file: None,
            alpha: DEFAULT_ALPHA,
            degrees: default_degrees(),
            grid: DEFAULT_GRID,
            params: Params::default_for(kind),
            outputs: Outputs::default(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Validates the scenario and materializes every implicit default, so
    /// the result is self-describing.
    pub fn resolve(mut self) -> CliResult<Self> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
        {
            return Err(CliError::Invalid(format!(
                "scenario name {:?} must be non-empty ASCII letters, digits, '-', '_' or '.'",
                self.name
            )));
        }
        if let Some(f) = &self.symbol_file {
            return Err(CliError::Invalid(format!(
                "symbol_file {} was not loaded; use Scenario::load",
                f.display()
            )));
        }
        hblab::Alpha::positive(self.alpha)?;
        hblab::grid::check_grid_size(self.grid)?;
        if self.degrees.is_empty() {
            return Err(CliError::Invalid(
                "`degrees` must list at least one degree".into(),
            ));
        }
        if self.kind.uses_degrees() {
            let n = self.max_degree();
            let required = hblab::moments::required_grid(n);
            if required > self.grid {
                return Err(hblab::Error::Undersampled {
                    degree: n,
                    required,
                    got: self.grid,
                }
                .into());
            }
        }
        self.symbol.validate()?;
        let inner = self.symbol.inner_part();
        match &mut self.params {
            Params::Symbol(p) => {
                if !(p.radius > 0.0 && p.radius <= 1.0) {
                    return Err(CliError::Invalid(format!(
                        "radius {} outside (0, 1]",
                        p.radius
                    )));
                }
            }
            Params::Cyclicity(p) => {
                let theta = p.theta.get_or_insert(inner);
                theta.validate()?;
                if !theta.has_trivial_outer() {
                    return Err(CliError::Invalid(
                        "cyclicity `theta` must be inner (no outer factor or scale)".into(),
                    ));
                }
            }
            Params::Division(p) => {
                p.theta.get_or_insert(inner).validate()?;
                if p.f.is_empty() {
                    return Err(CliError::Invalid(
                        "division `f` needs at least one coefficient".into(),
                    ));
                }
            }
            Params::KernelGram(p) => {
                if p.points.is_empty() {
                    if p.count == 0 || !(p.max_radius > 0.0 && p.max_radius < 1.0) {
                        return Err(CliError::Invalid(format!(
                            "need count ≥ 1 and max_radius in (0, 1), got {} and {}",
                            p.count, p.max_radius
                        )));
                    }
                    p.points = random_points(p.count, p.max_radius, p.seed);
                }
                p.count = p.points.len();
            }
            Params::Bcset(p) => {
                if p.set.is_none() {
                    let delta = Symbol::new(&self.symbol, self.grid)?.delta_weight()?;
                    p.set = Some(delta.carrier().clone());
                }
            }
            Params::Moments(_) | Params::Splitting(_) | Params::Embed(_) | Params::Classify(_) => {}
        }
        Ok(self)
    }
}

/// `count` points uniform in the disk of radius `max_radius`.
pub fn random_points(count: usize, max_radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = max_radius * rng.random::<f64>().sqrt();
            Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
        })
        .collect()
}
