//! Symbols `b = c·B·S_ν·b₀` and their boundary data.

pub mod blaschke;
pub mod delta;
pub mod outer;
pub mod profile;
pub mod singular;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{check_grid_size, BoundaryGrid};
use crate::numeric::{grid_mean_real, turn, EPS_FLOOR};
use crate::sets::singular::{one_or_many, Atom, CantorPart, SingularMeasureSpec};

pub use blaschke::{blaschke_eval, BlaschkeZero};
pub use delta::{Delta2Steps, DeltaWeight};
pub use outer::{outer_from_modulus, OuterFactor, OuterGrid};
pub use profile::{OuterProfile, PreparedProfile, ValuedArc};
pub use singular::{singular_inner_eval, SingularFactor};

/// Constant factor `c`, `|c| ≤ 1`; a number or `[re, im]` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ScaleRaw", into = "ScaleRaw")]
pub struct Scale(pub Complex64);

impl Default for Scale {
    fn default() -> Self {
        Scale(Complex64::new(1.0, 0.0))
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum ScaleRaw {
    Real(f64),
    Complex([f64; 2]),
}

impl From<ScaleRaw> for Scale {
    fn from(r: ScaleRaw) -> Self {
        match r {
            ScaleRaw::Real(x) => Scale(Complex64::new(x, 0.0)),
            ScaleRaw::Complex([re, im]) => Scale(Complex64::new(re, im)),
        }
    }
}

impl From<Scale> for ScaleRaw {
    fn from(s: Scale) -> Self {
        if s.0.im == 0.0 {
            ScaleRaw::Real(s.0.re)
        } else {
            ScaleRaw::Complex([s.0.re, s.0.im])
        }
    }
}

/// Factored recipe for a symbol `b = c·B·S_ν·b₀`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    #[serde(default)]
    pub blaschke_zeros: Vec<BlaschkeZero>,
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default, deserialize_with = "one_or_many")]
    pub cantor: Vec<CantorPart>,
    #[serde(default)]
    pub outer: OuterProfile,
    #[serde(default)]
    pub scale: Scale,
}

impl SymbolSpec {
    pub fn outer(profile: OuterProfile) -> Self {
        Self {
            outer: profile,
            ..Self::default()
        }
    }

    pub fn singular_measure(&self) -> SingularMeasureSpec {
        SingularMeasureSpec {
            atoms: self.atoms.clone(),
            cantor: self.cantor.clone(),
        }
    }

    /// The inner part `B·S_ν` alone.
    pub fn inner_part(&self) -> SymbolSpec {
        SymbolSpec {
            blaschke_zeros: self.blaschke_zeros.clone(),
            atoms: self.atoms.clone(),
            cantor: self.cantor.clone(),
            outer: OuterProfile::default(),
            scale: Scale::default(),
        }
    }

    pub fn has_trivial_outer(&self) -> bool {
        matches!(self.outer, OuterProfile::Constant { value } if value == 1.0)
            && self.scale.0.norm() == 1.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale.0.norm() <= 1.0 + 1e-15) {
            return Err(Error::Domain(format!(
                "|scale| = {} exceeds 1",
                self.scale.0.norm()
            )));
        }
        self.singular_measure().validate()?;
        self.outer.validate()
    }
}

/// Symbol prepared for evaluation against an `M`-point boundary grid.
#[derive(Debug, Clone)]
pub struct Symbol {
    spec: SymbolSpec,
    m: usize,
    profile: PreparedProfile,
    outer: OuterFactor,
    singular: SingularFactor,
    omega: Vec<f64>,
}

/// Inner-factor boundary values with the guard-zone bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerBoundary {
    pub values: Vec<Complex64>,
    /// Nodes within one grid cell of the singular support, where the
    /// normalized radial proxy at `r = 1 - 10/M` is used.
    pub guarded: Vec<usize>,
}

impl Symbol {
    pub fn new(spec: &SymbolSpec, m: usize) -> Result<Self> {
        check_grid_size(m)?;
        spec.validate()?;
        let profile = PreparedProfile::new(&spec.outer)?;
        let outer = OuterFactor::new(&profile, m)?;
        let singular = SingularFactor::new(&spec.singular_measure())?;
        let omega = profile.on_grid(m);
        Ok(Self {
            spec: spec.clone(),
            m,
            profile,
            outer,
            singular,
            omega,
        })
    }

    pub fn spec(&self) -> &SymbolSpec {
        &self.spec
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    pub fn scale(&self) -> Complex64 {
        self.spec.scale.0
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn profile(&self) -> &PreparedProfile {
        &self.profile
    }

    pub fn singular(&self) -> &SingularFactor {
        &self.singular
    }

    /// Radius of the singular-factor boundary proxy.
    pub fn proxy_radius(&self) -> f64 {
        1.0 - 10.0 / self.m as f64
    }

    pub fn inner_at(&self, z: Complex64) -> Complex64 {
        blaschke::blaschke_at(&self.spec.blaschke_zeros, z) * self.singular.eval(z)
    }

    pub fn outer_at(&self, z: Complex64) -> Complex64 {
        self.outer.eval(z)
    }

    /// `b(z)` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!(
                "interior evaluation needs |z| < 1, got {z}"
            )));
        }
        Ok(self.scale() * self.inner_at(z) * self.outer_at(z))
    }

    pub fn inner_boundary(&self) -> InnerBoundary {
        let m = self.m;
        let r = self.proxy_radius();
        let mut guarded = Vec::new();
        let values = (0..m)
            .map(|k| {
                let t = k as f64 / m as f64;
                let b = blaschke::blaschke_at(&self.spec.blaschke_zeros, turn(t));
                if self.singular.is_trivial() {
                    return b;
                }
                let s = if self.singular.distance_to_support(t) < 1.0 / m as f64 {
                    guarded.push(k);
                    self.singular.radial_phase(t, r)
                } else {
                    self.singular
                        .boundary_value(t)
                        .expect("node outside the guard is off the support")
                };
                b * s
            })
            .collect();
        InnerBoundary { values, guarded }
    }

    pub fn outer_boundary(&self) -> Vec<Complex64> {
        self.outer.boundary(self.m, &self.omega)
    }

    /// `b` at the grid nodes together with the guarded node list.
    pub fn boundary(&self) -> (Vec<Complex64>, Vec<usize>) {
        let inner = self.inner_boundary();
        let outer = self.outer_boundary();
        let c = self.scale();
        let b = inner
            .values
            .iter()
            .zip(&outer)
            .map(|(i, o)| c * i * o)
            .collect();
        (b, inner.guarded)
    }

    pub fn delta_weight(&self) -> Result<DeltaWeight> {
        let c2 = self.scale().norm_sqr();
        let values: Vec<f64> = self
            .omega
            .iter()
            .map(|w| (1.0 - c2 * w * w).max(0.0).sqrt())
            .collect();
        let mut d = DeltaWeight::from_grid(values)?;
        if let Some((e, f)) = self.profile.declared_sets(self.scale().norm()) {
            d = d.with_declared(e, f);
        }
        if let Some((dflt, steps)) = self.profile.steps(self.m) {
            d = d.with_steps(Delta2Steps {
                base: 1.0 - c2 * dflt * dflt,
                pieces: steps
                    .into_iter()
                    .map(|(u, v)| (u, c2 * (dflt * dflt - v * v)))
                    .collect(),
            });
        }
        Ok(d)
    }

    /// Grid mean of `log(1 - |b|)` with `|b| = |c|ω`, floored at `EPS_FLOOR`.
    pub fn log_defect_integral(&self) -> f64 {
        let c = self.scale().norm();
        let logs: Vec<f64> = self
            .omega
            .iter()
            .map(|w| (1.0 - c * w).max(EPS_FLOOR).ln())
            .collect();
        grid_mean_real(&logs)
    }
}

/// Below this value of `∫ log(1 - |b|) dm` the symbol is flagged extreme.
pub const EXTREME_THRESHOLD: f64 = -50.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extremality {
    pub log_integral: f64,
    pub extreme: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSample {
    pub radius: f64,
    pub b: BoundaryGrid,
    pub delta: DeltaWeight,
    pub extremality: Extremality,
    pub guarded_nodes: usize,
}

pub fn symbol_eval(spec: &SymbolSpec, m: usize, r_eval: f64) -> Result<SymbolSample> {
    if !(r_eval > 0.0 && r_eval <= 1.0) {
        return Err(Error::Domain(format!(
            "evaluation radius {r_eval} outside (0, 1]"
        )));
    }
    let sym = Symbol::new(spec, m)?;
    let (values, guarded) = if r_eval == 1.0 {
        sym.boundary()
    } else {
        let v: Result<Vec<Complex64>> = (0..m)
            .map(|k| sym.eval(turn(k as f64 / m as f64) * r_eval))
            .collect();
        (v?, Vec::new())
    };
    if let Some((k, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| v.norm() > 1.0 + 1e-10)
    {
        return Err(Error::ConstructionInconsistency(format!(
            "|b| = {} > 1 at node {k}",
            v.norm()
        )));
    }
    let log_integral = sym.log_defect_integral();
    Ok(SymbolSample {
        radius: r_eval,
        b: BoundaryGrid::new(values)?,
        delta: sym.delta_weight()?,
        extremality: Extremality {
            log_integral,
            extreme: log_integral < EXTREME_THRESHOLD,
        },
        guarded_nodes: guarded.len(),
    })
}
