//! Finite singular measures on the circle: point masses plus Cantor measures
//! that split mass evenly at every stage.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::arcs::{turn_distance, Arc, ArcUnion};
use crate::sets::cantor::{CantorSpec, Schedule};
use crate::sets::entropy::{bc_entropy, EntropyClass};
use crate::sets::CircleSet;

/// Stage depth used to discretize Cantor measures into point masses.
pub const QUADRATURE_DEPTH: usize = 14;

/// Point mass `mass · δ_{e^{2πi theta}}`, serialized as `[theta, mass]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Atom {
    pub theta: f64,
    pub mass: f64,
}

impl From<[f64; 2]> for Atom {
    fn from(v: [f64; 2]) -> Self {
        Atom {
            theta: v[0],
            mass: v[1],
        }
    }
}

impl From<Atom> for [f64; 2] {
    fn from(a: Atom) -> Self {
        [a.theta, a.mass]
    }
}

/// Cantor measure of total `mass` on `set`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CantorPartRaw", into = "CantorPartRaw")]
pub struct CantorPart {
    pub set: CantorSpec,
    pub mass: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CantorPartRaw {
    #[serde(default = "Arc::full")]
    base_arc: Arc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schedule: Option<Schedule>,
    depth: usize,
    mass: f64,
}

impl TryFrom<CantorPartRaw> for CantorPart {
    type Error = Error;
    fn try_from(raw: CantorPartRaw) -> Result<Self> {
        let schedule = match (raw.ratio, raw.schedule) {
            (Some(ratio), None) => Schedule::Fixed { ratio },
            (None, Some(s)) => s,
            _ => {
                return Err(Error::Domain(
                    "Cantor part needs exactly one of `ratio`, `schedule`".into(),
                ))
            }
        };
        Ok(CantorPart {
            set: CantorSpec::new(raw.base_arc, schedule, raw.depth)?,
            mass: raw.mass,
        })
    }
}

impl From<CantorPart> for CantorPartRaw {
    fn from(p: CantorPart) -> Self {
        let (ratio, schedule) = match p.set.schedule().clone() {
            Schedule::Fixed { ratio } => (Some(ratio), None),
            s => (None, Some(s)),
        };
        CantorPartRaw {
            base_arc: p.set.base(),
            ratio,
            schedule,
            depth: p.set.depth(),
            mass: p.mass,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(CantorPart),
    Many(Vec<CantorPart>),
}

pub(crate) fn one_or_many<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<CantorPart>, D::Error> {
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(p) => vec![p],
        OneOrMany::Many(v) => v,
    })
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SingularMeasureSpec {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default, deserialize_with = "one_or_many")]
    pub cantor: Vec<CantorPart>,
}

impl SingularMeasureSpec {
    pub fn atom(theta: f64, mass: f64) -> Self {
        Self {
            atoms: vec![Atom { theta, mass }],
            cantor: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.cantor.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        const ATOM_TOL: f64 = 1e-12;
        for a in &self.atoms {
            if !a.theta.is_finite() || !a.mass.is_finite() || a.mass <= 0.0 {
                return Err(Error::Domain(format!(
                    "atom [{}, {}] needs finite position and positive mass",
                    a.theta, a.mass
                )));
            }
        }
        let mut pos: Vec<f64> = self.atoms.iter().map(|a| a.theta.rem_euclid(1.0)).collect();
        pos.sort_by(f64::total_cmp);
        let wrap = pos.len() > 1 && pos[0] + 1.0 - pos[pos.len() - 1] < ATOM_TOL;
        if wrap || pos.windows(2).any(|w| w[1] - w[0] < ATOM_TOL) {
            return Err(Error::Domain("atom positions must be distinct".into()));
        }
        for p in &self.cantor {
            if !p.mass.is_finite() || p.mass <= 0.0 {
                return Err(Error::Domain(format!(
                    "Cantor part mass must be positive, got {}",
                    p.mass
                )));
            }
            let m = p.set.measure();
            if m > 0.0 {
                return Err(Error::Domain(format!(
                    "Cantor support has Lebesgue measure {m:e}; a singular measure needs a null support"
                )));
            }
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>()
            + self.cantor.iter().map(|p| p.mass).sum::<f64>()
    }

    /// Point-mass discretization: atoms as given, Cantor parts as equal masses
    /// at the stage-arc midpoints.
    pub fn quadrature_atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = self.atoms.clone();
        for p in &self.cantor {
            let depth = p.set.depth().min(QUADRATURE_DEPTH);
            let arcs = p.set.stage_arcs(depth).expect("depth within cap");
            let w = p.mass / arcs.len() as f64;
            out.extend(arcs.iter().map(|a| Atom {
                theta: a.midpoint(),
                mass: w,
            }));
        }
        out
    }

    /// Closed sets carrying the measure, at quadrature depth for Cantor parts.
    pub fn support(&self) -> SupportSet {
        let arcs: Vec<Arc> = self
            .cantor
            .iter()
            .flat_map(|p| {
                p.set
                    .stage_arcs(p.set.depth().min(QUADRATURE_DEPTH))
                    .expect("depth within cap")
            })
            .collect();
        SupportSet {
            points: self.atoms.iter().map(|a| a.theta.rem_euclid(1.0)).collect(),
            arcs: ArcUnion::new(&arcs),
        }
    }
}

/// Support of a singular measure: isolated points plus a Cantor stage cover.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSet {
    pub points: Vec<f64>,
    pub arcs: ArcUnion,
}

impl SupportSet {
    /// Circular distance in turns (0.5 for an empty support).
    pub fn distance(&self, t: f64) -> f64 {
        let d_pts = self
            .points
            .iter()
            .map(|&p| turn_distance(p, t))
            .fold(0.5, f64::min);
        if self.arcs.is_empty() {
            d_pts
        } else {
            d_pts.min(self.arcs.distance(t))
        }
    }
}

/// `ν = ν_C + ν_K` within the supported family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub nu_c: SingularMeasureSpec,
    /// Parts whose support is a null set of divergent entropy. Candidacy is
    /// relative to the Cantor family: no finite test certifies it.
    pub nu_k_candidate: SingularMeasureSpec,
    pub total_mass: f64,
    pub nu_c_mass: f64,
    pub nu_k_mass: f64,
    /// Exact rational masses of the `f64` inputs.
    pub exact_total: String,
    pub exact_nu_c: String,
    pub exact_nu_k: String,
    pub conserved: bool,
    pub notes: Vec<String>,
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

pub fn decompose_measure(nu: &SingularMeasureSpec) -> Result<Decomposition> {
    nu.validate()?;
    let mut c = SingularMeasureSpec {
        atoms: nu.atoms.clone(),
        cantor: Vec::new(),
    };
    let mut k = SingularMeasureSpec::default();
    let mut notes = Vec::new();
    if !nu.atoms.is_empty() {
        notes.push(format!(
            "{} atoms assigned to nu_C (points are null Beurling-Carleson sets)",
            nu.atoms.len()
        ));
    }
    for (i, p) in nu.cantor.iter().enumerate() {
        let report = bc_entropy(&CircleSet::Cantor(p.set.clone()));
        if report.is_null_bc() {
            notes.push(format!(
                "Cantor part {i}: null support with finite entropy, assigned to nu_C"
            ));
            c.cantor.push(p.clone());
        } else {
            debug_assert_eq!(report.classification, EntropyClass::Divergent);
            notes.push(format!(
                "Cantor part {i}: null support with divergent entropy, nu_K candidate within the Cantor family"
            ));
            k.cantor.push(p.clone());
        }
    }
    let sum_exact = |m: &SingularMeasureSpec| -> BigRational {
        m.atoms
            .iter()
            .map(|a| exact(a.mass))
            .chain(m.cantor.iter().map(|p| exact(p.mass)))
            .fold(BigRational::zero(), |acc, x| acc + x)
    };
    let total = sum_exact(nu);
    let ec = sum_exact(&c);
    let ek = sum_exact(&k);
    let conserved = &ec + &ek == total;
    Ok(Decomposition {
        total_mass: nu.total_mass(),
        nu_c_mass: c.total_mass(),
        nu_k_mass: k.total_mass(),
        exact_total: total.to_string(),
        exact_nu_c: ec.to_string(),
        exact_nu_k: ek.to_string(),
        conserved,
        nu_c: c,
        nu_k_candidate: k,
        notes,
    })
}
