//! Singular inner functions `S_ν = exp(-∫ (ζ+z)/(ζ-z) dν)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::turn;
use crate::sets::singular::{SingularMeasureSpec, SupportSet};

/// Point-mass discretization of `ν`, ready for evaluation.
#[derive(Debug, Clone)]
pub struct SingularFactor {
    nodes: Vec<(Complex64, f64)>,
    support: SupportSet,
}

/// Distance (turns) below which a boundary point counts as on the support.
const ON_SUPPORT: f64 = 1e-12;

impl SingularFactor {
    pub fn new(nu: &SingularMeasureSpec) -> Result<Self> {
        nu.validate()?;
        Ok(Self {
            nodes: nu
                .quadrature_atoms()
                .iter()
                .map(|a| (turn(a.theta), a.mass))
                .collect(),
            support: nu.support(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of point masses in the discretization.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    /// `∫ (ζ+z)/(ζ-z) dν`.
    pub fn herglotz(&self, z: Complex64) -> Complex64 {
        self.nodes
            .iter()
            .map(|&(zeta, m)| m * (zeta + z) / (zeta - z))
            .sum()
    }

    /// `S_ν(z)` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.is_trivial() {
            return Complex64::new(1.0, 0.0);
        }
        (-self.herglotz(z)).exp()
    }

    /// Unimodular boundary value `exp(-i Im H(ζ))` off the support.
    pub fn boundary_value(&self, t: f64) -> Result<Complex64> {
        if self.support.distance(t) < ON_SUPPORT {
            return Err(Error::Singularity(format!(
                "boundary point t = {t} lies on the singular support"
            )));
        }
        Ok(Complex64::from_polar(1.0, -self.herglotz(turn(t)).im))
    }

    /// Normalized radial proxy `S(rζ)/|S(rζ)| = exp(-i Im H(rζ))`, safe from underflow.
    pub fn radial_phase(&self, t: f64, r: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.herglotz(turn(t) * r).im)
    }

    pub fn distance_to_support(&self, t: f64) -> f64 {
        self.support.distance(t)
    }
}

/// `S_ν` at points of the disk. Points on the circle are allowed off the
/// support and give unimodular values.
pub fn singular_inner_eval(
    nu: &SingularMeasureSpec,
    points: &[Complex64],
) -> Result<Vec<Complex64>> {
    let s = SingularFactor::new(nu)?;
    points
        .iter()
        .map(|&z| {
            let r = z.norm();
            if r > 1.0 + 1e-12 {
                Err(Error::Domain(format!(
                    "evaluation point {z} outside the closed disk"
                )))
            } else if r >= 1.0 - 1e-15 {
                s.boundary_value(z.arg() / std::f64::consts::TAU)
            } else {
                Ok(s.eval(z))
            }
        })
        .collect()
}
