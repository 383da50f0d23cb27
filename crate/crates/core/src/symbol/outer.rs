//! Outer functions `b₀ = exp(∫ (ζ+z)/(ζ-z) log ω dm)` from a boundary modulus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::grid::{check_grid_size, BoundaryGrid, DiskSeries};
use crate::numeric::{real_fourier_coefficients, synthesize, turn, EPS_FLOOR};
use crate::sets::arcs::Arc;
use crate::symbol::profile::{OuterProfile, PreparedProfile};

const MODULUS_TOL: f64 = 1e-12;

/// Grid-sense outer function: the Herglotz integral by the trapezoid rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OuterGrid {
    /// Coefficients `h_0..h_{M/2}` of `log b₀ = Σ h_n z^n`.
    pub herglotz: Vec<Complex64>,
    /// Taylor coefficients `0..M/2-1` of `b₀`.
    pub series: DiskSeries,
    /// `b₀` at the grid nodes.
    pub boundary: BoundaryGrid,
}

impl OuterGrid {
    pub fn from_samples(omega: &[f64]) -> Result<Self> {
        let m = omega.len();
        check_grid_size(m)?;
        if let Some(v) = omega
            .iter()
            .find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0 + MODULUS_TOL)
        {
            return Err(Error::Domain(format!("modulus sample {v} outside [0, 1]")));
        }
        if omega.iter().all(|&v| v <= EPS_FLOOR) {
            return Err(Error::DegenerateSymbol(
                "log ω integrates to -∞ over the whole circle; b₀ ≡ 0 is not outer".into(),
            ));
        }
        let logs: Vec<f64> = omega.iter().map(|&v| v.max(EPS_FLOOR).ln()).collect();
        let u = real_fourier_coefficients(&logs);
        let half = m / 2;
        let mut h = Vec::with_capacity(half + 1);
        h.push(Complex64::new(u[0].re, 0.0));
        h.extend(u[1..half].iter().map(|c| 2.0 * c));
        h.push(Complex64::new(u[half].re, 0.0));

        let mut bins = vec![Complex64::new(0.0, 0.0); m];
        bins[..=half].copy_from_slice(&h);
        let boundary: Vec<Complex64> = synthesize(&bins).into_iter().map(|w| w.exp()).collect();
        let coeffs = crate::numeric::fourier_coefficients(&boundary);
        Ok(Self {
            herglotz: h,
            series: DiskSeries::new(coeffs[..half].to_vec())?,
            boundary: BoundaryGrid::new(boundary)?,
        })
    }

    /// `exp(Σ h_n z^n)` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.herglotz
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
            .exp()
    }
}

pub fn outer_from_modulus(profile: &OuterProfile, m: usize) -> Result<OuterGrid> {
    check_grid_size(m)?;
    let p = PreparedProfile::new(profile)?;
    OuterGrid::from_samples(&p.on_grid(m))
}

/// `∫_arc (ζ+z)/(ζ-z) dm(ζ)` for `|z| < 1`.
pub fn arc_herglotz(arc: &Arc, z: Complex64) -> Complex64 {
    if arc.len() >= 1.0 {
        return Complex64::new(1.0, 0.0);
    }
    let za = turn(arc.start());
    let zb = turn(arc.end());
    let ratio = (zb - z) / (za - z);
    let darg = ratio.arg().rem_euclid(TAU);
    Complex64::new(darg / PI - arc.len(), -ratio.norm().ln() / PI)
}

/// Outer factor with the most accurate evaluator available for its profile.
#[derive(Debug, Clone)]
pub enum OuterFactor {
    Constant(f64),
    /// `log ω = log d + Σ c_j 1_{A_j}`; evaluated by exact arc integrals.
    Steps {
        log_default: f64,
        pieces: Vec<(Arc, f64)>,
    },
    /// `(1 + z)/2`.
    OnePlusZHalf,
    Grid(OuterGrid),
}

fn safe_ln(v: f64) -> f64 {
    v.max(EPS_FLOOR).ln()
}

impl OuterFactor {
    pub fn new(profile: &PreparedProfile, m: usize) -> Result<Self> {
        check_grid_size(m)?;
        match profile.profile() {
            OuterProfile::AbsCosHalf => return Ok(OuterFactor::OnePlusZHalf),
            OuterProfile::Constant { value } => {
                if *value <= EPS_FLOOR {
                    return Err(Error::DegenerateSymbol("ω ≡ 0 gives b₀ ≡ 0".into()));
                }
                return Ok(OuterFactor::Constant(*value));
            }
            OuterProfile::Arcs { .. } => {
                let (d, steps) = profile.steps(m).expect("arcs profile is a step function");
                let log_default = safe_ln(d);
                let pieces: Vec<(Arc, f64)> = steps
                    .iter()
                    .flat_map(|(u, v)| {
                        let c = safe_ln(*v) - log_default;
                        u.arcs().into_iter().map(move |a| (a, c))
                    })
                    .filter(|(_, c)| *c != 0.0)
                    .collect();
                let covered: f64 = steps.iter().map(|(u, _)| u.measure()).sum();
                let top = steps
                    .iter()
                    .map(|(_, v)| *v)
                    .chain((covered < 1.0 - 1e-15).then_some(d))
                    .fold(0.0, f64::max);
                if top <= EPS_FLOOR {
                    return Err(Error::DegenerateSymbol("ω ≡ 0 gives b₀ ≡ 0".into()));
                }
                return Ok(OuterFactor::Steps {
                    log_default,
                    pieces,
                });
            }
            _ => {}
        }
        Ok(OuterFactor::Grid(OuterGrid::from_samples(
            &profile.on_grid(m),
        )?))
    }

    /// `b₀(z)` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            OuterFactor::Constant(v) => Complex64::new(*v, 0.0),
            OuterFactor::OnePlusZHalf => (1.0 + z) * 0.5,
            OuterFactor::Steps {
                log_default,
                pieces,
            } => {
                let h: Complex64 = pieces.iter().map(|(a, c)| c * arc_herglotz(a, z)).sum();
                (h + log_default).exp()
            }
            OuterFactor::Grid(g) => g.eval(z),
        }
    }

    /// `b₀` at the `m` grid nodes, given `ω` there.
    pub fn boundary(&self, m: usize, omega: &[f64]) -> Vec<Complex64> {
        match self {
            OuterFactor::Constant(v) => vec![Complex64::new(*v, 0.0); m],
            OuterFactor::OnePlusZHalf => (0..m)
                .map(|k| (1.0 + turn(k as f64 / m as f64)) * 0.5)
                .collect(),
            OuterFactor::Grid(g) => g.boundary.values().to_vec(),
            OuterFactor::Steps { pieces, .. } => (0..m)
                .map(|k| {
                    let t = k as f64 / m as f64;
                    let zeta = turn(t);
                    let near_end = pieces.iter().any(|(a, _)| {
                        (turn(a.start()) - zeta).norm() < 1e-12
                            || (turn(a.end()) - zeta).norm() < 1e-12
                    });
                    if near_end {
                        let v = self.eval(zeta * (1.0 - 1e-9));
                        return Complex64::from_polar(omega[k], v.arg());
                    }
                    let phase: f64 = pieces
                        .iter()
                        .map(|(a, c)| {
                            let l = ((turn(a.end()) - zeta).norm()
                                / (turn(a.start()) - zeta).norm())
                            .ln();
                            -c * l / PI
                        })
                        .sum();
                    Complex64::from_polar(omega[k], phase)
                })
                .collect(),
        }
    }
}
