//! The boundary weight `Δ = sqrt(1 - |b|²)` with its carrier and support.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::check_grid_size;
use crate::numeric::{real_fourier_coefficients, EPS_CARRIER};
use crate::sets::arcs::{Arc, ArcUnion};
use crate::sets::CircleSet;

/// `Δ² = base + Σ inc_j · 1_{S_j}`, used for exact Fourier coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Delta2Steps {
    pub base: f64,
    pub pieces: Vec<(ArcUnion, f64)>,
}

impl Delta2Steps {
    /// `∫ Δ² ζ̄^k dm`.
    pub fn fourier(&self, k: i64) -> Complex64 {
        let base = if k == 0 { self.base } else { 0.0 };
        let steps: Complex64 = self.pieces.iter().map(|(u, inc)| u.fourier(k) * *inc).sum();
        steps + base
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaWeight {
    values: Vec<f64>,
    carrier: CircleSet,
    support: CircleSet,
    declared: bool,
    steps: Option<Delta2Steps>,
}

/// Arc union covering the grid cells of nodes where `Δ > EPS_CARRIER`.
fn detect_carrier(values: &[f64]) -> ArcUnion {
    let m = values.len() as f64;
    let cells: Vec<Arc> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > EPS_CARRIER)
        .map(|(k, _)| Arc::new((k as f64 - 0.5) / m, 1.0 / m).expect("cell"))
        .collect();
    ArcUnion::new(&cells)
}

impl DeltaWeight {
    /// Weight from grid samples; carrier and support are detected from runs
    /// of nodes above `EPS_CARRIER`.
    pub fn from_grid(values: Vec<f64>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(v) = values
            .iter()
            .find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0 + 1e-12)
        {
            return Err(Error::Domain(format!("Δ sample {v} outside [0, 1]")));
        }
        let e = CircleSet::Arcs {
            arcs: detect_carrier(&values),
        };
        Ok(Self {
            values,
            carrier: e.clone(),
            support: e,
            declared: false,
            steps: None,
        })
    }

    pub(crate) fn with_declared(mut self, carrier: CircleSet, support: CircleSet) -> Self {
        self.carrier = carrier;
        self.support = support;
        self.declared = true;
        self
    }

    pub(crate) fn with_steps(mut self, steps: Delta2Steps) -> Self {
        self.steps = Some(steps);
        self
    }

    /// `Δ² ≡ value` on the `m`-point grid.
    pub fn constant(m: usize, delta2: f64) -> Result<Self> {
        let d = Self::from_grid(vec![delta2.max(0.0).sqrt(); m])?;
        Ok(d.with_steps(Delta2Steps {
            base: delta2,
            pieces: Vec::new(),
        }))
    }

    /// `Δ² = value · 1_A` for an arc union `A`, with exact carrier and steps.
    pub fn arc_indicator(m: usize, arcs: &ArcUnion, delta2: f64) -> Result<Self> {
        let values = (0..m)
            .map(|k| {
                if arcs.contains(k as f64 / m as f64) {
                    delta2.sqrt()
                } else {
                    0.0
                }
            })
            .collect();
        let e = CircleSet::Arcs { arcs: arcs.clone() };
        Ok(Self::from_grid(values)?
            .with_declared(e.clone(), e)
            .with_steps(Delta2Steps {
                base: 0.0,
                pieces: vec![(arcs.clone(), delta2)],
            }))
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn delta2(&self) -> Vec<f64> {
        self.values.iter().map(|v| v * v).collect()
    }

    pub fn carrier(&self) -> &CircleSet {
        &self.carrier
    }

    pub fn support(&self) -> &CircleSet {
        &self.support
    }

    pub fn is_declared(&self) -> bool {
        self.declared
    }

    pub fn steps(&self) -> Option<&Delta2Steps> {
        self.steps.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v <= EPS_CARRIER)
    }

    /// Grid nodes inside the carrier.
    pub fn carrier_mask(&self) -> Vec<bool> {
        self.values.iter().map(|&v| v > EPS_CARRIER).collect()
    }

    /// `ĉ(k) = ∫ Δ² ζ̄^k dm` for `k = 0..=max_lag`: exact for step weights,
    /// by DFT otherwise.
    pub fn fourier_delta2(&self, max_lag: usize) -> Result<Vec<Complex64>> {
        if let Some(s) = &self.steps {
            return Ok((0..=max_lag as i64).map(|k| s.fourier(k)).collect());
        }
        let m = self.values.len();
        if 2 * max_lag >= m {
            return Err(Error::Undersampled {
                degree: max_lag,
                required: 2 * max_lag + 2,
                got: m,
            });
        }
        let c = real_fourier_coefficients(&self.delta2());
        Ok(c[..=max_lag].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_carrier_runs() {
        let mut v = vec![0.0; 16];
        for x in v.iter_mut().take(6).skip(2) {
            *x = 0.5;
        }
        let d = DeltaWeight::from_grid(v).unwrap();
        assert!((d.carrier().measure() - 4.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn arc_fourier_is_exact() {
        let a = ArcUnion::new(&[Arc::new(0.1, 0.25).unwrap()]);
        let d = DeltaWeight::arc_indicator(64, &a, 0.75).unwrap();
        let c = d.fourier_delta2(3).unwrap();
        assert!((c[0].re - 0.75 * 0.25).abs() < 1e-16);
        let expect = a.fourier(3) * 0.75;
        assert!((c[3] - expect).norm() < 1e-16);
    }

    #[test]
    fn constant_weight() {
        let d = DeltaWeight::constant(32, 0.75).unwrap();
        let c = d.fourier_delta2(4).unwrap();
        assert_eq!(c[0], Complex64::new(0.75, 0.0));
        assert!(c[1..].iter().all(|x| x.norm() == 0.0));
    }
}
