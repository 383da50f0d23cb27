//! Boundary grids on the unit circle and truncated Taylor series on the disk.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{fourier_coefficients, pairwise_sum_by, synthesize};

/// Samples of a function on `M` equispaced points `e^{2πik/M}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryGrid {
    values: Vec<Complex64>,
}

pub fn check_grid_size(m: usize) -> Result<()> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "grid size must be even and at least 4, got {m}"
        )));
    }
    Ok(())
}

impl BoundaryGrid {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(k) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::InvalidGrid(format!("non-finite value at node {k}")));
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples `f(t)` at the normalized nodes `t = k/M`.
    pub fn from_fn(m: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        check_grid_size(m)?;
        Self::new((0..m).map(|k| f(k as f64 / m as f64)).collect())
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Angle of node `k` in radians.
    pub fn theta(&self, k: usize) -> f64 {
        std::f64::consts::TAU * k as f64 / self.values.len() as f64
    }

    /// `‖u‖_{L²(T)}` by the trapezoid rule.
    pub fn l2_norm(&self) -> f64 {
        let s = pairwise_sum_by(&self.values, |v| v.norm_sqr());
        (s / self.values.len() as f64).sqrt()
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        fourier_coefficients(&self.values)
    }
}

/// Taylor coefficients `f_0..f_N` at the origin. `N` is a capacity: trailing
/// coefficients may vanish.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskSeries {
    coefficients: Vec<Complex64>,
}

impl DiskSeries {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Domain(
                "a series needs at least one coefficient".into(),
            ));
        }
        if coefficients
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Domain("non-finite Taylor coefficient".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn from_real(coefficients: &[f64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| Complex64::new(c, 0.0))
                .collect(),
        )
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self { coefficients: c }
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            coefficients: vec![c],
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Values on the `m`-point grid. Requires `degree < m / 2` so that the
    /// series is resolved without aliasing.
    pub fn on_grid(&self, m: usize) -> Result<BoundaryGrid> {
        check_grid_size(m)?;
        if self.degree() >= m / 2 {
            return Err(Error::Undersampled {
                degree: self.degree(),
                required: 2 * self.degree() + 2,
                got: m,
            });
        }
        let mut bins = vec![Complex64::new(0.0, 0.0); m];
        bins[..self.coefficients.len()].copy_from_slice(&self.coefficients);
        BoundaryGrid::new(synthesize(&bins))
    }

    pub fn h2_norm(&self) -> f64 {
        pairwise_sum_by(&self.coefficients, |c| c.norm_sqr()).sqrt()
    }

    /// Coefficientwise product truncated to `max_degree`.
    pub fn mul_truncated(&self, other: &DiskSeries, max_degree: usize) -> DiskSeries {
        let mut out = vec![Complex64::new(0.0, 0.0); max_degree + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(max_degree + 1) {
            for (j, b) in other.coefficients.iter().enumerate() {
                if i + j > max_degree {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        DiskSeries { coefficients: out }
    }
}
