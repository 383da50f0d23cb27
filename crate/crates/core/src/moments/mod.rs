//! The measure `μ(b, α) = (1-|z|²)^{α-1} dA + Δ² dm`, its monomial Gram
//! matrix in `P²(μ)`, and distance functionals built on it.

mod cyclicity;
mod distance;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{check_psd, generalized_max_eigenvalue, trace_re, CMat};
use crate::symbol::DeltaWeight;
use crate::xalpha::{disk_moments, Alpha};

pub use cyclicity::{cyclicity_indicator, CyclicityOptions, CyclicityReport};
pub use distance::{
    distance_to_poly_span, splitting_indicator, BoundaryTarget, DecayFit, DistanceSequence,
};

/// `μ(b, α)` truncated to the Fourier lags a degree-`N` Gram matrix needs.
#[derive(Debug, Clone)]
pub struct MuMeasure {
    alpha: f64,
    degree: usize,
    delta: DeltaWeight,
    fourier_delta2: Vec<Complex64>,
}

/// Smallest grid that resolves a degree-`n` study.
pub fn required_grid(n: usize) -> usize {
    4 * n + 4
}

pub fn build_mu(delta: &DeltaWeight, alpha: f64, n: usize) -> Result<MuMeasure> {
    let alpha = Alpha::positive(alpha)?.value();
    let m = delta.size();
    if m < required_grid(n) {
        return Err(Error::Undersampled {
            degree: n,
            required: required_grid(n),
            got: m,
        });
    }
    let fourier_delta2 = delta.fourier_delta2(2 * n)?;
    let mass = fourier_delta2[0].re;
    if !(-1e-12..=1.0 + 1e-12).contains(&mass) {
        return Err(Error::NumericalInconsistency(format!(
            "∫ Δ² dm = {mass} outside [0, 1]"
        )));
    }
    Ok(MuMeasure {
        alpha,
        degree: n,
        delta: delta.clone(),
        fourier_delta2,
    })
}

impl MuMeasure {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn delta(&self) -> &DeltaWeight {
        &self.delta
    }

    /// `ĉ(k)` for `k = 0..=2N`.
    pub fn fourier_delta2(&self) -> &[Complex64] {
        &self.fourier_delta2
    }

    /// `ĉ(k) = ∫ Δ² ζ̄^k dm` for `|k| ≤ 2N`, using `ĉ(-k) = conj(ĉ(k))`.
    pub fn c_hat(&self, k: i64) -> Complex64 {
        let c = self.fourier_delta2[k.unsigned_abs() as usize];
        if k < 0 {
            c.conj()
        } else {
            c
        }
    }

    /// Boundary mass `∫ Δ² dm`.
    pub fn boundary_mass(&self) -> f64 {
        self.fourier_delta2[0].re
    }
}

/// `G_{jk} = ⟨z^k, z^j⟩_μ = δ_{jk} β_j(α) + ĉ(j - k)`, `0 ≤ j, k ≤ N`.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    alpha: f64,
    entries: CMat,
    min_eigenvalue: f64,
}

impl MomentMatrix {
    /// Wraps a Gram matrix after the PSD check.
    pub(crate) fn checked(alpha: f64, entries: CMat, what: &str) -> Result<Self> {
        let min_eigenvalue = check_psd(&entries, what)?;
        Ok(Self {
            alpha,
            entries,
            min_eigenvalue,
        })
    }

    pub fn degree(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    pub fn trace(&self) -> f64 {
        trace_re(&self.entries)
    }

    /// `sup ‖z p‖_μ / ‖p‖_μ` over polynomials of degree `< N`, as a
    /// generalized eigenvalue of the shifted and leading blocks.
    pub fn shift_norm(&self) -> Result<f64> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::Domain("shift norm needs degree ≥ 1".into()));
        }
        let shifted = self.entries.view((1, 1), (n, n)).into_owned();
        let mut lead = self.entries.view((0, 0), (n, n)).into_owned();
        let lam = match generalized_max_eigenvalue(&shifted, &lead) {
            Ok(l) => l,
            Err(_) => {
                let jitter = 1e-12 * trace_re(&lead) / n as f64;
                for i in 0..n {
                    lead[(i, i)] += jitter;
                }
                generalized_max_eigenvalue(&shifted, &lead)?
            }
        };
        Ok(lam.max(0.0).sqrt())
    }
}

pub fn gram_matrix(mu: &MuMeasure, n: usize) -> Result<MomentMatrix> {
    if n > mu.degree {
        return Err(Error::Domain(format!(
            "Gram degree {n} exceeds the measure's prepared degree {}",
            mu.degree
        )));
    }
    let beta = disk_moments(n, mu.alpha)?;
    let g = CMat::from_fn(n + 1, n + 1, |j, k| {
        let toeplitz = mu.c_hat(j as i64 - k as i64);
        if j == k {
            toeplitz + beta[j]
        } else {
            toeplitz
        }
    });
    MomentMatrix::checked(mu.alpha, g, "moment Gram matrix")
}
