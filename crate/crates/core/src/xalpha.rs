//! Coefficient-weighted spaces `X_α`, the Cauchy pairing and the radial disk
//! moments `β_n(α)` that make `X_{-α}` comparable to a weighted Bergman space.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::grid::DiskSeries;
use crate::numeric::pairwise_sum;

/// Smoothness exponent of `X_α`. Any finite real is allowed; the disk-moment
/// side needs `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        Ok(Self(alpha))
    }

    pub fn positive(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(Self(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `sqrt(Σ (n+1)^α |f_n|²)`.
pub fn xalpha_norm(f: &DiskSeries, alpha: Alpha) -> f64 {
    let terms: Vec<f64> = f
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| ((n + 1) as f64).powf(alpha.0) * c.norm_sqr())
        .collect();
    pairwise_sum(&terms).sqrt()
}

/// `Σ f_n conj(g_n)`, the boundary limit of `∫ f_r conj(g_r) dm`.
pub fn cauchy_pairing(f: &DiskSeries, g: &DiskSeries) -> Complex64 {
    let terms: Vec<Complex64> = f
        .coefficients()
        .iter()
        .zip(g.coefficients())
        .map(|(a, b)| a * b.conj())
        .collect();
    pairwise_sum(&terms)
}

// Stirling tail B_{2k} / (2k(2k-1) z^{2k-1}) for k = 1..4.
fn stirling_tail(z: f64) -> f64 {
    let z2 = z * z;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z
}

/// `ln Γ(x + a) - ln Γ(x)` for `x ≥ 1`, `a > 0`, without forming either
/// Gamma value. Arguments below the Stirling threshold are shifted upward.
pub fn ln_gamma_ratio(x: f64, a: f64) -> f64 {
    const SHIFT_TO: f64 = 30.0;
    let mut correction = 0.0;
    let mut y = x;
    while y < SHIFT_TO {
        correction += (a / y).ln_1p();
        y += 1.0;
    }
    let main = (y - 0.5) * (a / y).ln_1p() + a * (y + a).ln() - a;
    main + (stirling_tail(y + a) - stirling_tail(y)) - correction
}

/// `β_n(α) = ∫_D |z|^{2n} (1-|z|²)^{α-1} dA = n! Γ(α) / Γ(n+1+α)` with `dA`
/// normalized to mass one.
pub fn disk_moment(n: usize, alpha: f64) -> Result<f64> {
    let a = Alpha::positive(alpha)?.0;
    if n == 0 {
        return Ok(1.0 / a);
    }
    Ok(gamma(a) * (-ln_gamma_ratio(n as f64 + 1.0, a)).exp())
}

/// `β_0(α), …, β_N(α)`.
pub fn disk_moments(degree: usize, alpha: f64) -> Result<Vec<f64>> {
    (0..=degree).map(|n| disk_moment(n, alpha)).collect()
}

/// `(n+1)^α β_n(α)` for `n = 0..=n_max`, computed in log space.
pub fn moment_scaling(n_max: usize, alpha: f64) -> Result<Vec<f64>> {
    let a = Alpha::positive(alpha)?.0;
    let lg = gamma(a).ln();
    Ok((0..=n_max)
        .map(|n| {
            let x = n as f64 + 1.0;
            (a * x.ln() + lg - ln_gamma_ratio(x, a)).exp()
        })
        .collect())
}

/// Comparison of `Σ (n+1)^{-α}|f_n|²` with `Σ β_n(α)|f_n|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEquivalence {
    pub alpha: f64,
    pub xminus_norm2: f64,
    pub moment_norm2: f64,
    /// `xminus_norm2 / moment_norm2`; absent for `f = 0`.
    pub ratio: Option<f64>,
    /// Coefficientwise bounds on the ratio over the degrees present.
    pub lower: f64,
    pub upper: f64,
}

impl NormEquivalence {
    pub fn within_bounds(&self, rel_tol: f64) -> bool {
        match self.ratio {
            Some(r) => r >= self.lower * (1.0 - rel_tol) && r <= self.upper * (1.0 + rel_tol),
            None => true,
        }
    }
}

pub fn xminus_norm_equiv_check(f: &DiskSeries, alpha: f64) -> Result<NormEquivalence> {
    let a = Alpha::positive(alpha)?.0;
    let scaling = moment_scaling(f.degree(), a)?;
    let beta = disk_moments(f.degree(), a)?;
    let w: Vec<f64> = f.coefficients().iter().map(|c| c.norm_sqr()).collect();
    let xminus: Vec<f64> = w
        .iter()
        .enumerate()
        .map(|(n, wn)| ((n + 1) as f64).powf(-a) * wn)
        .collect();
    let moment: Vec<f64> = w.iter().zip(&beta).map(|(wn, b)| wn * b).collect();
    let xminus_norm2 = pairwise_sum(&xminus);
    let moment_norm2 = pairwise_sum(&moment);
    let qmax = scaling.iter().copied().fold(f64::MIN, f64::max);
    let qmin = scaling.iter().copied().fold(f64::MAX, f64::min);
    Ok(NormEquivalence {
        alpha: a,
        xminus_norm2,
        moment_norm2,
        ratio: (moment_norm2 > 0.0).then(|| xminus_norm2 / moment_norm2),
        lower: 1.0 / qmax,
        upper: 1.0 / qmin,
    })
}
