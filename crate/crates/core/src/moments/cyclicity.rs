//! Distance from the constant 1 to `θ·Poly_n` in `P²(μ)` for an inner `θ`.

use std::num::NonZeroUsize;

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::distance::{distance_to_poly_span, DistanceSequence};
use super::{gram_matrix, MomentMatrix, MuMeasure};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::numeric::{bin_of, fourier_coefficients, real_fourier_coefficients, turn};
use crate::symbol::{Symbol, SymbolSpec};

/// Quadrature controls for the disk part of the `θ z^k` Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CyclicityOptions {
    /// Starting Gauss-Jacobi node count in `s = |z|²`.
    pub radial_nodes: usize,
    /// Starting angular trapezoid size; 0 picks `max(64, 8(N+1))` rounded up
    /// to a power of two.
    pub angular_nodes: usize,
    /// Node counts double until the largest entry change is below this.
    pub tolerance: f64,
    pub max_doublings: usize,
    /// Cap on `nodes × (singular atoms + zeros)` per Gram evaluation.
    pub work_limit: f64,
}

impl Default for CyclicityOptions {
    fn default() -> Self {
        Self {
            radial_nodes: 32,
            angular_nodes: 0,
            tolerance: 1e-9,
            max_doublings: 6,
            work_limit: 2e8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicityReport {
    pub distances: DistanceSequence,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Largest entry change at the last doubling (0 when no quadrature ran).
    pub last_change: f64,
    pub converged: bool,
    /// Boundary nodes where the singular factor used its radial proxy.
    pub guarded_nodes: usize,
}

/// `∫_D |θ|² z^k z̄^j (1-|z|²)^{α-1} dA` for `j, k ≤ n`.
///
/// With `s = |z|²` the radial weight is `(1-s)^{α-1} ds`, handled exactly by
/// Gauss-Jacobi nodes; the angular integral is a trapezoid sum turned into
/// Fourier coefficients, so `H_{jk} = Σ_i w_i · s_i^{(j+k)/2} F_i(j-k)`.
fn disk_gram(theta: &Symbol, alpha: f64, n: usize, radial: usize, angular: usize) -> CMat {
    let exponent = FiniteAboveNegOneF64::new(alpha - 1.0).expect("alpha > 0");
    let zero = FiniteAboveNegOneF64::new(0.0).expect("0 > -1");
    let gj = GaussJacobi::new(
        NonZeroUsize::new(radial).expect("radial nodes ≥ 1"),
        exponent,
        zero,
    );
    let scale = 2f64.powf(-alpha);
    let mut h = CMat::zeros(n + 1, n + 1);
    let zetas: Vec<Complex64> = (0..angular)
        .map(|l| turn(l as f64 / angular as f64))
        .collect();
    for (x, w) in gj.as_node_weight_pairs() {
        let r = (0.5 * (x + 1.0)).clamp(0.0, 1.0).sqrt();
        let weight = scale * w;
        let f: Vec<f64> = zetas
            .iter()
            .map(|&z| theta.inner_at(z * r).norm_sqr())
            .collect();
        let coef = real_fourier_coefficients(&f);
        let powers: Vec<f64> = (0..=n).map(|p| r.powi(p as i32)).collect();
        for j in 0..=n {
            for k in 0..=n {
                let lag = j as i64 - k as i64;
                h[(j, k)] += coef[bin_of(lag, angular)] * (weight * powers[j] * powers[k]);
            }
        }
    }
    h
}

fn max_change(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|e| e.norm()).fold(0.0, f64::max)
}

/// Distances `d_n` from 1 to `θ·span{z^0..z^n}`; decay toward zero is
/// evidence that `θ` is cyclic for `M_z` on `P²(μ)`.
///
/// The disk part of the Gram matrix of `{θ z^k}` is computed by quadrature,
/// the boundary part equals the moment Gram's since `|θ| = 1` on the
/// circle. Cross moments are exact on the disk (`⟨1, θz^k⟩` reduces to
/// `conj(θ(0)) δ_{k0}/α` by the mean value property) and use the grid on
/// the circle. A trivial `θ` reuses the moment Gram matrix directly.
pub fn cyclicity_indicator(
    mu: &MuMeasure,
    theta_spec: &SymbolSpec,
    n: usize,
    opts: &CyclicityOptions,
) -> Result<CyclicityReport> {
    let inner = theta_spec.inner_part();
    let alpha = mu.alpha();
    let m = mu.delta().size();
    let theta = Symbol::new(&inner, m)?;
    let g = gram_matrix(mu, n)?;
    let norm2 = 1.0 / alpha + mu.boundary_mass();
    let target = "constant 1 against θ·Poly_n";

    if inner.blaschke_zeros.is_empty() && theta.singular().is_trivial() {
        let c: Vec<Complex64> = (0..=n).map(|k| g.entries()[(k, 0)]).collect();
        return Ok(CyclicityReport {
            distances: distance_to_poly_span(&g, &c, norm2, target)?,
            radial_nodes: 0,
            angular_nodes: 0,
            last_change: 0.0,
            converged: true,
            guarded_nodes: 0,
        });
    }

    let boundary = theta.inner_boundary();
    let delta2 = mu.delta().delta2();
    let weighted: Vec<Complex64> = boundary
        .values
        .iter()
        .zip(&delta2)
        .map(|(t, d)| t.conj() * *d)
        .collect();
    let bc = fourier_coefficients(&weighted);
    let theta0 = theta.inner_at(Complex64::new(0.0, 0.0));
    let c: Vec<Complex64> = (0..=n)
        .map(|k| {
            let disk = if k == 0 {
                theta0.conj() / alpha
            } else {
                Complex64::new(0.0, 0.0)
            };
            bc[k] + disk
        })
        .collect();

    let atoms = inner.blaschke_zeros.len() + theta.singular().node_count() + 1;
    let mut radial = opts.radial_nodes.max(n / 2 + 2);
    let mut angular = if opts.angular_nodes == 0 {
        (8 * (n + 1)).max(64).next_power_of_two()
    } else {
        opts.angular_nodes
    };
    if angular < 2 * n + 2 {
        return Err(Error::Quadrature(format!(
            "{angular} angular nodes cannot resolve degree {n}; need at least {}",
            2 * n + 2
        )));
    }
    let work = |r: usize, a: usize| (r * a * atoms) as f64;
    let mut h = disk_gram(&theta, alpha, n, radial, angular);
    let mut change = f64::INFINITY;
    for _ in 0..opts.max_doublings {
        if work(2 * radial, 2 * angular) > opts.work_limit {
            break;
        }
        let finer = disk_gram(&theta, alpha, n, 2 * radial, 2 * angular);
        change = max_change(&h, &finer);
        h = finer;
        radial *= 2;
        angular *= 2;
        if change < opts.tolerance {
            break;
        }
    }
    let total = CMat::from_fn(n + 1, n + 1, |j, k| {
        h[(j, k)] + mu.c_hat(j as i64 - k as i64)
    });
    let gram = MomentMatrix::checked(alpha, total, "θ-moment Gram matrix").map_err(|e| {
        Error::Quadrature(format!(
            "{e}; quadrature used {radial} radial × {angular} angular nodes, raise them"
        ))
    })?;
    Ok(CyclicityReport {
        distances: distance_to_poly_span(&gram, &c, norm2, target)?,
        radial_nodes: radial,
        angular_nodes: angular,
        last_change: change,
        converged: change < opts.tolerance,
        guarded_nodes: boundary.guarded.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::build_mu;
    use crate::sets::arcs::{Arc, ArcUnion};
    use crate::symbol::{BlaschkeZero, DeltaWeight};

    fn theta_z() -> SymbolSpec {
        SymbolSpec {
            blaschke_zeros: vec![BlaschkeZero::simple(0.0, 0.0).unwrap()],
            ..SymbolSpec::default()
        }
    }

    #[test]
    fn trivial_theta_is_cyclic() {
        let a = ArcUnion::new(&[Arc::new(0.1, 0.3).unwrap()]);
        let mu = build_mu(&DeltaWeight::arc_indicator(128, &a, 0.5).unwrap(), 1.0, 10).unwrap();
        let r = cyclicity_indicator(
            &mu,
            &SymbolSpec::default(),
            10,
            &CyclicityOptions::default(),
        )
        .unwrap();
        assert!(r.distances.values.iter().all(|&d| d < 1e-8));
    }

    #[test]
    fn theta_z_on_weighted_bergman_space() {
        // 1 ⟂ z·Poly in the radial measure, so d_n² = ‖1‖² = β_0(α) = 1/α.
        for alpha in [1.0, 2.0] {
            let mu = build_mu(&DeltaWeight::from_grid(vec![0.0; 128]).unwrap(), alpha, 20).unwrap();
            let r = cyclicity_indicator(&mu, &theta_z(), 20, &CyclicityOptions::default()).unwrap();
            for d in &r.distances.values {
                assert!((d * d - 1.0 / alpha).abs() < 1e-8, "alpha {alpha}: {d}");
            }
        }
    }

    #[test]
    fn blaschke_gram_matches_closed_form() {
        // For θ = z^2 the θ-Gram is the moment Gram shifted by two.
        let spec = SymbolSpec {
            blaschke_zeros: vec![BlaschkeZero::new(Complex64::new(0.0, 0.0), 2).unwrap()],
            ..SymbolSpec::default()
        };
        let a = ArcUnion::new(&[Arc::new(0.4, 0.2).unwrap()]);
        let delta = DeltaWeight::arc_indicator(256, &a, 0.3).unwrap();
        let mu = build_mu(&delta, 1.5, 8).unwrap();
        let theta = Symbol::new(&spec, 256).unwrap();
        let h = disk_gram(&theta, 1.5, 6, 64, 128);
        let beta = crate::xalpha::disk_moments(8, 1.5).unwrap();
        for j in 0..=6 {
            assert!((h[(j, j)].re - beta[j + 2]).abs() < 1e-9, "{j}");
        }
        let r = cyclicity_indicator(&mu, &spec, 8, &CyclicityOptions::default()).unwrap();
        assert!(r.converged && r.distances.is_nonincreasing());
    }
}
