//! Distances in `P²(μ)` from a target to polynomial spans.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gram_matrix, MomentMatrix, MuMeasure};
use crate::error::{Error, Result};
use crate::linalg::{forward_substitute, jittered_cholesky, CMat};
use crate::numeric::{real_fourier_coefficients, EPS_CARRIER};
use crate::sets::arcs::ArcUnion;

/// Label carried by every distance report.
pub const EVIDENCE: &str = "finite-degree evidence";

/// Least-squares fit `log d_n ≈ intercept + rate · log n` over the top half
/// of the computed degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub rate: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    pub first_degree: usize,
    pub last_degree: usize,
}

impl DecayFit {
    /// `None` when fewer than two degrees of the top half have `d_n > 0`.
    pub fn fit(values: &[f64]) -> Option<Self> {
        let last = values.len().checked_sub(1)?;
        let first = (last.div_ceil(2)).max(1);
        let pts: Vec<(f64, f64)> = (first..=last)
            .filter(|&n| values[n] > 0.0)
            .map(|n| ((n as f64).ln(), values[n].ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let rate = sxy / sxx;
        let intercept = my - rate * mx;
        let ss: f64 = pts
            .iter()
            .map(|p| (p.1 - intercept - rate * p.0).powi(2))
            .sum();
        Some(Self {
            rate,
            intercept,
            residual: (ss / k).sqrt(),
            first_degree: first,
            last_degree: last,
        })
    }
}

/// `d_0 ≥ d_1 ≥ … ≥ d_N ≥ 0`, the distances from a target to `span{z^0..z^n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSequence {
    pub target: String,
    pub alpha: f64,
    /// Diagonal shift used in the Cholesky factorization.
    pub jitter: f64,
    pub target_norm: f64,
    pub values: Vec<f64>,
    pub fit: Option<DecayFit>,
    pub evidence: String,
}

impl DistanceSequence {
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Solves `L Lᴴ x = c` on the leading `n × n` block of `L` given `y = L⁻¹ c`.
fn back_substitute(l: &CMat, y: &[Complex64]) -> Vec<Complex64> {
    let n = y.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for j in i + 1..n {
            s -= l[(j, i)].conj() * x[j];
        }
        x[i] = s / l[(i, i)].conj();
    }
    x
}

/// Distances from a target `t` with `c_k = ⟨t, z^k⟩_μ` and `‖t‖² = norm2`.
///
/// Normal equations are solved with a Cholesky factor of `G + λI`,
/// `λ = 1e-12 · tr G / (N+1)`. Each `d_n` is the exact residual
/// `‖t - p_n‖²` of the regularized minimizer `p_n`, so it never undercuts the
/// true distance; a running minimum keeps the nested-span monotonicity.
pub fn distance_to_poly_span(
    g: &MomentMatrix,
    c: &[Complex64],
    norm2: f64,
    target: impl Into<String>,
) -> Result<DistanceSequence> {
    let n = g.degree();
    if c.len() != n + 1 {
        return Err(Error::Domain(format!(
            "{} inner products for a degree-{n} Gram matrix",
            c.len()
        )));
    }
    if !(norm2.is_finite() && norm2 >= 0.0) || c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain(format!(
            "target norm² {norm2} must be finite and nonnegative"
        )));
    }
    let base = 1e-12 * g.trace() / (n + 1) as f64;
    let (ch, jitter) = jittered_cholesky(g.entries(), base)?;
    let l = ch.l();
    let y = forward_substitute(&l, c);
    let e = g.entries();
    let mut values = Vec::with_capacity(n + 1);
    let mut best = f64::INFINITY;
    for k in 0..=n {
        let a = back_substitute(&l, &y.as_slice()[..=k]);
        let cross: Complex64 = a.iter().zip(c).map(|(ai, ci)| ai * ci.conj()).sum();
        let mut quad = Complex64::new(0.0, 0.0);
        for i in 0..=k {
            let row: Complex64 = (0..=k).map(|j| e[(i, j)] * a[j]).sum();
            quad += a[i].conj() * row;
        }
        let d2 = norm2 - 2.0 * cross.re + quad.re;
        if d2 < -1e-6 * norm2 {
            return Err(Error::NumericalInconsistency(format!(
                "negative squared distance {d2:e} at degree {k} (target norm² {norm2:e})"
            )));
        }
        best = best.min(d2.max(0.0).sqrt());
        values.push(best);
    }
    let fit = DecayFit::fit(&values);
    Ok(DistanceSequence {
        target: target.into(),
        alpha: g.alpha(),
        jitter,
        target_norm: norm2.sqrt(),
        values,
        fit,
        evidence: EVIDENCE.into(),
    })
}

/// Boundary-only element `(0, t)` of `L²(μ)`; `t` lives on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
#[derive(Default)]
pub enum BoundaryTarget {
    /// `t ≡ 1`, which under `Δ² dm` equals the indicator of the carrier.
    #[default]
    Unit,
    /// Indicator of an arc union.
    Arcs { arcs: ArcUnion },
    /// Real grid samples at the nodes `k/M`.
    Samples { values: Vec<f64> },
}


impl BoundaryTarget {
    pub fn describe(&self) -> String {
        match self {
            Self::Unit => "(0, 1) boundary-only target".into(),
            Self::Arcs { arcs } => {
                format!("(0, 1_A) boundary-only target, |A| = {}", arcs.measure())
            }
            Self::Samples { values } => {
                format!("(0, t) boundary-only target from {} samples", values.len())
            }
        }
    }

    /// `(c_k = ∫ t ζ̄^k Δ² dm for k ≤ n, ∫ |t|² Δ² dm)`.
    pub fn inner_products(&self, mu: &MuMeasure, n: usize) -> Result<(Vec<Complex64>, f64)> {
        let delta = mu.delta();
        let m = delta.size();
        let grid = |t: &[f64]| {
            let w: Vec<f64> = t.iter().zip(delta.delta2()).map(|(t, d)| t * d).collect();
            let c = real_fourier_coefficients(&w);
            let norm2 = t
                .iter()
                .zip(delta.delta2())
                .map(|(t, d)| t * t * d)
                .sum::<f64>()
                / m as f64;
            (c[..=n].to_vec(), norm2)
        };
        match self {
            Self::Unit => Ok((
                (0..=n as i64).map(|k| mu.c_hat(k)).collect(),
                mu.boundary_mass(),
            )),
            Self::Arcs { arcs } => {
                if arcs.measure() <= 0.0 {
                    return Err(Error::DegenerateTarget(
                        "indicator of a null arc union".into(),
                    ));
                }
                if let Some(steps) = delta.steps() {
                    let pieces: Vec<(ArcUnion, f64)> = std::iter::once((arcs.clone(), steps.base))
                        .chain(
                            steps
                                .pieces
                                .iter()
                                .map(|(u, inc)| (u.intersection(arcs), *inc)),
                        )
                        .collect();
                    let c: Vec<Complex64> = (0..=n as i64)
                        .map(|k| pieces.iter().map(|(u, w)| u.fourier(k) * *w).sum())
                        .collect();
                    let norm2 = c[0].re;
                    return Ok((c, norm2));
                }
                let t: Vec<f64> = (0..m)
                    .map(|k| {
                        if arcs.contains(k as f64 / m as f64) {
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect();
                Ok(grid(&t))
            }
            Self::Samples { values } => {
                if values.len() != m {
                    return Err(Error::InvalidGrid(format!(
                        "{} target samples for an {m}-point grid",
                        values.len()
                    )));
                }
                if let Some(v) = values.iter().find(|v| !v.is_finite()) {
                    return Err(Error::Domain(format!("non-finite target sample {v}")));
                }
                if values.iter().all(|v| v.abs() <= EPS_CARRIER) {
                    return Err(Error::DegenerateTarget("target samples vanish".into()));
                }
                Ok(grid(values))
            }
        }
    }
}

/// Distances from `(0, t)` to the polynomials: a floor that persists as `N`
/// grows is evidence against a boundary summand of `P²(μ)`, decay toward 0 is
/// evidence for one.
pub fn splitting_indicator(
    mu: &MuMeasure,
    t: &BoundaryTarget,
    n: usize,
) -> Result<DistanceSequence> {
    let g = gram_matrix(mu, n)?;
    let (c, norm2) = t.inner_products(mu, n)?;
    distance_to_poly_span(&g, &c, norm2, t.describe())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::build_mu;
    use crate::sets::arcs::Arc;
    use crate::symbol::DeltaWeight;
    use proptest::prelude::*;

    #[test]
    fn member_target_has_zero_distance() {
        let mu = build_mu(&DeltaWeight::constant(64, 0.75).unwrap(), 1.0, 4).unwrap();
        let g = gram_matrix(&mu, 4).unwrap();
        let c: Vec<Complex64> = (0..=4).map(|k| g.entries()[(k, 0)]).collect();
        let d = distance_to_poly_span(&g, &c, g.entries()[(0, 0)].re, "z^0").unwrap();
        assert!(d.values.iter().all(|&v| v < 1e-8), "{:?}", d.values);
    }

    #[test]
    fn hand_computed_boundary_target() {
        // d_0² = 3/4 - (3/4)² / (β_0(1) + 3/4) with β_0(1) = 1.
        let mu = build_mu(&DeltaWeight::constant(16, 0.75).unwrap(), 1.0, 0).unwrap();
        let d = splitting_indicator(&mu, &BoundaryTarget::Unit, 0).unwrap();
        assert!((d.values[0].powi(2) - 3.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn inner_symbol_target_is_constant() {
        let mu = build_mu(&DeltaWeight::from_grid(vec![0.0; 64]).unwrap(), 1.0, 10).unwrap();
        let d = splitting_indicator(&mu, &BoundaryTarget::Unit, 10).unwrap();
        assert!(d.values.iter().all(|&v| v == d.values[0]));
        let arc = BoundaryTarget::Arcs {
            arcs: ArcUnion::new(&[Arc::new(0.2, 0.1).unwrap()]),
        };
        let d = splitting_indicator(&mu, &arc, 10).unwrap();
        assert!(d.values.iter().all(|&v| v == 0.0));
        assert!(matches!(
            splitting_indicator(
                &mu,
                &BoundaryTarget::Samples {
                    values: vec![0.0; 64]
                },
                10
            ),
            Err(Error::DegenerateTarget(_))
        ));
    }

    #[test]
    fn arc_target_matches_grid_target() {
        let a = ArcUnion::new(&[Arc::new(0.25, 0.25).unwrap()]);
        let m = 1 << 14;
        let exact = build_mu(&DeltaWeight::arc_indicator(m, &a, 0.6).unwrap(), 1.0, 6).unwrap();
        let (c, n2) = BoundaryTarget::Arcs { arcs: a.clone() }
            .inner_products(&exact, 6)
            .unwrap();
        assert!((n2 - 0.15).abs() < 1e-15);
        let samples: Vec<f64> = (0..m)
            .map(|k| {
                if a.contains(k as f64 / m as f64) {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let (cg, _) = BoundaryTarget::Samples { values: samples }
            .inner_products(&exact, 6)
            .unwrap();
        for (x, y) in c.iter().zip(&cg) {
            assert!((x - y).norm() < 1e-3);
        }
    }

    #[test]
    fn decay_fit_recovers_power_law() {
        let v: Vec<f64> = (0..=40)
            .map(|n| 3.0 * ((n.max(1)) as f64).powf(-0.7))
            .collect();
        let f = DecayFit::fit(&v).unwrap();
        assert!((f.rate + 0.7).abs() < 1e-12 && f.residual < 1e-12);
        assert_eq!((f.first_degree, f.last_degree), (20, 40));
        assert!(DecayFit::fit(&[1.0, 0.0]).is_none());
    }

    proptest! {
        #[test]
        fn distances_are_nonincreasing(
            start in 0.0..1.0f64, len in 0.02..0.9f64, h in 0.05..1.0f64, alpha in 0.3..3.0f64,
        ) {
            let a = ArcUnion::new(&[Arc::new(start, len).unwrap()]);
            let mu = build_mu(&DeltaWeight::arc_indicator(128, &a, h).unwrap(), alpha, 25).unwrap();
            let d = splitting_indicator(&mu, &BoundaryTarget::Unit, 25).unwrap();
            prop_assert!(d.is_nonincreasing());
            prop_assert!(d.values[0] <= d.target_norm + 1e-15);
            prop_assert!(d.last() >= 0.0);
        }
    }
}
