//! Finite-degree realization of `J f = (f, g)` with `P₊(b̄f) = -P₊(Δg)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::hb_kernel;
use crate::error::{Error, Result};
use crate::grid::{check_grid_size, BoundaryGrid, DiskSeries};
use crate::numeric::{bin_of, fourier_coefficients, pairwise_sum_by, synthesize, turn};
use crate::symbol::{Extremality, Symbol, SymbolSpec, EXTREME_THRESHOLD};

/// `(f, g) ∈ H² ⊕ L²(E)`, with `g` on the grid and zero off the carrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JPair {
    pub f: DiskSeries,
    pub g: BoundaryGrid,
}

impl JPair {
    pub fn zero(m: usize) -> Result<Self> {
        Ok(Self {
            f: DiskSeries::constant(Complex64::new(0.0, 0.0)),
            g: BoundaryGrid::new(vec![Complex64::new(0.0, 0.0); m])?,
        })
    }

    /// `‖f‖²_{H²} + ‖g‖²_{L²}`.
    pub fn norm2(&self) -> f64 {
        self.f.h2_norm().powi(2) + self.g.l2_norm().powi(2)
    }
}

/// Element of `H(b)` pushed through `J`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum JTarget {
    /// The reproducing kernel `k_b(λ, ·)`.
    Kernel { lambda: Complex64 },
    /// A polynomial, given by its Taylor coefficients.
    Polynomial { coefficients: Vec<Complex64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JSolveOptions {
    /// Trigonometric degree of `g`; 0 means `M/4`.
    pub boundary_degree: usize,
    /// CGLS stops when `‖A*r‖ ≤ tolerance · ‖A*rhs‖`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for JSolveOptions {
    fn default() -> Self {
        Self {
            boundary_degree: 0,
            tolerance: 1e-13,
            max_iterations: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JSolveReport {
    pub grid: usize,
    pub boundary_degree: usize,
    pub iterations: usize,
    pub converged: bool,
    /// `‖P₊(b̄f) + P₊(Δg)‖` on the grid.
    pub residual: f64,
    /// `‖P₊(b̄f)‖`, the residual of `g = 0`.
    pub rhs_norm: f64,
    /// `|‖f‖² + ‖g‖² - ‖f‖²_{H(b)}|` when the `H(b)` norm is known in closed form.
    pub isometry_defect: Option<f64>,
    /// `‖g - g_closed‖_{L²(E)}` against the closed-form kernel image.
    pub closed_form_error: Option<f64>,
    pub extremality: Extremality,
    pub guarded_nodes: usize,
    pub warning: Option<String>,
}

/// The least-squares operator `a ↦ P₊(w · Σ_j a_j ζ^j)`, `|j| ≤ N_g`, with
/// `w = Δ 1_E` on the grid.
struct BoundaryOperator {
    weight: Vec<f64>,
    degree: usize,
}

impl BoundaryOperator {
    fn m(&self) -> usize {
        self.weight.len()
    }

    fn trig_values(&self, a: &[Complex64]) -> Vec<Complex64> {
        let m = self.m();
        let mut bins = vec![Complex64::new(0.0, 0.0); m];
        for (i, x) in a.iter().enumerate() {
            bins[bin_of(i as i64 - self.degree as i64, m)] += x;
        }
        synthesize(&bins)
    }

    fn apply(&self, a: &[Complex64]) -> Vec<Complex64> {
        let v: Vec<Complex64> = self
            .trig_values(a)
            .iter()
            .zip(&self.weight)
            .map(|(q, w)| q * *w)
            .collect();
        let mut c = fourier_coefficients(&v);
        c.truncate(self.m() / 2);
        c
    }

    fn adjoint(&self, r: &[Complex64]) -> Vec<Complex64> {
        let m = self.m();
        let mut bins = r.to_vec();
        bins.resize(m, Complex64::new(0.0, 0.0));
        let v: Vec<Complex64> = synthesize(&bins)
            .iter()
            .zip(&self.weight)
            .map(|(x, w)| x * *w)
            .collect();
        let c = fourier_coefficients(&v);
        (0..=2 * self.degree)
            .map(|i| c[bin_of(i as i64 - self.degree as i64, m)])
            .collect()
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    pairwise_sum_by(v, |x| x.norm_sqr())
}

struct Cgls {
    x: Vec<Complex64>,
    iterations: usize,
    converged: bool,
}

/// Conjugate gradients on the normal equations, started at zero so that the
/// minimum-norm least-squares solution is approached.
fn cgls(op: &BoundaryOperator, rhs: &[Complex64], tol: f64, max_iter: usize) -> Cgls {
    let n = 2 * op.degree + 1;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut r = rhs.to_vec();
    let mut s = op.adjoint(&r);
    let target = tol * norm2(&s).sqrt();
    let mut p = s.clone();
    let mut gamma = norm2(&s);
    for it in 0..max_iter {
        if gamma.sqrt() <= target || gamma == 0.0 {
            return Cgls {
                x,
                iterations: it,
                converged: true,
            };
        }
        let q = op.apply(&p);
        let qq = norm2(&q);
        if qq == 0.0 {
            return Cgls {
                x,
                iterations: it,
                converged: false,
            };
        }
        let step = gamma / qq;
        x.iter_mut().zip(&p).for_each(|(xi, pi)| *xi += pi * step);
        r.iter_mut().zip(&q).for_each(|(ri, qi)| *ri -= qi * step);
        s = op.adjoint(&r);
        let next = norm2(&s);
        let beta = next / gamma;
        gamma = next;
        p.iter_mut()
            .zip(&s)
            .for_each(|(pi, si)| *pi = si + *pi * beta);
    }
    let converged = gamma.sqrt() <= target;
    Cgls {
        x,
        iterations: max_iter,
        converged,
    }
}

/// `P₊(u)` coefficients `0..M/2` of grid data.
fn plus_part(values: &[Complex64]) -> Vec<Complex64> {
    let mut c = fourier_coefficients(values);
    c.truncate(values.len() / 2);
    c
}

/// The closed-form image `J k_b(λ, ·) = (k_b(λ, ·), -Δ conj(b(λ)) / (1 - λ̄ζ))`.
pub fn kernel_pair(spec: &SymbolSpec, lambda: Complex64, m: usize) -> Result<JPair> {
    let symbol = Symbol::new(spec, m)?;
    kernel_pair_for(&symbol, lambda)
}

fn kernel_pair_for(symbol: &Symbol, lambda: Complex64) -> Result<JPair> {
    let m = symbol.grid_size();
    let b_lambda = symbol.eval(lambda)?;
    let (b, _) = symbol.boundary();
    let k: Vec<Complex64> = b
        .iter()
        .enumerate()
        .map(|(l, &bz)| hb_kernel(b_lambda, bz, lambda, turn(l as f64 / m as f64)))
        .collect::<Result<_>>()?;
    let delta = symbol.delta_weight()?;
    let mask = delta.carrier_mask();
    let g: Vec<Complex64> = (0..m)
        .map(|l| {
            if mask[l] {
                -b_lambda.conj() * delta.values()[l]
                    / (1.0 - lambda.conj() * turn(l as f64 / m as f64))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(JPair {
        f: DiskSeries::new(plus_part(&k))?,
        g: BoundaryGrid::new(g)?,
    })
}

/// Solves for `g` in `L²(E)` by least squares over trigonometric polynomials
/// of degree `≤ N_g` restricted to the carrier, minimizing
/// `‖P₊(b̄f) + P₊(Δg)‖` on the `m`-point grid.
pub fn j_embedding_solve(
    spec: &SymbolSpec,
    target: &JTarget,
    m: usize,
    opts: &JSolveOptions,
) -> Result<(JPair, JSolveReport)> {
    check_grid_size(m)?;
    let symbol = Symbol::new(spec, m)?;
    let n_g = if opts.boundary_degree == 0 {
        m / 4
    } else {
        opts.boundary_degree
    };
    if 2 * n_g + 1 > m {
        return Err(Error::Undersampled {
            degree: n_g,
            required: 2 * n_g + 1,
            got: m,
        });
    }
    let closed = match target {
        JTarget::Kernel { lambda } => Some(kernel_pair_for(&symbol, *lambda)?),
        JTarget::Polynomial { .. } => None,
    };
    let f = match (target, &closed) {
        (JTarget::Polynomial { coefficients }, _) => DiskSeries::new(coefficients.clone())?,
        (_, Some(pair)) => pair.f.clone(),
        _ => unreachable!("kernel targets carry a closed form"),
    };
    let (b, guarded) = symbol.boundary();
    let fv = f.on_grid(m)?;
    let bf: Vec<Complex64> = fv
        .values()
        .iter()
        .zip(&b)
        .map(|(x, bz)| x * bz.conj())
        .collect();
    let rhs: Vec<Complex64> = plus_part(&bf).iter().map(|x| -x).collect();
    let rhs_norm = norm2(&rhs).sqrt();

    let delta = symbol.delta_weight()?;
    let mask = delta.carrier_mask();
    let weight: Vec<f64> = delta
        .values()
        .iter()
        .zip(&mask)
        .map(|(d, &on)| if on { *d } else { 0.0 })
        .collect();
    let log_integral = symbol.log_defect_integral();
    let extremality = Extremality {
        log_integral,
        extreme: log_integral < EXTREME_THRESHOLD,
    };
    let mut warning = (!extremality.extreme)
        .then(|| format!("b is not numerically extreme (∫ log(1-|b|) dm ≈ {log_integral:.3}); g need not be unique"));

    let (g, iterations, converged, residual) = if delta.is_zero() {
        (vec![Complex64::new(0.0, 0.0); m], 0, true, rhs_norm)
    } else {
        let op = BoundaryOperator {
            weight,
            degree: n_g,
        };
        let sol = cgls(&op, &rhs, opts.tolerance, opts.max_iterations);
        let ag = op.apply(&sol.x);
        let res: Vec<Complex64> = ag.iter().zip(&rhs).map(|(a, r)| a - r).collect();
        let g: Vec<Complex64> = op
            .trig_values(&sol.x)
            .iter()
            .zip(&op.weight)
            .map(|(q, &w)| {
                if w > 0.0 {
                    *q
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        (g, sol.iterations, sol.converged, norm2(&res).sqrt())
    };
    if !converged {
        let msg = format!(
            "least squares stopped after {iterations} iterations without meeting the tolerance"
        );
        warning = Some(match warning {
            Some(w) => format!("{w}; {msg}"),
            None => msg,
        });
    }
    let pair = JPair {
        f,
        g: BoundaryGrid::new(g)?,
    };
    let (isometry_defect, closed_form_error) = match (target, &closed) {
        (JTarget::Kernel { lambda }, Some(c)) => {
            let bl = symbol.eval(*lambda)?;
            let hb_norm2 = (1.0 - bl.norm_sqr()) / (1.0 - lambda.norm_sqr());
            let diff: Vec<Complex64> = pair
                .g
                .values()
                .iter()
                .zip(c.g.values())
                .map(|(x, y)| x - y)
                .collect();
            let err = (norm2(&diff) / m as f64).sqrt();
            (Some((pair.norm2() - hb_norm2).abs()), Some(err))
        }
        _ => (None, None),
    };
    Ok((
        pair,
        JSolveReport {
            grid: m,
            boundary_degree: n_g,
            iterations,
            converged,
            residual,
            rhs_norm,
            isometry_defect,
            closed_form_error,
            extremality,
            guarded_nodes: guarded.len(),
            warning,
        },
    ))
}

/// `∫_T f conj(b h) dm + ∫_E g Δ conj(h) dm` by grid quadrature; zero when
/// `(f, g)` is orthogonal to `(bh, Δh)`.
pub fn annihilator_check(spec: &SymbolSpec, pair: &JPair, h: &DiskSeries) -> Result<Complex64> {
    let m = pair.g.size();
    let symbol = Symbol::new(spec, m)?;
    let (b, _) = symbol.boundary();
    let delta = symbol.delta_weight()?;
    let fv = pair.f.on_grid(m)?;
    let hv = h.on_grid(m)?;
    let terms: Vec<Complex64> = (0..m)
        .map(|l| {
            let hc = hv.values()[l].conj();
            fv.values()[l] * b[l].conj() * hc + pair.g.values()[l] * delta.values()[l] * hc
        })
        .collect();
    Ok(crate::numeric::grid_mean(&terms))
}
