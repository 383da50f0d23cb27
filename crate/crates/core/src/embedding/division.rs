//! Grid surrogate for `f/θ ∈ H²`: the size of `P₋(f θ̄)`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::BoundaryGrid;
use crate::numeric::{fourier_coefficients, pairwise_sum_by};
use crate::symbol::{Symbol, SymbolSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisionReport {
    /// `‖P₋(f θ̄)‖_{L²}`; near zero means `f/θ ∈ H²` at grid resolution.
    pub value: f64,
    pub grid: usize,
    /// Nodes where `θ` used the normalized radial proxy near its singular support.
    pub guarded_nodes: usize,
}

/// Only the inner part `B·S_ν` of `theta_spec` is used.
pub fn division_diagnostic(theta_spec: &SymbolSpec, f: &BoundaryGrid) -> Result<DivisionReport> {
    let m = f.size();
    let theta = Symbol::new(&theta_spec.inner_part(), m)?;
    let inner = theta.inner_boundary();
    let quotient: Vec<_> = f
        .values()
        .iter()
        .zip(&inner.values)
        .map(|(x, t)| x * t.conj())
        .collect();
    let c = fourier_coefficients(&quotient);
    let value = pairwise_sum_by(&c[m / 2..], |x| x.norm_sqr()).sqrt();
    Ok(DivisionReport {
        value,
        grid: m,
        guarded_nodes: inner.guarded.len(),
    })
}
