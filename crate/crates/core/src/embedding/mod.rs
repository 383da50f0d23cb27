//! The reproducing kernel of `H(b)`, Hardy projections, the embedding
//! `J: H(b) → H² ⊕ L²(E)` and the division diagnostic.

mod division;
mod jsolve;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{BoundaryGrid, DiskSeries};
use crate::linalg::{check_psd, CMat};
use crate::numeric::{fourier_coefficients, synthesize};
use crate::symbol::{Symbol, SymbolSpec};

pub use division::{division_diagnostic, DivisionReport};
pub use jsolve::{
    annihilator_check, j_embedding_solve, kernel_pair, JPair, JSolveOptions, JSolveReport, JTarget,
};

/// `|1 - λ̄z|` below this is treated as the kernel's pole.
pub const POLE_TOL: f64 = 1e-14;

/// `k_b(λ, z) = (1 - conj(b(λ)) b(z)) / (1 - λ̄ z)`.
pub fn hb_kernel(
    b_lambda: Complex64,
    b_z: Complex64,
    lambda: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - lambda.conj() * z;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole);
    }
    Ok((Complex64::new(1.0, 0.0) - b_lambda.conj() * b_z) / den)
}

/// `K_{ij} = k_b(λ_j, λ_i) = ⟨k_{λ_j}, k_{λ_i}⟩_{H(b)}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelGram {
    pub points: Vec<Complex64>,
    pub b_values: Vec<Complex64>,
    pub entries: Vec<Vec<Complex64>>,
    pub min_eigenvalue: f64,
    pub trace: f64,
}

/// Kernel Gram matrix at distinct points of the disk; `m` is the boundary
/// grid used to build the outer factor.
pub fn kernel_gram(spec: &SymbolSpec, points: &[Complex64], m: usize) -> Result<KernelGram> {
    if points.is_empty() {
        return Err(Error::Domain("kernel Gram needs at least one point".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if !(p.norm() < 1.0) {
            return Err(Error::Domain(format!("point {p} is not inside the disk")));
        }
        if points[..i].iter().any(|q| (p - q).norm() < 1e-14) {
            return Err(Error::Domain(format!("point {p} is repeated")));
        }
    }
    let symbol = Symbol::new(spec, m)?;
    let b: Vec<Complex64> = points
        .iter()
        .map(|&z| symbol.eval(z))
        .collect::<Result<_>>()?;
    let n = points.len();
    let mut k = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            k[(i, j)] = hb_kernel(b[j], b[i], points[j], points[i])?;
        }
    }
    let min_eigenvalue = check_psd(&k, "kernel Gram matrix")?;
    Ok(KernelGram {
        points: points.to_vec(),
        b_values: b,
        entries: k.row_iter().map(|r| r.iter().copied().collect()).collect(),
        min_eigenvalue,
        trace: (0..n).map(|i| k[(i, i)].re).sum(),
    })
}

/// `P₊u`: the nonnegative frequencies `0..M/2` as Taylor coefficients.
pub fn hardy_project(u: &BoundaryGrid) -> DiskSeries {
    let m = u.size();
    let mut c = u.coefficients();
    c.truncate(m / 2);
    DiskSeries::new(c).expect("grid sizes are at least 4")
}

/// `P₋u` on the grid: the strictly negative frequencies `-M/2..=-1`.
pub fn hardy_project_minus(u: &BoundaryGrid) -> BoundaryGrid {
    let m = u.size();
    let mut c = fourier_coefficients(u.values());
    c[..m / 2]
        .iter_mut()
        .for_each(|x| *x = Complex64::new(0.0, 0.0));
    BoundaryGrid::new(synthesize(&c)).expect("finite projection of finite data")
}
