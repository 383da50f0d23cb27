//! Small dense Hermitian linear algebra on top of nalgebra.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Relative PSD tolerance: eigenvalues down to `-PSD_TOL * trace` pass.
pub const PSD_TOL: f64 = 1e-8;

pub fn trace_re(a: &CMat) -> f64 {
    (0..a.nrows()).map(|i| a[(i, i)].re).sum()
}

/// Largest entrywise deviation from Hermitian symmetry.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..=i {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(a.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

pub fn min_eigenvalue(a: &CMat) -> f64 {
    hermitian_eigenvalues(a).first().copied().unwrap_or(0.0)
}

/// Checks `λ_min ≥ -PSD_TOL · trace`; returns `λ_min` on success.
pub fn check_psd(a: &CMat, what: &str) -> Result<f64> {
    let lmin = min_eigenvalue(a);
    let tr = trace_re(a).abs();
    if !lmin.is_finite() || lmin < -PSD_TOL * tr {
        return Err(Error::NumericalInconsistency(format!(
            "{what} is not positive semidefinite: min eigenvalue {lmin:e}, trace {tr:e}"
        )));
    }
    Ok(lmin)
}

/// Cholesky factor of `a + λI` with `λ = base_jitter` escalated by factors of
/// ten until the factorization succeeds. Returns the factor and the jitter
/// actually used.
pub fn jittered_cholesky(a: &CMat, base_jitter: f64) -> Result<(Cholesky<Complex64, Dyn>, f64)> {
    let n = a.nrows();
    let scale = (trace_re(a).abs() / n.max(1) as f64).max(f64::MIN_POSITIVE);
    let mut jitter = base_jitter.max(0.0);
    for _ in 0..12 {
        let mut shifted = a.clone();
        for i in 0..n {
            shifted[(i, i)] += Complex64::new(jitter, 0.0);
        }
        if let Some(ch) = Cholesky::new(shifted) {
            return Ok((ch, jitter));
        }
        jitter = if jitter == 0.0 {
            1e-14 * scale
        } else {
            jitter * 10.0
        };
    }
    Err(Error::NumericalInconsistency(format!(
        "Cholesky failed even with jitter {jitter:e}"
    )))
}

/// Solves `L y = c` for lower-triangular `L`.
pub fn forward_substitute(l: &CMat, c: &[Complex64]) -> CVec {
    let n = l.nrows();
    let mut y = CVec::zeros(n);
    for i in 0..n {
        let mut s = c[i];
        for j in 0..i {
            s -= l[(i, j)] * y[j];
        }
        y[i] = s / l[(i, i)];
    }
    y
}

/// Largest `λ` with `A x = λ B x`, for Hermitian `A` and positive definite `B`.
pub fn generalized_max_eigenvalue(a: &CMat, b: &CMat) -> Result<f64> {
    let ch = Cholesky::new(b.clone()).ok_or_else(|| {
        Error::NumericalInconsistency("generalized eigenproblem: B is not positive definite".into())
    })?;
    let l = ch.l();
    let n = a.nrows();
    // C = L⁻¹ A L⁻ᴴ, built column by column.
    let mut x = CMat::zeros(n, n);
    for j in 0..n {
        let col: Vec<Complex64> = a.column(j).iter().copied().collect();
        x.set_column(j, &forward_substitute(&l, &col));
    }
    let xh = x.adjoint();
    let mut c = CMat::zeros(n, n);
    for j in 0..n {
        let col: Vec<Complex64> = xh.column(j).iter().copied().collect();
        c.set_column(j, &forward_substitute(&l, &col));
    }
    let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(hermitian_eigenvalues(&c).last().copied().unwrap_or(0.0))
}
