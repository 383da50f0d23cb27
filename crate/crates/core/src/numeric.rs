//! Shared numerical helpers: fixed-order reductions and normalized DFTs.

use std::ops::Add;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Floor used wherever `log ω` or `log Δ²` must be clamped.
pub const EPS_FLOOR: f64 = 1e-300;

/// Threshold separating carrier nodes `{Δ > ε}` from rounding noise.
pub const EPS_CARRIER: f64 = 1e-9;

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise summation with a fixed split order, so the result depends only
/// on the input slice.
pub fn pairwise_sum<T>(xs: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().fold(T::default(), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_sum_by<T, U, F>(xs: &[T], f: F) -> U
where
    U: Copy + Default + Add<Output = U>,
    F: Fn(&T) -> U,
{
    let mapped: Vec<U> = xs.iter().map(f).collect();
    pairwise_sum(&mapped)
}

/// Signed frequency of DFT bin `k` on an `m`-point grid.
pub fn signed_frequency(k: usize, m: usize) -> i64 {
    if k < m / 2 {
        k as i64
    } else {
        k as i64 - m as i64
    }
}

/// DFT bin holding signed frequency `freq` on an `m`-point grid.
pub fn bin_of(freq: i64, m: usize) -> usize {
    freq.rem_euclid(m as i64) as usize
}

/// Fourier coefficients `û(n) = (1/M) Σ_k u_k e^{-2πikn/M}` in bin order.
pub fn fourier_coefficients(values: &[Complex64]) -> Vec<Complex64> {
    let m = values.len();
    let mut buf = values.to_vec();
    if m == 0 {
        return buf;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Inverse of [`fourier_coefficients`]: grid values `Σ_n û(n) e^{2πikn/M}`.
pub fn synthesize(coefficients: &[Complex64]) -> Vec<Complex64> {
    let m = coefficients.len();
    let mut buf = coefficients.to_vec();
    if m == 0 {
        return buf;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(m).process(&mut buf);
    buf
}

pub fn real_fourier_coefficients(values: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fourier_coefficients(&c)
}

/// Grid mean `(1/M) Σ_k v_k`, the trapezoid rule for `∫_T v dm`.
pub fn grid_mean(values: &[Complex64]) -> Complex64 {
    pairwise_sum(values) / values.len() as f64
}

pub fn grid_mean_real(values: &[f64]) -> f64 {
    pairwise_sum(values) / values.len() as f64
}

/// `e^{2πit}`.
pub fn turn(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * t)
}
