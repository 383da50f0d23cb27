//! Finite Blaschke products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero of multiplicity `mult`, serialized as `[re, im, mult]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlaschkeZero {
    pub z: Complex64,
    pub mult: u32,
}

impl BlaschkeZero {
    pub fn new(z: Complex64, mult: u32) -> Result<Self> {
        if !(z.norm() < 1.0) || mult == 0 {
            return Err(Error::Domain(format!(
                "Blaschke zero {z} (multiplicity {mult}) must lie in the open disk with positive multiplicity"
            )));
        }
        Ok(Self { z, mult })
    }

    pub fn simple(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im), 1)
    }

    fn factor(&self, z: Complex64) -> Complex64 {
        if self.z.norm() == 0.0 {
            return z;
        }
        let a = self.z;
        (a.norm() / a) * (a - z) / (1.0 - a.conj() * z)
    }
}

impl TryFrom<[f64; 3]> for BlaschkeZero {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        if v[2].fract() != 0.0 || v[2] < 1.0 || v[2] > u32::MAX as f64 {
            return Err(Error::Domain(format!(
                "multiplicity {} must be a positive integer",
                v[2]
            )));
        }
        Self::new(Complex64::new(v[0], v[1]), v[2] as u32)
    }
}

impl From<BlaschkeZero> for [f64; 3] {
    fn from(b: BlaschkeZero) -> Self {
        [b.z.re, b.z.im, b.mult as f64]
    }
}

pub fn blaschke_at(zeros: &[BlaschkeZero], z: Complex64) -> Complex64 {
    zeros.iter().fold(Complex64::new(1.0, 0.0), |acc, b| {
        acc * b.factor(z).powu(b.mult)
    })
}

/// `B(z)` at each point of the closed disk.
pub fn blaschke_eval(zeros: &[BlaschkeZero], points: &[Complex64]) -> Result<Vec<Complex64>> {
    if let Some(b) = zeros.iter().find(|b| !(b.z.norm() < 1.0)) {
        return Err(Error::Domain(format!(
            "Blaschke zero {} is not in the open disk",
            b.z
        )));
    }
    if let Some(p) = points.iter().find(|p| p.norm() > 1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "evaluation point {p} outside the closed disk"
        )));
    }
    Ok(points.iter().map(|&z| blaschke_at(zeros, z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::turn;

    #[test]
    fn examples() {
        let z0 = [BlaschkeZero::simple(0.0, 0.0).unwrap()];
        assert_eq!(
            blaschke_eval(&z0, &[Complex64::new(0.5, 0.0)]).unwrap()[0],
            Complex64::new(0.5, 0.0)
        );
        let zh = [BlaschkeZero::simple(0.5, 0.0).unwrap()];
        assert!((blaschke_eval(&zh, &[Complex64::new(0.0, 0.0)]).unwrap()[0] - 0.5).norm() < 1e-16);
    }

    #[test]
    fn unimodular_on_circle() {
        let zs = [
            BlaschkeZero::simple(0.5, 0.0).unwrap(),
            BlaschkeZero::new(Complex64::new(0.0, -0.3), 2).unwrap(),
        ];
        let pts: Vec<Complex64> = (0..256).map(|k| turn(k as f64 / 256.0)).collect();
        for v in blaschke_eval(&zs, &pts).unwrap() {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_zeros() {
        assert!(BlaschkeZero::simple(1.0, 0.0).is_err());
        assert!(serde_json::from_str::<BlaschkeZero>("[0.1, 0.2, 1.5]").is_err());
        let b: BlaschkeZero = serde_json::from_str("[0.1, 0.2, 2]").unwrap();
        assert_eq!(b.mult, 2);
    }
}
