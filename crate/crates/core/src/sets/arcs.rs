//! Closed arcs and finite arc unions on the circle, in normalized turns.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Closed arc `{e^{2πit} : start ≤ t ≤ start + len}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Arc {
    start: f64,
    len: f64,
}

impl Arc {
    /// Arc of length `len ∈ [0, 1]` starting at `start` (reduced mod 1).
    pub fn new(start: f64, len: f64) -> Result<Self> {
        if !start.is_finite() || !len.is_finite() || !(0.0..=1.0).contains(&len) {
            return Err(Error::Domain(format!(
                "bad arc: start {start}, length {len}"
            )));
        }
        Ok(Self {
            start: start.rem_euclid(1.0),
            len,
        })
    }

    /// Arc running counterclockwise from `a` to `b`. `[0, 1]` is the full circle.
    pub fn from_endpoints(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("bad arc endpoints [{a}, {b}]")));
        }
        let len = if b - a >= 1.0 {
            1.0
        } else {
            (b - a).rem_euclid(1.0)
        };
        Self::new(a, len)
    }

    pub fn full() -> Self {
        Self {
            start: 0.0,
            len: 1.0,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn len(&self) -> f64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0.0
    }

    /// End point, possibly beyond 1.
    pub fn end(&self) -> f64 {
        self.start + self.len
    }

    pub fn midpoint(&self) -> f64 {
        (self.start + 0.5 * self.len).rem_euclid(1.0)
    }

    pub fn contains(&self, t: f64) -> bool {
        (t - self.start).rem_euclid(1.0) <= self.len || self.len >= 1.0
    }

    /// `∫_arc ζ̄^k dm`.
    pub fn fourier(&self, k: i64) -> Complex64 {
        if k == 0 {
            return Complex64::new(self.len, 0.0);
        }
        let kf = k as f64;
        let phase = Complex64::from_polar(1.0, -2.0 * PI * kf * self.midpoint());
        phase * ((PI * kf * self.len).sin() / (PI * kf))
    }

    /// Split into at most two pieces lying inside `[0, 1]`.
    fn intervals(&self) -> Vec<(f64, f64)> {
        if self.len >= 1.0 {
            return vec![(0.0, 1.0)];
        }
        let end = self.start + self.len;
        if end <= 1.0 {
            vec![(self.start, end)]
        } else {
            vec![(self.start, 1.0), (0.0, end - 1.0)]
        }
    }
}

impl TryFrom<[f64; 2]> for Arc {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Arc::from_endpoints(v[0], v[1])
    }
}

impl From<Arc> for [f64; 2] {
    fn from(a: Arc) -> Self {
        [a.start, a.start + a.len]
    }
}

/// Circular distance between two turn coordinates.
pub fn turn_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Finite union of closed arcs, kept as sorted disjoint intervals of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Arc>", into = "Vec<Arc>")]
pub struct ArcUnion {
    intervals: Vec<(f64, f64)>,
}

impl From<Vec<Arc>> for ArcUnion {
    fn from(arcs: Vec<Arc>) -> Self {
        ArcUnion::new(&arcs)
    }
}

impl From<ArcUnion> for Vec<Arc> {
    fn from(u: ArcUnion) -> Self {
        u.arcs()
    }
}

impl ArcUnion {
    pub fn new(arcs: &[Arc]) -> Self {
        let mut iv: Vec<(f64, f64)> = arcs
            .iter()
            .filter(|a| !a.is_empty())
            .flat_map(|a| a.intervals())
            .collect();
        iv.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
        for (a, b) in iv {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Self { intervals: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self::new(&[Arc::full()])
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0] == (0.0, 1.0)
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// The union as circle arcs, joining the pieces that meet across `t = 0`.
    pub fn arcs(&self) -> Vec<Arc> {
        let iv = &self.intervals;
        if iv.is_empty() {
            return Vec::new();
        }
        if self.is_full() {
            return vec![Arc::full()];
        }
        let wraps = iv.len() > 1 && iv[0].0 == 0.0 && iv[iv.len() - 1].1 == 1.0;
        let mut out = Vec::with_capacity(iv.len());
        let inner = if wraps { &iv[1..iv.len() - 1] } else { &iv[..] };
        for &(a, b) in inner {
            out.push(Arc {
                start: a,
                len: b - a,
            });
        }
        if wraps {
            let (a, _) = iv[iv.len() - 1];
            out.push(Arc {
                start: a,
                len: (1.0 - a) + iv[0].1,
            });
        }
        out
    }

    /// Lengths of the complementary open arcs.
    pub fn gap_lengths(&self) -> Vec<f64> {
        if self.is_empty() {
            return vec![1.0];
        }
        if self.is_full() {
            return Vec::new();
        }
        let iv = &self.intervals;
        let mut gaps: Vec<f64> = iv
            .windows(2)
            .map(|w| w[1].0 - w[0].1)
            .filter(|g| *g > 0.0)
            .collect();
        let wrap = (1.0 - iv[iv.len() - 1].1) + iv[0].0;
        if wrap > 0.0 {
            gaps.push(wrap);
        }
        gaps
    }

    /// Closure of the complement.
    pub fn complement(&self) -> ArcUnion {
        if self.is_empty() {
            return Self::full();
        }
        let iv = &self.intervals;
        let mut pieces = Vec::new();
        for w in iv.windows(2) {
            if w[1].0 > w[0].1 {
                pieces.push(Arc {
                    start: w[0].1,
                    len: w[1].0 - w[0].1,
                });
            }
        }
        let last = iv[iv.len() - 1].1;
        let wrap = (1.0 - last) + iv[0].0;
        if wrap > 0.0 {
            pieces.push(Arc {
                start: last.rem_euclid(1.0),
                len: wrap,
            });
        }
        Self::new(&pieces)
    }

    pub fn contains(&self, t: f64) -> bool {
        let t = t.rem_euclid(1.0);
        let i = self.intervals.partition_point(|iv| iv.0 <= t);
        i > 0 && t <= self.intervals[i - 1].1
    }

    /// Circular distance from `t` to the union (0 inside, 0.5 for the empty set).
    pub fn distance(&self, t: f64) -> f64 {
        if self.is_empty() {
            return 0.5;
        }
        let t = t.rem_euclid(1.0);
        if self.contains(t) {
            return 0.0;
        }
        let n = self.intervals.len();
        let i = self.intervals.partition_point(|iv| iv.0 <= t);
        let prev = self.intervals[(i + n - 1) % n];
        let next = self.intervals[i % n];
        turn_distance(t, prev.1).min(turn_distance(t, next.0))
    }

    /// `∫_union ζ̄^k dm`.
    pub fn fourier(&self, k: i64) -> Complex64 {
        self.intervals
            .iter()
            .map(|&(a, b)| {
                Arc {
                    start: a,
                    len: b - a,
                }
                .fourier(k)
            })
            .sum()
    }

    pub fn intersects(&self, other: &ArcUnion) -> bool {
        self.intervals
            .iter()
            .any(|&(a, b)| other.intervals.iter().any(|&(c, d)| a.max(c) <= b.min(d)))
    }

    pub fn intersection(&self, other: &ArcUnion) -> ArcUnion {
        let (x, y) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < x.len() && j < y.len() {
            let (lo, hi) = (x[i].0.max(y[j].0), x[i].1.min(y[j].1));
            if hi > lo {
                out.push((lo, hi));
            }
            if x[i].1 < y[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { intervals: out }
    }

    /// True when `self ⊆ other` up to `tol` turns at the endpoints.
    pub fn is_subset_of(&self, other: &ArcUnion, tol: f64) -> bool {
        self.intervals.iter().all(|&(a, b)| {
            other
                .intervals
                .iter()
                .any(|&(c, d)| a >= c - tol && b <= d + tol)
        })
    }
}
