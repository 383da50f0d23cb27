//! Cantor-type sets built by repeatedly removing a centered open gap.
//!
//! At stage `k` every surviving arc of length `I` loses a central gap of
//! length `r_k · I`, leaving two arcs of length `I (1 - r_k) / 2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::arcs::{Arc, ArcUnion};

/// Ratio sequence `r_1, r_2, …` of removed-gap fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    /// `r_k = ratio`.
    Fixed { ratio: f64 },
    /// `r_k = r0 · q^{k-1}`.
    Geometric { r0: f64, q: f64 },
    /// `r_k = c / k^p`.
    Power { c: f64, p: f64 },
    /// Finitely many stages with the listed ratios.
    List { ratios: Vec<f64> },
}

fn unit_open(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            Schedule::Fixed { ratio } => unit_open(*ratio),
            Schedule::Geometric { r0, q } => unit_open(*r0) && unit_open(*q),
            Schedule::Power { c, p } => unit_open(*c) && p.is_finite() && *p > 0.0,
            Schedule::List { ratios } => !ratios.is_empty() && ratios.iter().all(|r| unit_open(*r)),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid Cantor schedule {self:?}")))
        }
    }

    /// `r_k` for `k ≥ 1`.
    pub fn ratio(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        match self {
            Schedule::Fixed { ratio } => *ratio,
            Schedule::Geometric { r0, q } => r0 * q.powi(k as i32 - 1),
            Schedule::Power { c, p } => c / (k as f64).powf(*p),
            Schedule::List { ratios } => ratios[k - 1],
        }
    }

    pub fn stage_count(&self) -> Option<usize> {
        match self {
            Schedule::List { ratios } => Some(ratios.len()),
            _ => None,
        }
    }

    /// `ln Π_k (1 - r_k)` over all stages.
    pub fn log_survival(&self) -> f64 {
        match self {
            Schedule::Fixed { .. } => f64::NEG_INFINITY,
            Schedule::List { ratios } => ratios.iter().map(|r| (-r).ln_1p()).sum(),
            Schedule::Geometric { .. } => {
                let mut s = 0.0;
                let mut k = 1;
                loop {
                    let r = self.ratio(k);
                    if r < 1e-18 {
                        break s;
                    }
                    s += (-r).ln_1p();
                    k += 1;
                }
            }
            Schedule::Power { c, p } => {
                if *p <= 1.0 {
                    return f64::NEG_INFINITY;
                }
                const K: usize = 100_000;
                let head: f64 = (1..=K).map(|k| (-self.ratio(k)).ln_1p()).sum();
                // Σ_{k>K} ln(1 - c k^{-p}) ≈ -c K^{1-p}/(p-1) - c K^{-p}/2
                let kf = K as f64;
                head - c * kf.powf(1.0 - p) / (p - 1.0) + 0.5 * c * kf.powf(-p)
            }
        }
    }
}

/// Parameters of a Cantor-type subset of the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CantorRaw", into = "CantorRaw")]
pub struct CantorSpec {
    base: Arc,
    schedule: Schedule,
    depth: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CantorRaw {
    #[serde(default = "full_arc")]
    base_arc: Arc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schedule: Option<Schedule>,
    depth: usize,
}

fn full_arc() -> Arc {
    Arc::full()
}

impl TryFrom<CantorRaw> for CantorSpec {
    type Error = Error;
    fn try_from(raw: CantorRaw) -> Result<Self> {
        let schedule = match (raw.ratio, raw.schedule) {
            (Some(ratio), None) => Schedule::Fixed { ratio },
            (None, Some(s)) => s,
            (Some(_), Some(_)) => {
                return Err(Error::Domain(
                    "give either `ratio` or `schedule`, not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Domain(
                    "Cantor set needs `ratio` or `schedule`".into(),
                ))
            }
        };
        CantorSpec::new(raw.base_arc, schedule, raw.depth)
    }
}

impl From<CantorSpec> for CantorRaw {
    fn from(c: CantorSpec) -> Self {
        let (ratio, schedule) = match c.schedule {
            Schedule::Fixed { ratio } => (Some(ratio), None),
            s => (None, Some(s)),
        };
        CantorRaw {
            base_arc: c.base,
            ratio,
            schedule,
            depth: c.depth,
        }
    }
}

/// Cap on materialized stage depth (`2^depth` arcs).
pub const MAX_MATERIALIZED_DEPTH: usize = 22;
/// Cap on entropy depth; lengths are tracked in log space so this is generous.
pub const MAX_DEPTH: usize = 100_000;

/// Per-stage lengths in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageLengths {
    pub stage: usize,
    /// `ln` of each gap removed at this stage (there are `2^{stage-1}` of them).
    pub log_gap: f64,
    /// `ln` of each surviving arc after this stage.
    pub log_arc: f64,
}

impl CantorSpec {
    pub fn new(base: Arc, schedule: Schedule, depth: usize) -> Result<Self> {
        schedule.validate()?;
        if base.is_empty() {
            return Err(Error::Domain("Cantor base arc is empty".into()));
        }
        let depth = match schedule.stage_count() {
            Some(n) => n,
            None => depth,
        };
        if depth == 0 || depth > MAX_DEPTH {
            return Err(Error::Domain(format!(
                "Cantor depth must be in 1..={MAX_DEPTH}, got {depth}"
            )));
        }
        Ok(Self {
            base,
            schedule,
            depth,
        })
    }

    pub fn fixed(base: Arc, ratio: f64, depth: usize) -> Result<Self> {
        Self::new(base, Schedule::Fixed { ratio }, depth)
    }

    /// Middle-thirds set on the whole circle.
    pub fn middle_thirds(depth: usize) -> Self {
        Self::fixed(Arc::full(), 1.0 / 3.0, depth).expect("valid parameters")
    }

    pub fn base(&self) -> Arc {
        self.base
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        Self::new(self.base, self.schedule.clone(), depth)
    }

    /// True when the set is a finite stage (list schedules).
    pub fn is_finite_stage(&self) -> bool {
        self.schedule.stage_count().is_some()
    }

    pub fn stage_lengths(&self, depth: usize) -> Vec<StageLengths> {
        let depth = self.schedule.stage_count().map_or(depth, |n| depth.min(n));
        let mut log_arc = self.base.len().ln();
        let mut out = Vec::with_capacity(depth);
        for k in 1..=depth {
            let r = self.schedule.ratio(k);
            let log_gap = r.ln() + log_arc;
            log_arc += (-r).ln_1p() - std::f64::consts::LN_2;
            out.push(StageLengths {
                stage: k,
                log_gap,
                log_arc,
            });
        }
        out
    }

    /// Lebesgue measure of the limit set (of the final stage for list schedules).
    pub fn measure(&self) -> f64 {
        self.base.len() * self.schedule.log_survival().exp()
    }

    /// Measure of the depth-`d` stage set.
    pub fn stage_measure(&self, depth: usize) -> f64 {
        let depth = self.schedule.stage_count().map_or(depth, |n| depth.min(n));
        let s: f64 = (1..=depth).map(|k| (-self.schedule.ratio(k)).ln_1p()).sum();
        self.base.len() * s.exp()
    }

    /// The `2^d` closed arcs of stage `d`.
    pub fn stage_arcs(&self, depth: usize) -> Result<Vec<Arc>> {
        let depth = self.schedule.stage_count().map_or(depth, |n| depth.min(n));
        if depth > MAX_MATERIALIZED_DEPTH {
            return Err(Error::Domain(format!(
                "refusing to materialize 2^{depth} arcs (cap {MAX_MATERIALIZED_DEPTH})"
            )));
        }
        let mut arcs = vec![(self.base.start(), self.base.len())];
        for k in 1..=depth {
            let r = self.schedule.ratio(k);
            let mut next = Vec::with_capacity(2 * arcs.len());
            for (s, len) in arcs {
                let child = len * (1.0 - r) * 0.5;
                next.push((s, child));
                next.push((s + len - child, child));
            }
            arcs = next;
        }
        arcs.into_iter().map(|(s, l)| Arc::new(s, l)).collect()
    }

    pub fn stage_set(&self, depth: usize) -> Result<ArcUnion> {
        Ok(ArcUnion::new(&self.stage_arcs(depth)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_thirds_stage_two() {
        let c = CantorSpec::fixed(Arc::from_endpoints(0.0, 1.0).unwrap(), 1.0 / 3.0, 2).unwrap();
        let arcs = c.stage_arcs(2).unwrap();
        assert_eq!(arcs.len(), 4);
        let expect = [0.0, 2.0 / 9.0, 6.0 / 9.0, 8.0 / 9.0];
        for (a, e) in arcs.iter().zip(expect) {
            assert!((a.start() - e).abs() < 1e-15);
            assert!((a.len() - 1.0 / 9.0).abs() < 1e-15);
        }
        assert!((c.stage_measure(2) - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(c.measure(), 0.0);
    }

    #[test]
    fn log_lengths_agree_with_materialized_arcs() {
        let c = CantorSpec::new(
            Arc::new(0.1, 0.5).unwrap(),
            Schedule::Power { c: 0.6, p: 1.5 },
            10,
        )
        .unwrap();
        let arcs = c.stage_arcs(10).unwrap();
        let lens = c.stage_lengths(10);
        assert!((arcs[0].len().ln() - lens[9].log_arc).abs() < 1e-12);
    }

    #[test]
    fn fat_cantor_measure() {
        let g = CantorSpec::new(Arc::full(), Schedule::Geometric { r0: 0.5, q: 0.5 }, 20).unwrap();
        let direct: f64 = (1..60).map(|k| 1.0 - 0.5f64.powi(k)).product();
        assert!((g.measure() - direct).abs() < 1e-14);
        let p = CantorSpec::new(Arc::full(), Schedule::Power { c: 0.5, p: 2.0 }, 20).unwrap();
        // Π (1 - 1/(2k²)) = sin(π/√2)·√2/π
        let exact = (std::f64::consts::PI / 2f64.sqrt()).sin() * 2f64.sqrt() / std::f64::consts::PI;
        assert!((p.measure() - exact).abs() < 1e-9);
    }

    #[test]
    fn json_accepts_ratio_or_schedule() {
        let a: CantorSpec =
            serde_json::from_str(r#"{"base_arc":[0,1],"ratio":0.3333333333333333,"depth":5}"#)
                .unwrap();
        assert_eq!(a.schedule(), &Schedule::Fixed { ratio: 1.0 / 3.0 });
        let b: CantorSpec =
            serde_json::from_str(r#"{"schedule":{"kind":"power","c":0.5,"p":1.5},"depth":8}"#)
                .unwrap();
        assert_eq!(b.base(), Arc::full());
        assert!(serde_json::from_str::<CantorSpec>(r#"{"depth":3}"#).is_err());
        assert!(serde_json::from_str::<CantorSpec>(r#"{"ratio":1.5,"depth":3}"#).is_err());
        let back: CantorSpec = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
    }
}
