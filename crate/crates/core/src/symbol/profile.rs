//! Boundary modulus profiles `ω` for the outer factor.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::sets::arcs::{Arc, ArcUnion};
use crate::sets::cantor::CantorSpec;
use crate::sets::{CircleSet, GRID_DEPTH};

/// Arc with a constant modulus on it, serialized as `[start, end, value]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ValuedArc {
    pub arc: Arc,
    pub value: f64,
}

impl TryFrom<[f64; 3]> for ValuedArc {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        Ok(ValuedArc {
            arc: Arc::from_endpoints(v[0], v[1])?,
            value: v[2],
        })
    }
}

impl From<ValuedArc> for [f64; 3] {
    fn from(v: ValuedArc) -> Self {
        let [a, b]: [f64; 2] = v.arc.into();
        [a, b, v.value]
    }
}

fn one() -> f64 {
    1.0
}

/// Closed-form or sampled description of `ω = |b₀|` on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OuterProfile {
    Constant {
        value: f64,
    },
    /// `value` on each listed arc, `default` elsewhere.
    Arcs {
        arcs: Vec<ValuedArc>,
        #[serde(default = "one")]
        default: f64,
    },
    /// `|cos(θ/2)|`, the modulus of `(1 + z)/2`.
    AbsCosHalf,
    /// `1 - height·φ` with `φ` a smooth bump supported on `arc`, peak 1.
    Bump {
        arc: Arc,
        height: f64,
    },
    /// `value` on a Cantor set, 1 elsewhere.
    CantorIndicator {
        set: CantorSpec,
        value: f64,
    },
    /// `Δ² = amplitude·exp(-1/d^gamma)`, `d` the radian distance to a Cantor set.
    CantorGap {
        set: CantorSpec,
        amplitude: f64,
        gamma: f64,
    },
    /// `Δ = amplitude·d`, `d` the radian distance to a Cantor set.
    SetDistance {
        set: CantorSpec,
        amplitude: f64,
    },
    /// Values at equispaced nodes `j/L`, held constant on `[j/L, (j+1)/L)`.
    Samples {
        samples: Vec<f64>,
    },
}

impl Default for OuterProfile {
    fn default() -> Self {
        OuterProfile::Constant { value: 1.0 }
    }
}

fn in_unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

/// Smooth bump on `(-1, 1)` with `φ(0) = 1`.
pub fn bump(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - x * x)).exp()
    }
}

impl OuterProfile {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        match self {
            OuterProfile::Constant { value } if !in_unit(*value) => {
                bad(format!("modulus {value} outside [0, 1]"))
            }
            OuterProfile::Arcs { arcs, default } => {
                if !in_unit(*default) {
                    return bad(format!("default modulus {default} outside [0, 1]"));
                }
                if let Some(v) = arcs.iter().find(|v| !in_unit(v.value)) {
                    return bad(format!("arc modulus {} outside [0, 1]", v.value));
                }
                let total: f64 = arcs.iter().map(|v| v.arc.len()).sum();
                let union = ArcUnion::new(&arcs.iter().map(|v| v.arc).collect::<Vec<_>>());
                if (union.measure() - total).abs() > 1e-12 {
                    return bad("profile arcs overlap".into());
                }
                Ok(())
            }
            OuterProfile::Bump { height, .. } if !(0.0..1.0).contains(height) => {
                bad(format!("bump height {height} must lie in [0, 1)"))
            }
            OuterProfile::CantorIndicator { value, .. } if !in_unit(*value) => {
                bad(format!("modulus {value} outside [0, 1]"))
            }
            OuterProfile::CantorGap {
                amplitude, gamma, ..
            } => {
                if !in_unit(*amplitude) || !(*gamma > 0.0) {
                    return bad(format!(
                        "need amplitude in [0, 1] and gamma > 0, got {amplitude}, {gamma}"
                    ));
                }
                Ok(())
            }
            OuterProfile::SetDistance { amplitude, .. }
                if !(0.0..=1.0 / PI).contains(amplitude) =>
            {
                bad(format!(
                    "amplitude {amplitude} must lie in [0, 1/π] so that Δ ≤ 1"
                ))
            }
            OuterProfile::Samples { samples } => {
                if samples.is_empty() {
                    return bad("empty modulus samples".into());
                }
                if let Some(v) = samples.iter().find(|v| !v.is_finite() || !in_unit(**v)) {
                    return bad(format!("sampled modulus {v} outside [0, 1]"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Cantor set the profile is built around, if any.
    pub fn cantor_set(&self) -> Option<&CantorSpec> {
        match self {
            OuterProfile::CantorIndicator { set, .. }
            | OuterProfile::CantorGap { set, .. }
            | OuterProfile::SetDistance { set, .. } => Some(set),
            _ => None,
        }
    }
}

/// Profile with its Cantor cover materialized, ready for pointwise evaluation.
#[derive(Debug, Clone)]
pub struct PreparedProfile {
    profile: OuterProfile,
    cover: Option<ArcUnion>,
}

impl PreparedProfile {
    pub fn new(profile: &OuterProfile) -> Result<Self> {
        profile.validate()?;
        let cover = profile
            .cantor_set()
            .map(|c| c.stage_set(c.depth().min(GRID_DEPTH)))
            .transpose()?;
        Ok(Self {
            profile: profile.clone(),
            cover,
        })
    }

    pub fn profile(&self) -> &OuterProfile {
        &self.profile
    }

    fn radian_distance(&self, t: f64) -> f64 {
        TAU * self.cover.as_ref().expect("cantor profile").distance(t)
    }

    /// `ω(e^{2πit})`.
    pub fn omega(&self, t: f64) -> f64 {
        let t = t.rem_euclid(1.0);
        match &self.profile {
            OuterProfile::Constant { value } => *value,
            OuterProfile::Arcs { arcs, default } => arcs
                .iter()
                .find(|v| v.arc.contains(t))
                .map_or(*default, |v| v.value),
            OuterProfile::AbsCosHalf => (PI * t).cos().abs(),
            OuterProfile::Bump { arc, height } => {
                let off = (t - arc.start()).rem_euclid(1.0);
                if off >= arc.len() {
                    1.0
                } else {
                    1.0 - height * bump(2.0 * off / arc.len() - 1.0)
                }
            }
            OuterProfile::CantorIndicator { value, .. } => {
                if self.cover.as_ref().expect("cantor profile").contains(t) {
                    *value
                } else {
                    1.0
                }
            }
            OuterProfile::CantorGap {
                amplitude, gamma, ..
            } => {
                let d = self.radian_distance(t);
                let delta2 = if d == 0.0 {
                    0.0
                } else {
                    amplitude * (-d.powf(-gamma)).exp()
                };
                (1.0 - delta2).sqrt()
            }
            OuterProfile::SetDistance { amplitude, .. } => {
                let delta = amplitude * self.radian_distance(t);
                (1.0 - delta * delta).max(0.0).sqrt()
            }
            OuterProfile::Samples { samples } => {
                let l = samples.len();
                samples[((t * l as f64).floor() as usize).min(l - 1)]
            }
        }
    }

    /// `ω` at the `m` grid nodes.
    pub fn on_grid(&self, m: usize) -> Vec<f64> {
        if let OuterProfile::Samples { samples } = &self.profile {
            if samples.len() == m {
                return samples.clone();
            }
        }
        (0..m).map(|k| self.omega(k as f64 / m as f64)).collect()
    }

    /// `ω` as a step function `(default, [(set, value)])` when it is one.
    pub fn steps(&self, m: usize) -> Option<(f64, Vec<(ArcUnion, f64)>)> {
        match &self.profile {
            OuterProfile::Constant { value } => Some((*value, Vec::new())),
            OuterProfile::Arcs { arcs, default } => Some((
                *default,
                arcs.iter()
                    .map(|v| (ArcUnion::new(&[v.arc]), v.value))
                    .collect(),
            )),
            OuterProfile::CantorIndicator { value, .. } => Some((
                1.0,
                vec![(self.cover.clone().expect("cantor profile"), *value)],
            )),
            OuterProfile::Samples { samples } if samples.len() != m => {
                let l = samples.len() as f64;
                Some((
                    0.0,
                    samples
                        .iter()
                        .enumerate()
                        .map(|(j, &v)| {
                            (
                                ArcUnion::new(&[Arc::new(j as f64 / l, 1.0 / l).expect("cell")]),
                                v,
                            )
                        })
                        .collect(),
                ))
            }
            _ => None,
        }
    }

    /// Declared carrier `{|c|ω < 1}` and support for scale modulus `c_abs`.
    /// `None` when the profile gives no closed-form carrier.
    pub fn declared_sets(&self, c_abs: f64) -> Option<(CircleSet, CircleSet)> {
        let full = CircleSet::Arcs {
            arcs: ArcUnion::full(),
        };
        if c_abs < 1.0 {
            return Some((full.clone(), full));
        }
        let sets = match &self.profile {
            OuterProfile::Constant { value } => {
                if *value < 1.0 {
                    (full.clone(), full)
                } else {
                    (CircleSet::empty(), CircleSet::empty())
                }
            }
            OuterProfile::Arcs { arcs, default } => {
                let mut pieces: Vec<Arc> = arcs
                    .iter()
                    .filter(|v| v.value < 1.0)
                    .map(|v| v.arc)
                    .collect();
                if *default < 1.0 {
                    let all: Vec<Arc> = arcs.iter().map(|v| v.arc).collect();
                    pieces.extend(ArcUnion::new(&all).complement().arcs());
                }
                let e = CircleSet::Arcs {
                    arcs: ArcUnion::new(&pieces),
                };
                (e.clone(), e)
            }
            OuterProfile::AbsCosHalf => (full.clone(), full),
            OuterProfile::Bump { arc, height } => {
                if *height > 0.0 {
                    let e = CircleSet::arcs(&[*arc]);
                    (e.clone(), e)
                } else {
                    (CircleSet::empty(), CircleSet::empty())
                }
            }
            OuterProfile::CantorIndicator { set, value } => {
                if *value < 1.0 {
                    let e = CircleSet::Cantor(set.clone());
                    (e.clone(), e)
                } else {
                    (CircleSet::empty(), CircleSet::empty())
                }
            }
            OuterProfile::CantorGap { amplitude, .. }
            | OuterProfile::SetDistance { amplitude, .. } => {
                if *amplitude > 0.0 {
                    let cover = self.cover.clone().expect("cantor profile");
                    (
                        CircleSet::Arcs {
                            arcs: cover.complement(),
                        },
                        full,
                    )
                } else {
                    (CircleSet::empty(), CircleSet::empty())
                }
            }
            OuterProfile::Samples { .. } => return None,
        };
        Some(sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prep(json: &str) -> PreparedProfile {
        PreparedProfile::new(&serde_json::from_str(json).unwrap()).unwrap()
    }

    #[test]
    fn arcs_profile_values_and_carrier() {
        let p = prep(r#"{"kind":"arcs","arcs":[[0.1,0.3,0.5]]}"#);
        assert_eq!(p.omega(0.2), 0.5);
        assert_eq!(p.omega(0.6), 1.0);
        let (e, f) = p.declared_sets(1.0).unwrap();
        assert!((e.measure() - 0.2).abs() < 1e-15);
        assert_eq!(e, f);
    }

    #[test]
    fn rejects_out_of_range_moduli() {
        for bad in [
            r#"{"kind":"constant","value":1.5}"#,
            r#"{"kind":"arcs","arcs":[[0.0,0.3,0.5],[0.2,0.4,0.5]]}"#,
            r#"{"kind":"samples","samples":[0.5,1.2]}"#,
            r#"{"kind":"set_distance","set":{"ratio":0.3333333333333333,"depth":4},"amplitude":1.0}"#,
        ] {
            let p: OuterProfile = serde_json::from_str(bad).unwrap();
            assert!(p.validate().is_err(), "{bad}");
        }
    }

    #[test]
    fn abs_cos_half() {
        let p = prep(r#"{"kind":"abs_cos_half"}"#);
        for k in 0..16 {
            let t = k as f64 / 16.0;
            let z = crate::numeric::turn(t);
            assert!((p.omega(t) - ((1.0 + z).norm() / 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn set_distance_vanishes_on_the_set_only() {
        let p = prep(
            r#"{"kind":"set_distance","set":{"ratio":0.3333333333333333,"depth":6},"amplitude":0.3}"#,
        );
        assert_eq!(p.omega(0.0), 1.0);
        assert!(p.omega(0.5) < 1.0);
        let (e, f) = p.declared_sets(1.0).unwrap();
        assert!(e.measure() > 0.9 && f.measure() == 1.0);
    }

    #[test]
    fn bump_is_smooth_and_supported_on_arc() {
        let p = prep(r#"{"kind":"bump","arc":[0.2,0.4],"height":0.5}"#);
        assert_eq!(p.omega(0.1), 1.0);
        assert!((p.omega(0.3) - 0.5).abs() < 1e-15);
    }
}
