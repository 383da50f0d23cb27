//! Closed subsets of the circle, singular measures and Beurling-Carleson
//! entropy, plus the hypothesis checklists built on them.

pub mod arcs;
pub mod cantor;
pub mod classify;
pub mod entropy;
pub mod singular;

use serde::{Deserialize, Serialize};

pub use arcs::{Arc, ArcUnion};
pub use cantor::{CantorSpec, Schedule};
pub use classify::{carrier_and_support, corollary_classifier, Check, Prediction, Verdict};
pub use entropy::{bc_entropy, contains_bc_subset_flag, BcReport, BcSubsetFlag, EntropyClass};
pub use singular::{decompose_measure, Atom, CantorPart, Decomposition, SingularMeasureSpec};

/// Depth at which Cantor sets are materialized as arc unions for grid work.
pub const GRID_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CircleSet {
    Arcs { arcs: ArcUnion },
    Cantor(CantorSpec),
}

impl CircleSet {
    pub fn arcs(arcs: &[Arc]) -> Self {
        CircleSet::Arcs {
            arcs: ArcUnion::new(arcs),
        }
    }

    pub fn empty() -> Self {
        CircleSet::Arcs {
            arcs: ArcUnion::empty(),
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            CircleSet::Arcs { arcs } => arcs.measure(),
            CircleSet::Cantor(c) => c.measure(),
        }
    }

    /// Arc-union cover: exact for arc unions, a stage set for Cantor sets.
    pub fn materialize(&self) -> ArcUnion {
        match self {
            CircleSet::Arcs { arcs } => arcs.clone(),
            CircleSet::Cantor(c) => c
                .stage_set(c.depth().min(GRID_DEPTH))
                .expect("depth within cap"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_set_json() {
        let s: CircleSet = serde_json::from_str(r#"{"kind":"arcs","arcs":[[0.0,0.5]]}"#).unwrap();
        assert_eq!(s.measure(), 0.5);
        let c: CircleSet =
            serde_json::from_str(r#"{"kind":"cantor","ratio":0.5,"depth":4}"#).unwrap();
        assert_eq!(c.measure(), 0.0);
        assert!((c.materialize().measure() - 0.25f64.powi(4) * 16.0).abs() < 1e-15);
        let back: CircleSet = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
