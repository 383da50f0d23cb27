//! Beurling-Carleson entropy `Σ |A_k| log(1/|A_k|)` of complementary arcs.

use serde::{Deserialize, Serialize};

use crate::numeric::pairwise_sum;
use crate::sets::cantor::{CantorSpec, Schedule};
use crate::sets::CircleSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum EntropyClass {
    /// Finitely many complementary arcs; the sum is exact.
    Finite {
        value: f64,
    },
    /// Infinite sum known to converge; `limit` when it is computable.
    Convergent {
        limit: Option<f64>,
    },
    Divergent,
}

impl EntropyClass {
    pub fn is_finite_entropy(&self) -> bool {
        !matches!(self, EntropyClass::Divergent)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BcReport {
    /// Running sums; for Cantor sets entry `k - 1` includes stages `1..=k`.
    pub partial_sums: Vec<f64>,
    pub classification: EntropyClass,
    /// Lebesgue measure of the set.
    pub measure: f64,
    pub witness: String,
}

impl BcReport {
    /// A Beurling-Carleson set of measure zero.
    pub fn is_null_bc(&self) -> bool {
        self.measure == 0.0 && self.classification.is_finite_entropy()
    }
}

fn xlog_inv(len: f64) -> f64 {
    if len <= 0.0 {
        0.0
    } else {
        -len * len.ln()
    }
}

fn running(terms: &[f64]) -> Vec<f64> {
    terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect()
}

/// Entropy of the stage gaps of `c`, truncated at its depth.
fn cantor_entropy(c: &CantorSpec) -> BcReport {
    let l0 = c.base().len();
    let base_term = if l0 < 1.0 { xlog_inv(1.0 - l0) } else { 0.0 };
    let mut terms = vec![base_term];
    for s in c.stage_lengths(c.depth()) {
        let count_log = (s.stage as f64 - 1.0) * std::f64::consts::LN_2;
        terms.push((count_log + s.log_gap).exp() * -s.log_gap);
    }
    let mut sums = running(&terms);
    sums.remove(0);

    let (classification, witness) = match c.schedule() {
        Schedule::List { .. } => (
            EntropyClass::Finite {
                value: *sums.last().unwrap_or(&base_term),
            },
            "finitely many stages".to_string(),
        ),
        Schedule::Fixed { ratio } => {
            let r = *ratio;
            let q = 1.0 - r;
            let a = -(r * l0).ln();
            let b = -(0.5 * q).ln();
            let limit = base_term + l0 * (a + b * q / r);
            (
                EntropyClass::Convergent { limit: Some(limit) },
                format!(
                    "fixed ratio {r}: stage terms decay like (1-r)^k·k, geometric series converges"
                ),
            )
        }
        Schedule::Geometric { r0, q } => {
            // Terms decay like (r0 q^k)·k; sum until they vanish at f64 precision.
            let deep = c
                .with_depth(c.depth().max(super::cantor::MAX_DEPTH))
                .expect("valid depth");
            let mut tail = vec![base_term];
            for s in deep.stage_lengths(deep.depth()) {
                let count_log = (s.stage as f64 - 1.0) * std::f64::consts::LN_2;
                let t = (count_log + s.log_gap).exp() * -s.log_gap;
                if !(t >= 1e-20) {
                    break;
                }
                tail.push(t);
            }
            (
                EntropyClass::Convergent {
                    limit: Some(pairwise_sum(&tail)),
                },
                format!("geometric ratios r0={r0}, q={q}: Σ r_k < ∞ and stage terms decay geometrically"),
            )
        }
        Schedule::Power { c: cc, p } => {
            let p = *p;
            if (1.0..=2.0).contains(&p) {
                (
                    EntropyClass::Divergent,
                    format!("power ratios c/k^p with c={cc}, p={p} ∈ [1, 2]: stage terms decay like k^(1-p) or slower"),
                )
            } else {
                (
                    EntropyClass::Convergent { limit: None },
                    format!("power ratios c/k^p with c={cc}, p={p} outside [1, 2]: stage terms are summable"),
                )
            }
        }
    };
    BcReport {
        partial_sums: sums,
        classification,
        measure: c.measure(),
        witness,
    }
}

pub fn bc_entropy(set: &CircleSet) -> BcReport {
    match set {
        CircleSet::Arcs { arcs } => {
            let mut gaps = arcs.gap_lengths();
            gaps.sort_by(|a, b| b.total_cmp(a));
            let terms: Vec<f64> = gaps.iter().map(|&l| xlog_inv(l)).collect();
            let value = pairwise_sum(&terms);
            BcReport {
                partial_sums: running(&terms),
                classification: EntropyClass::Finite { value },
                measure: arcs.measure(),
                witness: format!("{} complementary arcs", gaps.len()),
            }
        }
        CircleSet::Cantor(c) => cantor_entropy(c),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flag", rename_all = "snake_case")]
pub enum BcSubsetFlag {
    Yes,
    No,
    OutsideFamily { reason: String },
}

/// Does the set contain a Beurling-Carleson subset of positive measure?
/// Answered within the arc-union and Cantor families only.
pub fn contains_bc_subset_flag(set: &CircleSet) -> BcSubsetFlag {
    let report = bc_entropy(set);
    if report.measure <= 0.0 {
        return BcSubsetFlag::No;
    }
    match set {
        CircleSet::Arcs { .. } => BcSubsetFlag::Yes,
        CircleSet::Cantor(_) => {
            if report.classification.is_finite_entropy() {
                BcSubsetFlag::Yes
            } else {
                BcSubsetFlag::No
            }
        }
    }
}
