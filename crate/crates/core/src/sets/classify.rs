//! Hypothesis checklists that predict whether `X_α` is dense in `H(b)`.
//!
//! Two sufficient conditions for non-density are tested (a carrier with no
//! Beurling-Carleson subset of positive measure; `ν_K` mass off the support of
//! `Δ`) together with the constructive recipe for density. All answers are
//! relative to the arc-union and Cantor families.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numeric::{pairwise_sum, EPS_FLOOR};
use crate::sets::arcs::ArcUnion;
use crate::sets::entropy::{bc_entropy, contains_bc_subset_flag, BcSubsetFlag};
use crate::sets::singular::{decompose_measure, SingularMeasureSpec, QUADRATURE_DEPTH};
use crate::sets::CircleSet;
use crate::symbol::profile::{OuterProfile, PreparedProfile};
use crate::symbol::{DeltaWeight, SymbolSpec};
use crate::xalpha::Alpha;

/// Declared `(E, F)` when known, otherwise the grid-detected sets.
pub fn carrier_and_support(delta: &DeltaWeight) -> (CircleSet, CircleSet) {
    (delta.carrier().clone(), delta.support().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Dense,
    NotDense,
    Indeterminate,
    OutsideFamily,
    /// The density recipe and a non-density hypothesis both held.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `None` when the check could not be evaluated.
    pub holds: Option<bool>,
    pub detail: String,
}

impl Check {
    fn new(name: &str, holds: Option<bool>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }

    fn is_true(&self) -> bool {
        self.holds == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub alpha: f64,
    pub prediction: Prediction,
    /// Carrier of positive measure containing no Beurling-Carleson set of
    /// positive measure.
    pub carrier_without_bc_subset: Check,
    /// `ν_K`-candidate mass off the closed support of `Δ`.
    pub nu_k_off_support: Check,
    /// Every item of the density recipe holds.
    pub density_recipe: Check,
    pub recipe_items: Vec<Check>,
    pub note: String,
}

/// Divergence threshold for the log-integrability test.
pub const LOG_DIVERGENCE: f64 = -50.0;
const MAX_SEPARATE_COMPONENTS: usize = 64;

/// Midpoint rule for `∫_S g dm` with about `n` nodes per unit of arc length
/// (at least one per arc).
fn midpoint_over(arcs: &ArcUnion, n: usize, g: &dyn Fn(f64) -> f64) -> f64 {
    let total = arcs.measure().max(f64::MIN_POSITIVE);
    let terms: Vec<f64> = arcs
        .arcs()
        .iter()
        .map(|a| {
            let k = ((n as f64 * a.len() / total).round() as usize).max(1);
            let h = a.len() / k as f64;
            let vals: Vec<f64> = (0..k)
                .map(|j| g(a.start() + (j as f64 + 0.5) * h) * h)
                .collect();
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&terms)
}

/// Log-integrability on `S` with a refinement check: divergence is declared
/// only when the refined value is below the threshold and still dropping.
fn log_integrable(arcs: &ArcUnion, n: usize, g: &dyn Fn(f64) -> f64) -> (bool, f64, f64) {
    let coarse = midpoint_over(arcs, n, g);
    let fine = midpoint_over(arcs, 2 * n, g);
    let divergent = fine < LOG_DIVERGENCE && fine < coarse;
    (!divergent, coarse, fine)
}

/// Mass of the `ν_K` candidate carried by stage arcs disjoint from `set`.
fn nu_k_mass_off(nu_k: &SingularMeasureSpec, set: &ArcUnion) -> f64 {
    nu_k.cantor
        .iter()
        .map(|p| {
            let arcs = p
                .set
                .stage_arcs(p.set.depth().min(QUADRATURE_DEPTH))
                .expect("depth within cap");
            let w = p.mass / arcs.len() as f64;
            arcs.iter()
                .filter(|a| !ArcUnion::new(&[**a]).intersects(set))
                .count() as f64
                * w
        })
        .sum()
}

pub fn corollary_classifier(spec: &SymbolSpec, alpha: f64) -> Result<Verdict> {
    let alpha = Alpha::positive(alpha)?.value();
    spec.validate()?;
    let c_abs = spec.scale.0.norm();
    let profile = PreparedProfile::new(&spec.outer)?;
    let note = "finite-family evidence, not a proof of density or non-density".to_string();

    let Some((e, f)) = profile.declared_sets(c_abs) else {
        let skip = |name: &str| {
            Check::new(
                name,
                None,
                "sampled modulus: carrier not in a supported family",
            )
        };
        return Ok(Verdict {
            alpha,
            prediction: Prediction::OutsideFamily,
            carrier_without_bc_subset: skip("carrier_without_bc_subset"),
            nu_k_off_support: skip("nu_k_off_support"),
            density_recipe: skip("density_recipe"),
            recipe_items: Vec::new(),
            note,
        });
    };

    let decomposition = decompose_measure(&spec.singular_measure())?;
    let e_measure = e.measure();

    let flag = contains_bc_subset_flag(&e);
    let hyp_carrier = match (&flag, e_measure > 0.0) {
        (BcSubsetFlag::No, true) => Check::new(
            "carrier_without_bc_subset",
            Some(true),
            format!("|E| = {e_measure:e} and E contains no positive-measure Beurling-Carleson set (family criterion)"),
        ),
        (BcSubsetFlag::OutsideFamily { reason }, _) => Check::new("carrier_without_bc_subset", None, reason.clone()),
        (_, false) => Check::new("carrier_without_bc_subset", Some(false), "carrier has measure zero"),
        _ => Check::new(
            "carrier_without_bc_subset",
            Some(false),
            "carrier contains a Beurling-Carleson set of positive measure",
        ),
    };

    let f_cover = f.materialize();
    let k_off_f = nu_k_mass_off(&decomposition.nu_k_candidate, &f_cover);
    let hyp_nu_k = Check::new(
        "nu_k_off_support",
        Some(k_off_f > 0.0),
        format!(
            "nu_K-candidate mass off F: {k_off_f:e} (total nu_K-candidate mass {:e})",
            decomposition.nu_k_mass
        ),
    );

    // Density recipe.
    let mut items = Vec::new();
    let cantor_null = profile
        .profile()
        .cantor_set()
        .is_some_and(|k| k.measure() == 0.0);
    let components: Vec<(String, CircleSet)> = match &e {
        _ if e_measure == 0.0 => Vec::new(),
        CircleSet::Arcs { .. }
            if cantor_null
                && matches!(
                    profile.profile(),
                    OuterProfile::CantorGap { .. } | OuterProfile::SetDistance { .. }
                ) =>
        {
            vec![(
                "T (E is the complement of a null set)".into(),
                CircleSet::Arcs {
                    arcs: ArcUnion::full(),
                },
            )]
        }
        CircleSet::Arcs { arcs } => arcs
            .arcs()
            .iter()
            .map(|a| {
                (
                    format!("arc [{}, {}]", a.start(), a.end()),
                    CircleSet::arcs(&[*a]),
                )
            })
            .collect(),
        CircleSet::Cantor(_) => vec![("Cantor carrier".into(), e.clone())],
    };
    if components.is_empty() {
        items.push(Check::new(
            "components_bc_positive",
            Some(false),
            "carrier is empty or null",
        ));
    } else {
        let bad: Vec<&String> = components
            .iter()
            .filter(|(_, s)| {
                let r = bc_entropy(s);
                !(r.measure > 0.0 && r.classification.is_finite_entropy())
            })
            .map(|(n, _)| n)
            .collect();
        items.push(Check::new(
            "components_bc_positive",
            Some(bad.is_empty()),
            if bad.is_empty() {
                format!(
                    "{} components, each a Beurling-Carleson set of positive measure",
                    components.len()
                )
            } else {
                format!("not Beurling-Carleson of positive measure: {bad:?}")
            },
        ));

        let c2 = c_abs * c_abs;
        let g = |t: f64| {
            let w = profile.omega(t);
            (1.0 - c2 * w * w).max(EPS_FLOOR).ln()
        };
        let detail;
        let ok;
        if components.len() <= MAX_SEPARATE_COMPONENTS {
            let results: Vec<(bool, f64, f64)> = components
                .iter()
                .map(|(_, s)| log_integrable(&s.materialize(), 256, &g))
                .collect();
            ok = results.iter().all(|r| r.0);
            let worst = results.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
            detail =
                format!("per component, midpoint n=256/512; smallest refined value {worst:.6e}");
        } else {
            let union = ArcUnion::new(
                &components
                    .iter()
                    .flat_map(|(_, s)| s.materialize().arcs())
                    .collect::<Vec<_>>(),
            );
            let r = log_integrable(&union, 1 << 15, &g);
            ok = r.0;
            detail = format!(
                "aggregate over {} components, values {:.6e} -> {:.6e}",
                components.len(),
                r.1,
                r.2
            );
        }
        items.push(Check::new("log_defect_integrable", Some(ok), detail));
    }

    let e_cover = e.materialize();
    let k_off_e = nu_k_mass_off(&decomposition.nu_k_candidate, &e_cover);
    items.push(Check::new(
        "nu_k_inside_carrier",
        Some(k_off_e == 0.0),
        format!("nu_K-candidate mass off E: {k_off_e:e}"),
    ));
    items.push(Check::new(
        "nu_c_arbitrary",
        Some(true),
        format!("nu_C mass {:e}; no condition", decomposition.nu_c_mass),
    ));
    items.push(Check::new(
        "blaschke_finite",
        Some(true),
        format!("{} zeros listed", spec.blaschke_zeros.len()),
    ));
    let recipe_ok = items.iter().all(Check::is_true);
    let recipe = Check::new(
        "density_recipe",
        Some(recipe_ok),
        if recipe_ok {
            "all recipe items hold"
        } else {
            "some recipe item fails"
        },
    );

    let not_dense = hyp_carrier.is_true() || hyp_nu_k.is_true();
    let prediction = match (recipe_ok, not_dense) {
        (true, true) => Prediction::Inconsistent,
        (true, false) => Prediction::Dense,
        (false, true) => Prediction::NotDense,
        (false, false) => Prediction::Indeterminate,
    };
    Ok(Verdict {
        alpha,
        prediction,
        carrier_without_bc_subset: hyp_carrier,
        nu_k_off_support: hyp_nu_k,
        density_recipe: recipe,
        recipe_items: items,
        note,
    })
}
