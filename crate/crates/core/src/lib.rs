//! Numerical laboratory for de Branges-Rovnyak spaces `H(b)`.
//!
//! The crate builds the computable objects around the smooth-approximation
//! problem in `H(b)`: symbols `b = c·B·S_ν·b₀` and their boundary weight
//! `Δ = sqrt(1 - |b|²)`, the coefficient spaces `X_α`, the measure
//! `μ(b, α) = (1 - |z|²)^{α-1} dA + Δ² dm` with its monomial Gram matrix,
//! the reproducing kernel of `H(b)` and the isometric embedding
//! `J: H(b) → H² ⊕ L²(E)`, and Beurling-Carleson set machinery.
//!
//! Every infinite-dimensional statement is probed through finite-degree
//! surrogates: distance sequences, residuals and checklists. Nothing here
//! decides density; outputs are finite-degree evidence.
//!
//! Conventions: `dm` and `dA` both have total mass one. Angles are stored as
//! normalized turns `t ∈ [0, 1)` with `ζ = e^{2πit}`. Grids have `M` equispaced
//! nodes `ζ_k = e^{2πik/M}`, frequencies `0..M/2` count as nonnegative and
//! `M/2..M` as negative (`-M/2..-1`).

// `!(x > 0.0)` style checks are deliberate: they reject NaN along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod embedding;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod moments;
pub mod numeric;
pub mod sets;
pub mod symbol;
pub mod xalpha;

pub use num_complex::Complex64;

pub use crate::embedding::{
    annihilator_check, division_diagnostic, hardy_project, hardy_project_minus, hb_kernel,
    j_embedding_solve, kernel_gram, kernel_pair, DivisionReport, JPair, JSolveOptions,
    JSolveReport, JTarget, KernelGram,
};
pub use crate::error::{Error, Result};
pub use crate::grid::{BoundaryGrid, DiskSeries};
pub use crate::moments::{
    build_mu, cyclicity_indicator, distance_to_poly_span, gram_matrix, splitting_indicator,
    BoundaryTarget, CyclicityOptions, CyclicityReport, DecayFit, DistanceSequence, MomentMatrix,
    MuMeasure,
};
pub use crate::sets::{
    bc_entropy, carrier_and_support, contains_bc_subset_flag, corollary_classifier,
    decompose_measure, Arc, ArcUnion, BcReport, BcSubsetFlag, CantorSpec, Check, CircleSet,
    Decomposition, EntropyClass, Prediction, Schedule, SingularMeasureSpec, Verdict,
};
pub use crate::symbol::{
    blaschke_eval, outer_from_modulus, singular_inner_eval, symbol_eval, DeltaWeight, OuterGrid,
    OuterProfile, Symbol, SymbolSample, SymbolSpec,
};
pub use crate::xalpha::{
    cauchy_pairing, disk_moment, xalpha_norm, xminus_norm_equiv_check, Alpha, NormEquivalence,
};
