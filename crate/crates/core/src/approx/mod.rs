//! Best approximations to systems of linear forms and to subspaces, and the
//! quantities estimated from them.
//!
//! Norms are fixed: sup-norm on `x`, nearest-integer distance per form (form
//! metric) or Euclidean distance to the subspace (subspace metric).

pub mod best;
pub mod construct;
pub mod estimates;
pub mod report;
pub mod target;

pub use best::{
    best_approximations, best_approximations_vector, canonical_sign, BestApproxRecord,
    BestApproxSequence, Metric, ScanOptions,
};
pub use construct::{algebraic_subspace, block_diagonal_subspace, AlgebraicSubspace};
pub use estimates::{
    bad_constant_estimate, bad_constant_estimate_with, exponent_estimates,
    exponent_estimates_with, span_rank_tail, BadConstantEstimate, ExponentEstimate,
    SpanRankReport,
};
pub use report::{exponent_bound_report, ExponentBoundReport, SampleReport};
pub use target::{TargetMatrix, VectorTarget, DEFAULT_PRECISION_BITS, PRECISION_CAP_BITS};
