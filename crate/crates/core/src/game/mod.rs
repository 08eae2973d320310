//! Schmidt `(alpha, beta)` games and hyperplane absolute games (HAW) with
//! validated moves, escaping strategies for algebraic manifolds, and the
//! construction of matrices avoiding every rational subspace up to a height.
//!
//! Radii and centers are exact rationals; floating point only proposes
//! directions and manifold points, which are then checked exactly.

pub mod ball;
pub mod generate;
mod local;
pub mod opponent;
pub mod play;
pub mod range;

pub use ball::{
    exact_unit, validate_haw_move, validate_schmidt_move, Ball, HawConfig, HyperplaneNeighborhood,
    Role, SchmidtConfig, Verdict,
};
pub use generate::{
    determinant_manifold, generate_irrational_matrix, intersection_manifold, theta_var,
    vanishes_at, GeneratedMatrix, SubspaceCertificate,
};
pub use opponent::{Opponent, OpponentKind};
pub use play::{
    manifold_escape_haw, manifold_escape_schmidt, schmidt_escape_halfspace, Certificate,
    EscapeOutcome, Game, GameConfig, GameMove, GameTranscript, HalfspaceReport,
    DEFAULT_MAX_ROUNDS,
};
pub use range::{polynomial_range, RangeCertificate};
