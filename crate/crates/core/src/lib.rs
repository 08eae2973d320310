//! Computational tools for irrational linear subspaces of `R^d`.
//!
//! * [`exact`]: Plücker coordinates, rational subspaces of bounded height and
//!   certification of (complete) irrationality with exact arithmetic.
//! * [`approx`]: best approximations, badly-approximability constants,
//!   Diophantine exponent estimates and the span rank of best approximations.
//! * [`bounds`]: the uniform-exponent bound constants and the feasibility
//!   predicate behind them.
//! * [`game`]: Schmidt `(alpha, beta)` and hyperplane absolute games with
//!   validated moves, manifold escaping strategies and generation of matrices
//!   that avoid every rational subspace up to a height bound.
//! * [`cli`]: the `diophlab` command-line frontend.

pub mod approx;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod game;
pub mod interval;
pub mod linalg;
pub mod multipoly;
pub mod scalar;
mod ser;
pub mod upoly;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, NumberField};
