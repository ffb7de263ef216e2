//! Randomized shadow vertex simplex for linear programs `max { c0·x | Ax <= b }`
//! whose constraint matrix satisfies the δ-distance property (in particular
//! totally unimodular programs).
//!
//! The solver walks the lower envelope of the two dimensional shadow of the
//! polytope under a randomly perturbed objective, identifies one row of the
//! optimal basis per walk, restricts to that facet and repeats. Because the
//! right perturbation strength depends on the unknown δ, the whole procedure
//! runs inside a doubling schedule and every answer is certified in exact
//! rational arithmetic before it is returned.
//!
//! Module map:
//!
//! * [`lp_model`]: data model, text format, normalization, rank raising and
//!   bounding box preprocessing.
//! * [`linalg`]: exact and floating point solves, inverses, orthonormal
//!   completion.
//! * [`delta`]: brute force δ(A) and Δ(A).
//! * [`randomness`]: objective perturbation, cone weights, dyadic draws.
//! * [`shadow`]: the tableau and the shadow vertex walk.
//! * [`driver`]: facet identification, dimension reduction, the φ schedule
//!   and the end to end [`driver::solve`].
//! * [`phase1`]: the auxiliary program that finds a starting vertex.
//! * [`oracle`]: independent exact ground truth (vertex enumeration and a
//!   Bland's rule simplex).
//! * [`harness`]: instance generators and the seeded experiment runner.

pub mod delta;
pub mod driver;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod lp_model;
pub mod num;
pub mod oracle;
pub mod phase1;
pub mod randomness;
pub mod shadow;

pub use driver::{solve, SolveOutcome, SolverConfig};
pub use error::{Error, Result};
pub use lp_model::{BasicSolution, LinearProgram};
pub use num::Rational;
