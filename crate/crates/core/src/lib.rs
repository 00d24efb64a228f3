//! Warm-starting discrete convex minimization with learned predictions.
//!
//! The pieces, bottom up:
//!
//! - [`lattice`]: the l±∞ norm, half-down rounding, lattice operations.
//! - [`descent`]: steepest descent for L- and L♮-convex functions.
//! - [`matching`]: weighted bipartite matching duals as an L-convex oracle.
//! - [`polyhedral`]: l±∞ distance, subgradients and projections for
//!   systems of box and difference constraints.
//! - [`learner`]: online gradient descent over prediction vectors.
//! - [`extract`]: recovering an optimal-set description from value queries.
//! - [`harness`]: instance streams, adversarial sequences, experiments.
//! - [`oracle`]: brute-force references used by the tests.

pub mod descent;
pub mod error;
pub mod extract;
pub mod harness;
pub mod lattice;
pub mod learner;
pub mod matching;
pub mod oracle;
pub mod polyhedral;

pub use descent::{steepest_descent, DescentOptions, DescentResult, Flavor, LnConvexOracle};
pub use error::{Error, Result};
pub use matching::{Edge, Matching, MatchingInstance};
pub use polyhedral::{mu_bar, mu_bar_subgradient, project_onto_system, InequalitySystem};
