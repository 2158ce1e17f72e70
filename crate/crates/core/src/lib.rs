//! Solver for the generalized Fermat-Torricelli problem with positive and
//! negative weights:
//!
//! ```text
//! min  f(x) = Σ α_i d(x; Ω_i) - Σ β_j d(x; Θ_j)   subject to x ∈ S
//! ```
//!
//! where `Ω_i`, `Θ_j` and `S` are closed convex sets and all weights are
//! positive. The objective is a difference of convex functions. [`dca`]
//! minimizes it with the DCA, whose convex subproblems are solved by the
//! generalized Weiszfeld iteration in [`inner`]. [`model`] holds instances and
//! the existence classifier, [`analysis`] the structure of the one-attraction,
//! one-repulsion case, and [`oracle`] a brute-force reference minimizer.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dca;
pub mod error;
pub mod geometry;
pub mod inner;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
pub use geometry::{default_tol, vector, ConvexSet, DistanceSubgradient, Vector};
pub use model::{
    Diagnostic, ExistenceReport, ExistenceRule, ProblemInstance, Role, SplitValue, Verdict,
    WeightedSet,
};
