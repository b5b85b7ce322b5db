//! Exact-arithmetic toolkit for graph diameters of lattice polytopes.
//!
//! The crate computes convex hulls, vertex adjacency, and breadth-first
//! metrics for polytopes whose vertices lie in {0,...,k}^d; builds primitive
//! zonotopes that realize large diameters; evaluates the known lower and
//! upper bound formulas for the maximal diameter delta(d,k); checks the
//! distance inequalities those bounds rest on against concrete polytopes; and
//! runs small exhaustive and pruned searches for extremal instances.
//!
//! All geometry is exact over 64-bit integers (wider intermediates where
//! needed); overflow is an error, never a wrap.

pub mod error;
mod linalg;

pub mod geometry;
pub mod graph;
pub mod io;
pub mod lemmas;
pub mod sample;
pub mod search;
pub mod bounds;
pub mod oracle;
pub mod zonotope;

pub use error::{Error, Result};
