//! Exact computation of generalized equivariant Lefschetz invariants.
//!
//! The crate computes, for a finite group `G` acting admissibly on a finite
//! simplicial complex `X` and an equivariant cellular self-map `f`, the
//! generalized equivariant Lefschetz invariant `lambda_G(f)` (graded by
//! object classes of the fundamental category and twisted conjugacy classes),
//! the corresponding local invariant `lambda_G^loc(f)` assembled from isolated
//! fixed-point data, and verifies their equality exactly over Z and Q.

pub mod burnside;
pub mod complex;
pub mod error;
pub mod fundcat;
pub mod group;
pub mod io;
pub mod lefschetz;
pub mod linalg;
pub mod perm;
pub mod splitting;
pub mod subdivision;
pub mod twisted;

pub use error::{Error, Result};
