//! Finite hypergroups and hypergroupoids.
//!
//! Hypergroups are given by structure constants `lambda[i][j][l]`, the
//! weight of `k_l` in the convex product `k_i k_j`. The crate validates
//! tables, builds them from groups and fusion rings, computes characters and
//! duals of commutative ones, composes boundary conditions in a
//! hypergroupoid, and enumerates admissible subfactor indices.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod constructions;
pub mod error;
pub mod fusion;
pub mod group;
pub mod groupoid;
pub mod hypergroup;
pub mod io;
pub mod quantize;
pub mod reprs;
pub mod tensor;

pub use error::{HyperError, Result};
pub use fusion::{DimensionVector, FusionRing};
pub use group::CayleyGroup;
pub use groupoid::{BoundaryState, Hypergroupoid};
pub use hypergroup::{find_isomorphism, Axiom, HypergroupTable, Mixture, ValidationReport, Violation, DEFAULT_TOL};
pub use quantize::{AdmissibleIndexSet, AdmissibleValue};
pub use reprs::{CharacterTable, DualityReport};
pub use tensor::Tensor3;
