//! k3cone: exact computations on hyperbolic integral lattices and rational
//! polyhedral cones.
//!
//! The crate provides:
//! - integral lattices with exact inner products, signatures, determinants
//!   and isometry checks ([`lattice`]);
//! - (-2)-root enumeration and Weyl reflections ([`roots`]);
//! - a Vinberg-style chamber construction deciding 2-reflectivity, i.e.
//!   whether the Weyl group has finite index in the isometry group
//!   ([`vinberg`]);
//! - a double-description kernel for rational polyhedral cones, faces,
//!   invariant subspaces and orbit enumeration ([`cone`]);
//! - intersection-theoretic helpers for Hirzebruch surfaces and K3 classes
//!   ([`surface`]);
//! - a catalog of Fano-mirror lattice facts with consistency checks against
//!   the Vinberg runner ([`catalog`]).
//!
//! All arithmetic is arbitrary-precision integer/rational; there is no
//! floating point anywhere in this crate. Every type is immutable after
//! construction and safe to share across threads; operations are pure, so
//! identical inputs always produce identical results.

pub mod catalog;
pub mod cli;
pub mod cone;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod roots;
pub mod surface;
pub mod vinberg;

pub use error::{Error, Result};
pub use lattice::{GramLattice, Isometry, Signature, StandardLattice};
pub use roots::{enumerate_roots_at_level, reflect, reflection_matrix, Root};
