//! Exact machinery for higher-order polar degrees of monomial projective
//! embeddings.
//!
//! Given an integer exponent matrix `A` defining a toric embedding, this
//! crate computes order-`k` jet matrices and osculating dimensions, the
//! tropicalized order-`k` conormal cycle, its multidegrees and polar
//! degrees via stable intersection with Bergman fans of uniform matroids,
//! dual-variety invariants, tropical critical-point valuations, and a
//! family of independent closed-form degree formulas (Chern-class
//! recursions on jet bundles, lattice-polytope formulas, Bombieri-Weyl
//! coefficient extraction) used to cross-validate the tropical pipeline.
//!
//! All arithmetic is exact: arbitrary-precision integers for linear
//! algebra and lattice indices, fraction-free elimination for solving.
//! No floating point is used anywhere.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default
//! features enable `std` and rayon-based parallelism.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod closed_forms;
pub mod degree_pipeline;
pub mod error;
pub mod exact_linalg;
pub mod jet_osculation;
pub mod lattice_polytope;
pub mod matroid_bergman;
pub mod tropical_cycle;

pub use error::{Error, Result};
pub use exact_linalg::IntegerMatrix;
