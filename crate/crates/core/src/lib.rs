//! Exact computation with finitely generated groups of holomorphic germs
//! fixing the origin of C^n, represented as truncated polynomial jets with
//! coefficients in cyclotomic fields.
//!
//! The crate covers irreducibility checks for basic generating sets,
//! Poincaré–Dulac normalization, group linearization for generators with a
//! common finite-order diagonal linear part, the affine conjugacy criterion,
//! and Möbius holonomy groups on the projective line.

pub mod cli;
pub mod cyclo;
pub mod error;
pub mod groupkit;
pub mod jet;
pub mod moebius;
pub mod resonance;

pub use error::{Error, Result};
