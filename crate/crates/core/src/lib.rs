//! Exact lattice models of polarized abelian varieties with finite
//! automorphism groups.
//!
//! Tori `E^g` over `Z`, `Z[i]` or `Z[ω]` are represented by the lattice
//! `Z^{2g}`; polarizations are integral alternating forms on it. On top of
//! that the crate builds kernel groups with their pairing, finite group
//! actions, the gluing of polarized products along an antisymplectic graph,
//! and the arithmetic case analysis of Galois covers of curves.

pub mod checks;
pub mod error;
pub mod groups;
pub mod jacobian;
pub mod json;
pub mod linalg;
pub mod polarization;
pub mod standard;
pub mod tori;

pub use error::{Error, Result};
