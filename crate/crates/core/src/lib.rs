//! Non-commutative characteristic functions on compact groups.
//!
//! A density matrix `ρ` on the carrier space of an irrep `τ` of a compact group
//! `G` is encoded by the function `φ_ρ(g) = tr[ρ τ(g)]` and recovered by
//! `ρ = d_τ ∫ φ_ρ(g) τ(g)† dg`. This crate implements that transform pair for
//! SU(2) and finite groups, the positive-definiteness machinery on both sides,
//! and separability tests phrased on `G × G`.

pub mod charfunc;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod representations;
pub mod separability;
pub mod states;
pub mod tolerances;

pub use error::{Error, Result};
