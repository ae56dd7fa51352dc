//! Twisted conjugacy classes and the zeta functions built from them.
//!
//! The crate works with fully enumerated finite groups, lattice
//! endomorphisms of `Z^k`, and the shift endomorphism of a restricted
//! direct sum `⊕_{i∈Z} F`. All counting and all rational-function identities
//! are computed in exact arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod chartable;
pub mod error;
pub mod group;
pub mod shift;
pub mod twisted;
mod util;
pub mod zeta;
pub mod zoo;

pub use error::{Error, Result};
