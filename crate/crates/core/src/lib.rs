//! Exact sparse effective-Nullstellensatz toolkit.
//!
//! * [`polytope`]: supports, exact rational polytopes, hulls, volumes, lattice points.
//! * [`mixed_volume`]: mixed volumes of lattice polytopes with an independent
//!   subdivision-based oracle.
//! * [`bounds`]: degree bounds for Nullstellensatz certificates and Noether
//!   exponents computed from supports, plus classical comparators.
//! * [`certificate`]: exact search for certificates `1 = sum g_i f_i`.
//! * [`system`]: JSON system descriptions.

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod json;
mod linalg;
pub mod mixed_volume;
pub mod polytope;
pub mod system;

pub use error::{Error, Result};
