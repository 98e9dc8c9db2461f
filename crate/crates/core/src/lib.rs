//! Heegaard Floer d-invariants of Seifert fibered homology spheres and
//! bounds for splices of knots in them.

pub mod cli;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod plumbing;
pub mod seifert;
pub mod splice;

pub use error::{Error, Result};
