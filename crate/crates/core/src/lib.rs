//! Residuated lattices, BL-algebras and hoops: evaluation, equation
//! checking, filter theory, and the lifting, MV-closure, triple product and
//! product closure constructions.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod structure;
pub mod term;

pub use error::{Error, Result};
