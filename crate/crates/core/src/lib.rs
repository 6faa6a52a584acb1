//! Exact computations of Hochschild cohomology and Batalin–Vilkovisky
//! operators for bicharacter-twisted tensor products of graded Frobenius
//! algebras.

pub mod error;
pub mod format;
pub mod frobenius;
pub mod hochschild;
pub mod algebra;
pub mod bv;
pub mod cli;
pub mod comparison;
pub mod linalg;
pub mod zoo;

pub use error::{Error, Result};
