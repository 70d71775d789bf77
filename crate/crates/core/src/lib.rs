//! Exact b-symbol weight spectra for linear and cyclic codes.
//!
//! The b-symbol weight of a word counts the cyclic windows of `b` consecutive
//! coordinates that are not identically zero. This crate computes weight spectra
//! exactly, evaluates upper bounds on their size, and builds codes that meet them.

pub mod algebra;
pub mod bounds;
pub mod characters;
pub mod codes;
pub mod constructions;
pub mod spectra;
pub mod sweep;
pub mod error;
pub mod vectors;

pub use error::{Error, Result};
