//! Exact computation with curved DG-rings and CDG-modules over
//! finite-dimensional graded algebras.

pub mod bec;
pub mod cdg;
pub mod constructions;
pub mod delta;
mod error;
pub mod graded;
pub mod linalg;
pub mod random;
pub mod registry;
pub mod second_kind;
pub mod selftest;
pub mod validation;

pub use error::Error;
