//! Exact computation in generic pro-p Hecke algebras of affine extended
//! Coxeter groups, with presets for the affine Hecke algebra of `GL_n` and the
//! affine Yokonuma-Hecke algebra.

pub mod bernstein;
pub mod center;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod json;
pub mod oracle;
pub mod orientation;
pub mod presets;
pub mod propcox;
pub mod rings;
pub mod rootdata;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
