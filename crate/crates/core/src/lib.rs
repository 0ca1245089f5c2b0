//! Exact, precision-tracked arithmetic for multiple zeta values in positive
//! characteristic, Carlitz periods, Anderson–Thakur polynomials, Carlitz
//! multiple polylogarithms and the matrices of their pre-t-motives.
#![allow(clippy::needless_range_loop)]

pub mod carlitz;
pub mod error;
pub mod ffield;
pub mod laurent;
pub mod motive;
pub mod oracle;
pub mod poly;
pub mod special;
pub mod tate;

pub use error::{Error, Result};
