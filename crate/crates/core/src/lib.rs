//! Exact generalized higher-order Euler numbers and polynomials attached to
//! Dirichlet characters of odd modulus, alternating character power sums,
//! and symbolic verification of the symmetry identities relating them.
//!
//! All arithmetic is exact: rationals are arbitrary precision and character
//! values live in cyclotomic fields `Q(ζ_e)` in canonical form, so identity
//! checks are decided by coefficient-wise equality.

pub mod chars;
pub mod cli;
pub mod error;
pub mod euler;
pub mod exactnum;
pub mod grid;
pub mod series;
pub mod symmetry;

pub use error::{Error, Result};
