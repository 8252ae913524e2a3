//! Exact arithmetic behind the Dwork-family constructions: character exponents
//! and eigenvalue sets, hypergeometric monodromy over finite fields, Gauss-sum
//! identities in cyclotomic rings, and Hodge position profiles.
//!
//! Everything is exact. Finite fields are built deterministically, cyclotomic
//! integers carry unbounded coefficients, and every verdict that the library
//! reports can be re-checked from the certificate it returns.

pub mod arith;
pub mod error;
pub mod gauss;
pub mod hodge;
pub mod monodromy;
pub mod params;

pub use error::{Error, Result};
