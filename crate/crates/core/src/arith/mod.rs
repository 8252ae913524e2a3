//! Residues, primes, finite fields, polynomials, matrices and cyclotomic integers.

pub mod cyclotomic;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod residue;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};
pub use field::{Fe, FiniteField};
pub use matrix::Matrix;
pub use poly::Poly;
pub use residue::{residue_order, Residue};
