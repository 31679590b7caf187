//! Frobenius splitting invariants of hypersurfaces `f` in `F_p[x_1, ..., x_n]`.
//!
//! The crate is layered bottom-up: [`algebra`] (prime fields, monomials,
//! sparse polynomials), [`parser`] (ring files and expressions), [`ideal`]
//! (Groebner bases and ideal arithmetic), [`frobenius`] (splitting ideals,
//! numbers and primes) and [`experiments`] (perturbation harnesses and
//! random campaigns).

pub mod algebra;
pub mod budget;
pub mod error;
pub mod experiments;
pub mod frobenius;
pub mod ideal;
pub mod parser;

pub use error::{Error, Result};
