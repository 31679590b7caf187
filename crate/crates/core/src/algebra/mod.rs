//! Prime-field and sparse polynomial arithmetic.

pub mod field;
pub mod monomial;
pub mod poly;
pub mod ring;

pub use field::{ff_inv, FpElement};
pub use monomial::{monomial_compare, Monomial, MonomialOrder, MAX_VARS};
pub use poly::{partial_derivative, pe_decompose, poly_mul, poly_pow_charp, Polynomial};
pub use ring::{Ring, RingSpec, MAX_USER_VARS};
