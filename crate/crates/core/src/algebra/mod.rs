//! Exact arithmetic: cyclotomic integers, integer Laurent polynomials,
//! integer matrices with Smith normal form, and matrices over prime fields.

pub mod cyclotomic;
pub mod finite_field;
pub mod int_matrix;
pub mod laurent;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use finite_field::{is_prime, FpMatrix};
pub use int_matrix::{corank_mod_p, IntMatrix, SmithForm};
pub use laurent::LaurentPoly;
