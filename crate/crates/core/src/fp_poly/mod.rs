//! Exact sparse multivariate polynomials over a prime field.

mod field;
mod format;
mod monomial;
mod parse;
mod poly;

pub use field::{is_prime, PrimeField, PrimeFieldElement, MAX_MODULUS};
pub use format::{degrevlex_cmp, display_terms, format_monomial, format_poly, Style};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{Poly, Ring, RingRef, DEFAULT_MAX_DEGREE};

pub(crate) use poly::accumulate;
