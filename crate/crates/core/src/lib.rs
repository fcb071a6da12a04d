//! Factorization of multivariate polynomial matrices with respect to
//! linear divisors `z_i - f`, with exact certificates for every step.

pub mod corpus;
pub mod error;
pub mod examples;
pub mod factorizer;
pub mod groebner;
pub mod matrix;
pub mod poly;

pub use error::{Error, Result};
pub use matrix::{MinorIndex, MinorReport, PolyMatrix};
pub use poly::{MonomialOrder, OrderKind, Poly, PolyRing, Rational, Ring};
