//! Exact coefficients, monomials and orders, sparse polynomials and
//! polynomial matrices.

mod coeff;
mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use coeff::{Coeff, Field, DEFAULT_PRIME};
pub use matrix::PolyMatrix;
pub use monomial::{compare_monomials, Monomial, MonomialOrder, OrderKind};
pub use polynomial::{poly_arith, ArithOp, Polynomial};
pub use ring::PolyRing;
