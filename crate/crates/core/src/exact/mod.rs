//! Exact arithmetic over the Gaussian rationals: scalars, sparse
//! multivariate polynomials, small polynomial matrices.

mod gauss;
mod json;
mod matrix;
pub mod parse;
mod poly;
mod ring;
mod var;

pub use gauss::GaussRat;
pub use matrix::{rank, PolyMatrix};
pub use poly::{Monomial, Poly};
pub use ring::{parse_vector, poly_from_expr, Alphabet, ArithOp};
pub use var::Var;
