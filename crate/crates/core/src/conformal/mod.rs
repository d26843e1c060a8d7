//! Finite-rank Lie conformal algebras given by λ-bracket tables.

mod algebra;
mod tensor;

pub use algebra::{AxiomReport, ConformalAlgebra};
pub use tensor::TensorElement;

use crate::exact::Poly;

/// `Σ f_i(∂) e_i`, one polynomial in ∂ per generator.
pub type ConformalElement = Vec<Poly>;

/// A λ-bracket value: one polynomial in λ and ∂ per generator.
pub type LambdaValue = Vec<Poly>;
