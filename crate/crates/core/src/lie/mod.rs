//! Finite-dimensional Lie algebras, Rota–Baxter operators on them and the
//! sl₂ catalogs.

mod algebra;
pub mod automorphisms;
pub mod catalog;
mod rb;

pub use algebra::LieAlgebra;
pub use catalog::{catalog_sl2, CatalogEntry};
pub use rb::{check_rb, splitting_rb, transform_rb, LinearMap, RBWitness, Transform};
