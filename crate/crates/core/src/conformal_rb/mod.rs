//! ∂-linear operators on conformal algebras and the Rota–Baxter identity
//! `[R(a)_λ R(b)] = R([R(a)_λ b] + [a_λ R(b)] + k[a_λ b])`.

pub mod catalog;
mod search;
mod system;

use std::collections::BTreeMap;

use serde_json::Value;

pub use catalog::{catalog_cur_sl2, ConformalCatalogEntry, Normalizer};
pub use search::{bounded_search, estimate_candidates, SearchOutcome, ZeroPattern};
pub use system::{
    derive_rb_system, derive_system_for, match_system, pair_label, reference_system, Equation,
    EquationSystem, MatchReport,
};

use crate::conformal::ConformalAlgebra;
use crate::error::Error;
use crate::exact::{Poly, PolyMatrix, Var};
use crate::lie::LinearMap;
use crate::schema;

/// A ∂-linear operator: column `j` holds the coordinates of `R(e_j)` as
/// polynomials in ∂ and parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalMap {
    pub matrix: PolyMatrix,
}

impl ConformalMap {
    pub fn new(matrix: PolyMatrix) -> Result<Self, Error> {
        for p in matrix.entries() {
            if p.involves(Var::LAMBDA) {
                return Err(Error::Alphabet(format!(
                    "operator entry `{p}` depends on λ"
                )));
            }
        }
        Ok(ConformalMap { matrix })
    }

    pub fn from_images(images: Vec<Vec<Poly>>) -> Result<Self, Error> {
        ConformalMap::new(PolyMatrix::from_columns(images)?)
    }

    pub fn zero(n: usize) -> Self {
        ConformalMap {
            matrix: PolyMatrix::zero(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn image(&self, j: usize) -> Vec<Poly> {
        self.matrix.column(j)
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        self.matrix.apply(v)
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, Poly>) -> ConformalMap {
        ConformalMap {
            matrix: self.matrix.map(|p| p.substitute(bindings)),
        }
    }

    pub fn to_json(&self) -> Value {
        schema::matrix_to_json(&self.matrix)
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        ConformalMap::new(schema::matrix_from_json(v)?)
    }
}

/// Defect of the identity for every ordered generator pair.
#[derive(Clone, Debug)]
pub struct ConformalRBReport {
    pub weight: Poly,
    pub defects: BTreeMap<(usize, usize), Vec<Poly>>,
}

impl ConformalRBReport {
    pub fn is_rb(&self) -> bool {
        self.defects.values().all(|v| v.iter().all(Poly::is_zero))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Poly>)> {
        self.defects
            .iter()
            .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
    }
}

fn size_check(l: &ConformalAlgebra, n: usize) -> Result<(), Error> {
    if l.rank() != n {
        return Err(Error::Size(format!(
            "operator is {n}x{n}, algebra has rank {}",
            l.rank()
        )));
    }
    Ok(())
}

/// Defect `[R a_λ R b] - R([R a_λ b] + [a_λ R b] + k[a_λ b])` for one pair.
pub fn rb_defect(l: &ConformalAlgebra, r: &ConformalMap, k: &Poly, a: usize, b: usize) -> Vec<Poly> {
    let n = l.rank();
    let (ra, rb) = (r.image(a), r.image(b));
    let (ea, eb) = (l.unit(a), l.unit(b));
    let lhs = l.lambda_bracket(&ra, &rb);
    let x = l.lambda_bracket(&ra, &eb);
    let y = l.lambda_bracket(&ea, &rb);
    let z = l.table_entry(a, b);
    let inner: Vec<Poly> = (0..n).map(|m| &(&x[m] + &y[m]) + &(k * &z[m])).collect();
    let rhs = r.apply(&inner);
    lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect()
}

pub fn check_conformal_rb(
    l: &ConformalAlgebra,
    r: &ConformalMap,
    k: &Poly,
) -> Result<ConformalRBReport, Error> {
    let n = r.dim();
    size_check(l, n)?;
    let mut defects = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            defects.insert((a, b), rb_defect(l, r, k, a, b));
        }
    }
    Ok(ConformalRBReport {
        weight: k.clone(),
        defects,
    })
}

/// `R₀(e_i) = R(e_i)|_{∂=0}`.
pub fn project_r0(r: &ConformalMap) -> LinearMap {
    LinearMap::new(r.matrix.map(|p| p.at_zero(Var::D)))
}

/// `P(f(∂)a) = f(∂)P(a)`.
pub fn extend_partial(r0: &LinearMap) -> ConformalMap {
    ConformalMap {
        matrix: r0.matrix.clone(),
    }
}

/// `φ⁻¹Rφ` with `φ` the ∂-constant extension of `φ₀`, which must be an
/// automorphism of the table.
pub fn conjugate_conformal(
    l: &ConformalAlgebra,
    r: &ConformalMap,
    phi0: &LinearMap,
) -> Result<ConformalMap, Error> {
    size_check(l, r.dim())?;
    let inv = phi0.matrix.inverse()?;
    if phi0.matrix.entries().any(|p| p.involves(Var::D) || p.involves(Var::LAMBDA)) {
        return Err(Error::InvalidAlgebra(
            "conjugating map must have constant entries".into(),
        ));
    }
    if !l.is_automorphism(&phi0.matrix) {
        return Err(Error::InvalidAlgebra(
            "conjugating map does not preserve the λ-bracket".into(),
        ));
    }
    ConformalMap::new(&(&inv * &r.matrix) * &phi0.matrix)
}

/// `R ↦ -(R + k·id)`.
pub fn phi_conformal(r: &ConformalMap, k: &Poly) -> ConformalMap {
    let n = r.dim();
    ConformalMap {
        matrix: -&(&r.matrix + &PolyMatrix::identity(n).scale(k)),
    }
}

/// `R ↦ c·R`; the identity is only preserved at weight 0.
pub fn scale_conformal(r: &ConformalMap, k: &Poly, c: &Poly) -> Result<ConformalMap, Error> {
    if !k.is_zero() {
        return Err(Error::Weight(format!(
            "scaling preserves the identity only at weight 0, got {k}"
        )));
    }
    ConformalMap::new(r.matrix.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{automorphisms, catalog_sl2, check_rb, LieAlgebra};

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn map(cols: [[&str; 3]; 3]) -> ConformalMap {
        ConformalMap::from_images(
            cols.iter().map(|c| c.iter().map(|s| p(s)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn r2_normal_form_is_rb() {
        let l = ConformalAlgebra::cur_sl2();
        let r = map([["0", "0", "0"], ["0", "0", "0"], ["0", "0", "q0 + q1∂ + q2∂^2"]]);
        assert!(check_conformal_rb(&l, &r, &Poly::zero()).unwrap().is_rb());
        let r0 = project_r0(&r);
        assert!(check_rb(&LieAlgebra::sl2(), &r0, &Poly::zero()).unwrap().is_rb());
    }

    #[test]
    fn weight_mismatch_is_detected() {
        let l = ConformalAlgebra::cur_sl2();
        let q1 = map([["-1", "0", "0"], ["0", "0", "0"], ["0", "0", "q0 + q1∂"]]);
        assert!(check_conformal_rb(&l, &q1, &Poly::one()).unwrap().is_rb());
        let rep = check_conformal_rb(&l, &q1, &Poly::zero()).unwrap();
        assert!(!rep.is_rb());
        assert!(rep.failures().count() > 0);
    }

    #[test]
    fn projection_and_extension() {
        let l = ConformalAlgebra::cur_sl2();
        for e in catalog_sl2(0).unwrap() {
            let ext = extend_partial(&e.map);
            assert!(check_conformal_rb(&l, &ext, &e.weight).unwrap().is_rb());
            assert_eq!(project_r0(&ext), e.map);
        }
        assert!(extend_partial(&LinearMap::zero(3)).matrix.is_zero());
    }

    #[test]
    fn conjugation_phi_and_scale() {
        let l = ConformalAlgebra::cur_sl2();
        let q1 = map([["-1", "0", "0"], ["0", "0", "0"], ["0", "0", "q0 + q1∂"]]);
        let c = conjugate_conformal(&l, &q1, &automorphisms::weyl()).unwrap();
        assert_eq!(c.image(1), vec![p("0"), p("-1"), p("0")]);
        assert!(check_conformal_rb(&l, &c, &Poly::one()).unwrap().is_rb());
        let same = conjugate_conformal(&l, &q1, &LinearMap::identity(3)).unwrap();
        assert_eq!(same, q1);
        let ph = phi_conformal(&q1, &Poly::one());
        assert!(check_conformal_rb(&l, &ph, &Poly::one()).unwrap().is_rb());
        assert_eq!(phi_conformal(&ph, &Poly::one()), q1);
        assert!(matches!(
            scale_conformal(&q1, &Poly::one(), &Poly::int(2)),
            Err(Error::Weight(_))
        ));
        let singular = LinearMap::zero(3);
        assert!(matches!(
            conjugate_conformal(&l, &q1, &singular),
            Err(Error::SingularMap(_))
        ));
        let not_aut = crate::lie::catalog::sl2_map(["e", "f", "2h"]);
        assert!(matches!(
            conjugate_conformal(&l, &q1, &not_aut),
            Err(Error::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn rejects_lambda_entries() {
        let m = PolyMatrix::from_columns(vec![vec![p("λ")]]).unwrap();
        assert!(matches!(ConformalMap::new(m), Err(Error::Alphabet(_))));
    }
}
