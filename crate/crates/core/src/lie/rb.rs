use std::collections::BTreeMap;

use serde_json::Value;

use super::algebra::LieAlgebra;
use crate::error::Error;
use crate::exact::{rank, GaussRat, Poly, PolyMatrix};
use crate::schema;

/// A linear operator on a Lie algebra; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: PolyMatrix,
}

impl LinearMap {
    pub fn new(matrix: PolyMatrix) -> Self {
        LinearMap { matrix }
    }

    pub fn zero(n: usize) -> Self {
        LinearMap::new(PolyMatrix::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        LinearMap::new(PolyMatrix::identity(n))
    }

    /// From the images of the basis vectors.
    pub fn from_images(images: Vec<Vec<Poly>>) -> Result<Self, Error> {
        Ok(LinearMap::new(PolyMatrix::from_columns(images)?))
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

    pub fn to_json(&self) -> Value {
        schema::matrix_to_json(&self.matrix)
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        Ok(LinearMap::new(schema::matrix_from_json(v)?))
    }
}

/// Defects of the Rota–Baxter identity
/// `[R a, R b] - R([R a, b] + [a, R b] + k[a, b])` over basis pairs.
#[derive(Clone, Debug)]
pub struct RBWitness {
    pub weight: Poly,
    pub residuals: BTreeMap<(usize, usize), Vec<Poly>>,
}

impl RBWitness {
    pub fn is_rb(&self) -> bool {
        self.residuals.values().all(|v| v.iter().all(Poly::is_zero))
    }

    /// Pairs with a nonzero defect.
    pub fn failures(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Poly>)> {
        self.residuals
            .iter()
            .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
    }
}

pub fn check_rb(g: &LieAlgebra, r: &LinearMap, k: &Poly) -> Result<RBWitness, Error> {
    let n = g.dim();
    if r.dim() != n {
        return Err(Error::Size(format!("operator is {}x{0}, algebra has dimension {n}", r.dim())));
    }
    let mut residuals = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let (a, b) = (g.unit(i), g.unit(j));
            let (ra, rb) = (r.image(i), r.image(j));
            let lhs = g.bracket(&ra, &rb);
            let inner: Vec<Poly> = {
                let x = g.bracket(&ra, &b);
                let y = g.bracket(&a, &rb);
                let z = g.bracket_basis(i, j);
                (0..n).map(|m| &(&x[m] + &y[m]) + &(k * &z[m])).collect()
            };
            let rhs = r.apply(&inner);
            residuals.insert((i, j), lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect());
        }
    }
    Ok(RBWitness {
        weight: k.clone(),
        residuals,
    })
}

#[derive(Clone, Debug)]
pub enum Transform {
    /// `R ↦ -(R + k·id)`.
    Phi,
    /// `R ↦ φ⁻¹ R φ` for an automorphism `φ`.
    Conjugate(LinearMap),
    /// `R ↦ c·R`, weight 0 only.
    Scale(Poly),
}

pub fn transform_rb(
    g: &LieAlgebra,
    r: &LinearMap,
    k: &Poly,
    which: &Transform,
) -> Result<LinearMap, Error> {
    let n = r.dim();
    match which {
        Transform::Phi => Ok(LinearMap::new(
            -&(&r.matrix + &PolyMatrix::identity(n).scale(k)),
        )),
        Transform::Conjugate(phi) => {
            let inv = phi.matrix.inverse()?;
            if !g.is_automorphism(&phi.matrix) {
                return Err(Error::InvalidAlgebra(
                    "conjugating map does not preserve brackets".into(),
                ));
            }
            Ok(LinearMap::new(&(&inv * &r.matrix) * &phi.matrix))
        }
        Transform::Scale(c) => {
            if !k.is_zero() {
                return Err(Error::Weight(format!(
                    "scaling preserves the identity only at weight 0, got {k}"
                )));
            }
            Ok(LinearMap::new(r.matrix.scale(c)))
        }
    }
}

/// The splitting operator `R(a₁ + a₂) = -k·a₂` for a decomposition
/// `g = g₁ ⊕ g₂` into subalgebras spanned by the given constant vectors.
pub fn splitting_rb(
    g: &LieAlgebra,
    first: &[Vec<Poly>],
    second: &[Vec<Poly>],
    k: &Poly,
) -> Result<LinearMap, Error> {
    let n = g.dim();
    let constant = |v: &Vec<Poly>| -> Result<Vec<GaussRat>, Error> {
        if v.len() != n {
            return Err(Error::Split(format!("vector of length {} in dimension {n}", v.len())));
        }
        v.iter()
            .map(|p| {
                p.as_constant()
                    .ok_or_else(|| Error::Split(format!("non-constant coordinate {p}")))
            })
            .collect()
    };
    let a: Vec<Vec<GaussRat>> = first.iter().map(constant).collect::<Result<_, _>>()?;
    let b: Vec<Vec<GaussRat>> = second.iter().map(constant).collect::<Result<_, _>>()?;
    let all: Vec<Vec<GaussRat>> = a.iter().chain(&b).cloned().collect();
    if all.len() != n || rank(&all) != n {
        return Err(Error::Split("the two spans are not complementary".into()));
    }
    for (name, part) in [("first", first), ("second", second)] {
        let part_c: Vec<Vec<GaussRat>> = part.iter().map(constant).collect::<Result<_, _>>()?;
        let r0 = rank(&part_c);
        for u in part {
            for v in part {
                let w = g.bracket(u, v);
                let w = constant(&w)?;
                let mut ext = part_c.clone();
                ext.push(w);
                if rank(&ext) != r0 {
                    return Err(Error::Split(format!("{name} span is not a subalgebra")));
                }
            }
        }
    }
    // P = B · diag(0,..,0,1,..,1) · B⁻¹ with B = [first | second]
    let basis_change = PolyMatrix::from_columns(
        first.iter().chain(second).cloned().collect(),
    )?;
    let inv = basis_change.inverse()?;
    let mut select = PolyMatrix::zero(n);
    for i in first.len()..n {
        select.set(i, i, Poly::one());
    }
    let proj = &(&basis_change * &select) * &inv;
    Ok(LinearMap::new(proj.scale(&-k)))
}
