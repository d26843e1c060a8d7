use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::exact::{Poly, PolyMatrix};
use crate::schema;

/// A finite-dimensional Lie algebra given by structure constants.
///
/// `bracket(i, j)` holds the coordinates of `[e_i, e_j]`. Entries are
/// polynomials so that parametric families of algebras can be checked.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    structure: Vec<Vec<Vec<Poly>>>,
}

impl LieAlgebra {
    /// Builds an algebra from the brackets of pairs `i < j` (or any pairs);
    /// missing pairs are zero and the opposite order is filled in by
    /// antisymmetry. Contradictory entries are rejected.
    pub fn from_brackets(
        basis: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<Poly>)>,
    ) -> Result<Self, Error> {
        let n = basis.len();
        let mut structure: Vec<Vec<Option<Vec<Poly>>>> = vec![vec![None; n]; n];
        for ((i, j), v) in brackets {
            if i >= n || j >= n {
                return Err(Error::InvalidAlgebra(format!("pair ({i},{j}) out of range")));
            }
            if v.len() != n {
                return Err(Error::Size(format!(
                    "bracket ({i},{j}) has {} coordinates, expected {n}",
                    v.len()
                )));
            }
            if i == j && v.iter().any(|p| !p.is_zero()) {
                return Err(Error::InvalidAlgebra(format!(
                    "[{0},{0}] must vanish",
                    basis[i]
                )));
            }
            let neg: Vec<Poly> = v.iter().map(|p| -p).collect();
            for (slot, val) in [((i, j), v), ((j, i), neg)] {
                match &structure[slot.0][slot.1] {
                    Some(existing) if *existing != val => {
                        return Err(Error::InvalidAlgebra(format!(
                            "brackets of {} and {} violate antisymmetry",
                            basis[i], basis[j]
                        )))
                    }
                    _ => structure[slot.0][slot.1] = Some(val),
                }
            }
        }
        let structure = structure
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| c.unwrap_or_else(|| vec![Poly::zero(); n]))
                    .collect()
            })
            .collect();
        Ok(LieAlgebra { basis, structure })
    }

    /// sl₂ in the basis (e, f, h): `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2() -> Self {
        let names = ["e", "f", "h"].map(String::from).to_vec();
        let v = |a: i64, b: i64, c: i64| vec![Poly::int(a), Poly::int(b), Poly::int(c)];
        LieAlgebra::from_brackets(
            names,
            [((0, 1), v(0, 0, 1)), ((2, 0), v(2, 0, 0)), ((2, 1), v(0, -2, 0))],
        )
        .expect("sl2 table is consistent")
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("x{i}")).collect();
        LieAlgebra::from_brackets(names, []).expect("abelian table")
    }

    /// so(3) with `[x,y] = z`, `[y,z] = x`, `[z,x] = y`.
    pub fn so3() -> Self {
        let names = ["x", "y", "z"].map(String::from).to_vec();
        let v = |a: i64, b: i64, c: i64| vec![Poly::int(a), Poly::int(b), Poly::int(c)];
        LieAlgebra::from_brackets(
            names,
            [((0, 1), v(0, 0, 1)), ((1, 2), v(1, 0, 0)), ((2, 0), v(0, 1, 0))],
        )
        .expect("so3 table is consistent")
    }

    /// Direct sum; basis names of each summand get the given suffixes.
    pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra, suffixes: (&str, &str)) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let n = na + nb;
        let mut basis: Vec<String> = a.basis.iter().map(|s| format!("{s}{}", suffixes.0)).collect();
        basis.extend(b.basis.iter().map(|s| format!("{s}{}", suffixes.1)));
        let mut brackets = Vec::new();
        for i in 0..na {
            for j in i + 1..na {
                let mut v = a.bracket_basis(i, j).to_vec();
                v.resize(n, Poly::zero());
                brackets.push(((i, j), v));
            }
        }
        for i in 0..nb {
            for j in i + 1..nb {
                let mut v = vec![Poly::zero(); na];
                v.extend(b.bracket_basis(i, j).iter().cloned());
                brackets.push(((na + i, na + j), v));
            }
        }
        LieAlgebra::from_brackets(basis, brackets).expect("direct sum is consistent")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Poly] {
        &self.structure[i][j]
    }

    /// Basis vector as a coordinate vector.
    pub fn unit(&self, i: usize) -> Vec<Poly> {
        (0..self.dim())
            .map(|k| if k == i { Poly::one() } else { Poly::zero() })
            .collect()
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        let n = self.dim();
        let mut out = vec![Poly::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// `Σ_cyc [[e_i,e_j],e_k]` for every basis triple `i < j < k`.
    pub fn jacobi_defects(&self) -> Vec<((usize, usize, usize), Vec<Poly>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = self.bracket(&self.bracket(&b, &c), &a);
                    let t3 = self.bracket(&self.bracket(&c, &a), &b);
                    let sum: Vec<Poly> = (0..n).map(|m| &(&t1[m] + &t2[m]) + &t3[m]).collect();
                    if sum.iter().any(|p| !p.is_zero()) {
                        out.push(((i, j, k), sum));
                    }
                }
            }
        }
        out
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_defects().is_empty()
    }

    /// Matrix of `ad e_i` in the column convention.
    pub fn ad(&self, i: usize) -> PolyMatrix {
        let cols = (0..self.dim())
            .map(|j| self.bracket_basis(i, j).to_vec())
            .collect();
        PolyMatrix::from_columns(cols).expect("square")
    }

    /// `K[i][j] = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> PolyMatrix {
        let n = self.dim();
        let ads: Vec<PolyMatrix> = (0..n).map(|i| self.ad(i)).collect();
        let mut k = PolyMatrix::zero(n);
        for i in 0..n {
            for j in i..n {
                let prod = &ads[i] * &ads[j];
                let mut tr = Poly::zero();
                for d in 0..n {
                    tr += prod.get(d, d);
                }
                k.set(i, j, tr.clone());
                k.set(j, i, tr);
            }
        }
        k
    }

    /// `φ[e_i, e_j] = [φ e_i, φ e_j]` for all pairs and `φ` invertible.
    pub fn is_automorphism(&self, phi: &PolyMatrix) -> bool {
        if phi.dim() != self.dim() || phi.inverse().is_err() {
            return false;
        }
        self.homomorphism_defects(phi).is_empty()
    }

    pub fn homomorphism_defects(&self, phi: &PolyMatrix) -> Vec<((usize, usize), Vec<Poly>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = phi.apply(self.bracket_basis(i, j));
                let rhs = self.bracket(&phi.column(i), &phi.column(j));
                let d: Vec<Poly> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                if d.iter().any(|p| !p.is_zero()) {
                    out.push(((i, j), d));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut brackets = Map::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let v = &self.structure[i][j];
                if v.iter().any(|p| !p.is_zero()) {
                    brackets.insert(
                        schema::format_key(&[i, j], &self.basis),
                        Value::Array(v.iter().map(Poly::to_json).collect()),
                    );
                }
            }
        }
        json!({ "basis": self.basis, "brackets": brackets })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let basis = schema::names(v, "basis")?;
        let n = basis.len();
        let mut brackets = Vec::new();
        if let Some(obj) = v.get("brackets") {
            let obj = obj
                .as_object()
                .ok_or_else(|| Error::Parse("`brackets` must be an object".into()))?;
            for (key, val) in obj {
                let idx = schema::parse_key(key, &basis, Some(2))?;
                brackets.push(((idx[0], idx[1]), schema::poly_vector(val, n, key)?));
            }
        }
        LieAlgebra::from_brackets(basis, brackets)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra{}", self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_satisfies_jacobi() {
        let g = LieAlgebra::sl2();
        assert!(g.check_jacobi());
        assert_eq!(g.bracket_basis(0, 2), &[Poly::int(-2), Poly::zero(), Poly::zero()]);
        assert!(LieAlgebra::abelian(4).check_jacobi());
        assert!(LieAlgebra::so3().check_jacobi());
    }

    #[test]
    fn sign_flipped_table_fails_jacobi() {
        // Hand expansion on (e,f,h) with [h,f] = +2f:
        // [[e,f],h] = [h,h] = 0, [[f,h],e] = [-2f,e] = 2h, [[h,e],f] = [2e,f] = 2h.
        let names = ["e", "f", "h"].map(String::from).to_vec();
        let v = |a: i64, b: i64, c: i64| vec![Poly::int(a), Poly::int(b), Poly::int(c)];
        let g = LieAlgebra::from_brackets(
            names,
            [((0, 1), v(0, 0, 1)), ((2, 0), v(2, 0, 0)), ((2, 1), v(0, 2, 0))],
        )
        .unwrap();
        let defects = g.jacobi_defects();
        assert_eq!(defects.len(), 1);
        assert_eq!(defects[0].1, v(0, 0, 4));
        assert!(!g.check_jacobi());
    }

    #[test]
    fn killing_form_of_sl2() {
        // trace oracle: (ad h)^2 = diag(4,4,0); ad e ad f = diag(2,0,2)
        let k = LieAlgebra::sl2().killing_form();
        assert_eq!(k.get(2, 2), &Poly::int(8));
        assert_eq!(k.get(0, 1), &Poly::int(4));
        assert_eq!(k.get(1, 0), &Poly::int(4));
        assert_eq!(k.get(0, 0), &Poly::zero());
        assert_eq!(k, k.transpose());
        assert!(!k.det().is_zero());
        assert!(LieAlgebra::abelian(3).killing_form().is_zero());
    }

    #[test]
    fn antisymmetry_violation_is_rejected() {
        let names = ["a", "b"].map(String::from).to_vec();
        let r = LieAlgebra::from_brackets(
            names,
            [((0, 1), vec![Poly::int(1), Poly::zero()]), ((1, 0), vec![Poly::int(1), Poly::zero()])],
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn json_roundtrip() {
        let g = LieAlgebra::sl2();
        let back = LieAlgebra::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let bad = json!({"basis": ["a"], "brackets": {"a,b": []}});
        assert!(LieAlgebra::from_json(&bad).is_err());
    }

    #[test]
    fn direct_sum_keeps_summands_commuting() {
        let g = LieAlgebra::direct_sum(&LieAlgebra::sl2(), &LieAlgebra::sl2(), ("1", "2"));
        assert_eq!(g.dim(), 6);
        assert!(g.check_jacobi());
        assert!(g.bracket(&g.unit(0), &g.unit(4)).iter().all(Poly::is_zero));
        assert_eq!(g.basis()[3], "e2");
    }
}
