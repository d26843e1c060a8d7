//! Rota–Baxter operators on Cur(sl₂) and their normalizing automorphisms.
//!
//! Parameters are ring variables: `α`, `β`, `t`, and `q0…q3` for the
//! polynomial `q(∂) = q0 + q1∂ + q2∂² + q3∂³`.

use std::collections::BTreeMap;

use super::{conjugate_conformal, ConformalMap};
use crate::conformal::ConformalAlgebra;
use crate::error::Error;
use crate::exact::{parse_vector, GaussRat, Poly, Var};
use crate::lie::{automorphisms, catalog_sl2, LinearMap};

/// How an intermediate family is brought to a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalizer {
    /// Already a normal form.
    Identity,
    /// `ψ(α)`, symbolic.
    Psi,
    /// `ξ(α)`, needs `√α ∈ Q(i)`.
    Xi,
    /// `π(β)` when `α + β² = 0`, otherwise `θ(α, β)` with `√(α+β²) ∈ Q(i)`.
    PiOrTheta,
}

#[derive(Clone, Debug)]
pub struct ConformalCatalogEntry {
    pub name: String,
    pub weight: Poly,
    pub map: ConformalMap,
    pub normalizer: Normalizer,
}

pub fn q_poly() -> Poly {
    Poly::parse("q0 + q1∂ + q2∂^2 + q3∂^3").expect("literal")
}

fn sl2_names() -> Vec<String> {
    ["e", "f", "h"].map(String::from).to_vec()
}

/// A map on Cur(sl₂) from images written over (e, f, h); the name `q`
/// stands for [`q_poly`].
pub fn cur_sl2_map(images: [&str; 3]) -> ConformalMap {
    let bind: BTreeMap<Var, Poly> = [(Var::named("q"), q_poly())].into();
    let names = sl2_names();
    let cols = images
        .iter()
        .map(|s| {
            parse_vector(s, &names)
                .unwrap_or_else(|e| panic!("bad built-in image `{s}`: {e}"))
                .iter()
                .map(|p| p.substitute(&bind))
                .collect()
        })
        .collect();
    ConformalMap::from_images(cols).expect("3x3 without λ")
}

fn entry(name: &str, weight: i64, images: [&str; 3], normalizer: Normalizer) -> ConformalCatalogEntry {
    ConformalCatalogEntry {
        name: name.into(),
        weight: Poly::int(weight),
        map: cur_sl2_map(images),
        normalizer,
    }
}

/// Weight 0: the normal forms `R1`, `R2`, the intermediate families
/// `R_1`…`R_4` with their normalizers, and ∂-linear extensions `ext-*` of
/// the sl₂ catalog. Weight 1: `Q1`, extensions, and the trivial operators.
///
/// `R_3` is stored with the denominator cleared (`q ↦ αq`):
/// `R(e) = αq(e + αf)`, `R(f) = q(e + αf)`; see [`r3_exact`].
pub fn catalog_cur_sl2(weight: i64) -> Result<Vec<ConformalCatalogEntry>, Error> {
    use Normalizer::*;
    let mut out = match weight {
        0 => vec![
            entry("R1", 0, ["0", "q*e + α*h", "-2α*e"], Identity),
            entry("R2", 0, ["0", "0", "q*h"], Identity),
            entry("R_1", 0, ["0", "q*e + α*h", "-2α*e"], Identity),
            entry("R_2", 0, ["0", "α/2*q*(α*e + h)", "q*(α*e + h)"], Psi),
            entry("R_3", 0, ["α*q*(e + α*f)", "q*(e + α*f)", "0"], Xi),
            entry(
                "R_4",
                0,
                ["q*(α*e + f + β*h)", "α*q*(α*e + f + β*h)", "2β*q*(α*e + f + β*h)"],
                PiOrTheta,
            ),
        ],
        1 => vec![entry("Q1", 1, ["-e", "0", "q*h"], Identity)],
        k => {
            return Err(Error::Catalog(format!(
                "Cur(sl2) catalogs exist for weights 0 and 1, not {k}"
            )))
        }
    };
    for e in catalog_sl2(weight)? {
        let name = match e.name.as_str() {
            "zero" | "minus-id" => e.name.clone(),
            other => format!("ext-{other}"),
        };
        out.push(ConformalCatalogEntry {
            name,
            weight: e.weight,
            map: super::extend_partial(&e.map),
            normalizer: Identity,
        });
    }
    Ok(out)
}

/// `R_3` with the parameter as printed: `R(e) = q(e + αf)`,
/// `R(f) = q(α⁻¹e + f)`, for a nonzero scalar `α`.
pub fn r3_exact(alpha: &GaussRat) -> Result<ConformalMap, Error> {
    let inv = alpha
        .inv()
        .ok_or_else(|| Error::Catalog("R_3 needs α ≠ 0".into()))?;
    let m = cur_sl2_map(["q*(e + a*f)", "q*(k*e + f)", "0"]);
    let bind: BTreeMap<Var, Poly> = [
        (Var::named("a"), Poly::constant(alpha.clone())),
        (Var::named("k"), Poly::constant(inv)),
    ]
    .into();
    Ok(m.substitute(&bind))
}

fn as_scalar(p: &Poly, what: &str) -> Result<GaussRat, Error> {
    p.as_constant().ok_or_else(|| {
        Error::Catalog(format!("{what} must be instantiated to a number, got `{p}`"))
    })
}

impl Normalizer {
    /// The automorphism for the given values of `α` and `β`.
    pub fn automorphism(&self, alpha: &Poly, beta: &Poly) -> Result<LinearMap, Error> {
        match self {
            Normalizer::Identity => Ok(LinearMap::identity(3)),
            Normalizer::Psi => Ok(automorphisms::psi(alpha)),
            Normalizer::Xi => automorphisms::xi(&as_scalar(alpha, "α")?),
            Normalizer::PiOrTheta => {
                let s = alpha + &(beta * beta);
                if s.is_zero() {
                    Ok(automorphisms::pi(beta))
                } else {
                    automorphisms::theta(&as_scalar(alpha, "α")?, &as_scalar(beta, "β")?)
                }
            }
        }
    }
}

impl ConformalCatalogEntry {
    /// Substitutes `params` and conjugates by the normalizer: `φ⁻¹Rφ`.
    pub fn normalize(&self, params: &BTreeMap<Var, Poly>) -> Result<ConformalMap, Error> {
        let m = self.map.substitute(params);
        let get = |name: &str| {
            params
                .get(&Var::named(name))
                .cloned()
                .unwrap_or_else(|| Poly::named(name))
        };
        let phi = self.normalizer.automorphism(&get("α"), &get("β"))?;
        conjugate_conformal(&ConformalAlgebra::cur_sl2(), &m, &phi)
    }
}

fn is_free_of_d(p: &Poly) -> bool {
    !p.involves(Var::D)
}

/// `(q, α)` when `R(e) = 0`, `R(f) = q e + α h`, `R(h) = -2α e` with `α`
/// free of ∂.
pub fn match_r1(r: &ConformalMap) -> Option<(Poly, Poly)> {
    let m = &r.matrix;
    let z = |i: usize, j: usize| m.get(i, j).is_zero();
    let alpha = m.get(2, 1).clone();
    let ok = z(0, 0) && z(1, 0) && z(2, 0)
        && z(1, 1)
        && is_free_of_d(&alpha)
        && *m.get(0, 2) == alpha.scale(&GaussRat::from(-2))
        && z(1, 2) && z(2, 2);
    ok.then(|| (m.get(0, 1).clone(), alpha))
}

/// `q` when `R(e) = R(f) = 0` and `R(h) = q h`.
pub fn match_r2(r: &ConformalMap) -> Option<Poly> {
    let m = &r.matrix;
    let ok = (0..3).all(|i| (0..3).all(|j| (i, j) == (2, 2) || m.get(i, j).is_zero()));
    ok.then(|| m.get(2, 2).clone())
}

/// `q` when `R(e) = -e`, `R(f) = 0`, `R(h) = q h`.
pub fn match_q1(r: &ConformalMap) -> Option<Poly> {
    let m = &r.matrix;
    let ok = *m.get(0, 0) == Poly::int(-1)
        && (0..3).all(|i| (0..3).all(|j| matches!((i, j), (0, 0) | (2, 2)) || m.get(i, j).is_zero()));
    ok.then(|| m.get(2, 2).clone())
}

/// Cartan-type operators on `g`: `R` maps the span of `cartan` into itself
/// by `block` (column convention over `cartan`), sends `positive` to
/// `-k·positive` and kills everything else.
pub fn cartan_operator(
    dim: usize,
    cartan: &[usize],
    block: &[Vec<Poly>],
    positive: &[usize],
    k: &Poly,
) -> Result<ConformalMap, Error> {
    let mut m = crate::exact::PolyMatrix::zero(dim);
    if block.len() != cartan.len() || block.iter().any(|c| c.len() != cartan.len()) {
        return Err(Error::Size("Cartan block does not match the Cartan basis".into()));
    }
    for (cj, &j) in cartan.iter().enumerate() {
        for (ci, &i) in cartan.iter().enumerate() {
            m.set(i, j, block[cj][ci].clone());
        }
    }
    for &p in positive {
        m.set(p, p, -k);
    }
    ConformalMap::new(m)
}

/// Weight-0 operators on the rank-2 algebra `[a_λ a] = (∂+2λ)a`,
/// `[a_λ b] = (∂+λ)b`, `[b_λ b] = 0`: form `i` with a parameter `μ`, and
/// form `ii` with `R(a) = q(∂)b`.
pub fn catalog_rank2() -> Vec<ConformalCatalogEntry> {
    let p = |s: &str| Poly::parse(s).expect("literal");
    let form_i = ConformalMap::from_images(vec![vec![p("-μ"), p("-μ")], vec![p("μ"), p("μ")]])
        .expect("2x2");
    let form_ii = ConformalMap::from_images(vec![vec![Poly::zero(), q_poly()], vec![Poly::zero(); 2]])
        .expect("2x2");
    vec![
        ConformalCatalogEntry {
            name: "i".into(),
            weight: Poly::zero(),
            map: form_i,
            normalizer: Normalizer::Identity,
        },
        ConformalCatalogEntry {
            name: "ii".into(),
            weight: Poly::zero(),
            map: form_ii,
            normalizer: Normalizer::Identity,
        },
    ]
}

/// `Cur(sl₂ ⊕ … ⊕ sl₂)` with basis `e1, f1, h1, e2, …`.
pub fn cur_sl2_sum(copies: usize) -> Result<ConformalAlgebra, Error> {
    if copies == 0 {
        return Err(Error::Catalog("need at least one copy of sl2".into()));
    }
    let sl2 = crate::lie::LieAlgebra::sl2();
    if copies == 1 {
        return ConformalAlgebra::cur_of(&sl2);
    }
    let mut g = crate::lie::LieAlgebra::direct_sum(&sl2, &sl2, ("1", "2"));
    for c in 3..=copies {
        g = crate::lie::LieAlgebra::direct_sum(&g, &sl2, ("", &c.to_string()));
    }
    ConformalAlgebra::cur_of(&g)
}

/// The Cartan-type operator on `Cur(sl₂^copies)`: the Cartan span goes to
/// itself by a generic ∂-linear block with entries
/// `u_ij + v_ij∂ + w_ij∂²`, positive root vectors go to `-k` times
/// themselves (nothing at weight 0) and negative ones to zero.
pub fn cartan_example(copies: usize, weight: i64) -> Result<ConformalCatalogEntry, Error> {
    if !(0..=1).contains(&weight) {
        return Err(Error::Catalog(format!("Cartan examples exist for weights 0 and 1, not {weight}")));
    }
    let l = cur_sl2_sum(copies)?;
    let cartan: Vec<usize> = (0..copies).map(|c| 3 * c + 2).collect();
    let positive: Vec<usize> = if weight == 1 {
        (0..copies).map(|c| 3 * c).collect()
    } else {
        Vec::new()
    };
    let block: Vec<Vec<Poly>> = (0..copies)
        .map(|j| {
            (0..copies)
                .map(|i| {
                    Poly::parse(&format!("u{i}{j} + v{i}{j}∂ + w{i}{j}∂^2")).expect("literal")
                })
                .collect()
        })
        .collect();
    let map = cartan_operator(l.rank(), &cartan, &block, &positive, &Poly::int(weight))?;
    Ok(ConformalCatalogEntry {
        name: format!("cartan-{copies}"),
        weight: Poly::int(weight),
        map,
        normalizer: Normalizer::Identity,
    })
}
