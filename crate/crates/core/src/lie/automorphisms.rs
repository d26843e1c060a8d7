//! Automorphisms of sl₂ in the basis (e, f, h).
//!
//! Maps whose entries need a square root take rational parameters and fail
//! unless the root lies in Q(i).

use super::catalog::sl2_map_with;
use super::rb::LinearMap;
use crate::error::Error;
use crate::exact::{GaussRat, Poly};

fn root(x: &GaussRat, what: &str) -> Result<GaussRat, Error> {
    match x.sqrt_exact() {
        Some(r) if !r.is_zero() => Ok(r),
        Some(_) => Err(Error::Catalog(format!("{what} vanishes"))),
        None => Err(Error::Catalog(format!("{what} = √({x}) is not in Q(i)"))),
    }
}

/// e ↦ f, f ↦ e, h ↦ -h.
pub fn weyl() -> LinearMap {
    sl2_map_with(["f", "e", "-h"], &[])
}

/// e ↦ c·e, f ↦ c⁻¹·f, h ↦ h.
pub fn torus(c: &GaussRat) -> Result<LinearMap, Error> {
    let inv = c
        .inv()
        .ok_or_else(|| Error::SingularMap("torus element with c = 0".into()))?;
    Ok(sl2_map_with(
        ["c*e", "d*f", "h"],
        &[("c", Poly::constant(c.clone())), ("d", Poly::constant(inv))],
    ))
}

/// exp(ad(t·e)).
pub fn unipotent_e(t: &Poly) -> LinearMap {
    sl2_map_with(["e", "f + t*h - t^2*e", "h - 2t*e"], &[("t", t.clone())])
}

/// exp(ad(t·f)).
pub fn unipotent_f(t: &Poly) -> LinearMap {
    sl2_map_with(["e - t*h - t^2*f", "f", "h + 2t*f"], &[("t", t.clone())])
}

/// Normalizer of R₂: e ↦ e, f ↦ f - (α/2)h - (α²/4)e, h ↦ αe + h.
pub fn psi(alpha: &Poly) -> LinearMap {
    sl2_map_with(
        ["e", "f - a/2*h - a^2/4*e", "a*e + h"],
        &[("a", alpha.clone())],
    )
}

/// Normalizer of R₃; requires √α ∈ Q(i).
pub fn xi(alpha: &GaussRat) -> Result<LinearMap, Error> {
    let s = root(alpha, "√α")?;
    let inv2s = (&GaussRat::from(2) * &s).inv().expect("nonzero root");
    Ok(sl2_map_with(
        ["k*(s*h - e + a*f)", "k*(s*h + e - a*f)", "2k*(e + a*f)"],
        &[
            ("a", Poly::constant(alpha.clone())),
            ("s", Poly::constant(s)),
            ("k", Poly::constant(inv2s)),
        ],
    ))
}

/// Normalizer of R₄ when α + β² = 0.
pub fn pi(beta: &Poly) -> LinearMap {
    sl2_map_with(
        ["-b^2*e + f + b*h", "e", "2b*e - h"],
        &[("b", beta.clone())],
    )
}

/// Normalizer of R₄ when α + β² ≠ 0; requires D = √(α+β²) ∈ Q(i).
pub fn theta(alpha: &GaussRat, beta: &GaussRat) -> Result<LinearMap, Error> {
    let d = root(&(alpha + &(beta * beta)), "D")?;
    let k = (&(&GaussRat::from(2) * &GaussRat::i()) * &d).inv().expect("nonzero D");
    let dinv = d.inv().expect("nonzero D");
    Ok(sl2_map_with(
        [
            "k*(a*e - f + (b + d)*(2b*e - h))",
            "k*(a*e - f + (b - d)*(2b*e - h))",
            "m*(a*e + f + b*h)",
        ],
        &[
            ("a", Poly::constant(alpha.clone())),
            ("b", Poly::constant(beta.clone())),
            ("d", Poly::constant(d)),
            ("k", Poly::constant(k)),
            ("m", Poly::constant(dinv)),
        ],
    ))
}
