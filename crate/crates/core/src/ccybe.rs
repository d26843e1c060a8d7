//! The conformal classical Yang–Baxter equation on current algebras.
//!
//! A rank-2 tensor `r = Σ A_pq(∂₁, ∂₂) p ⊗ q` is stored as a
//! [`TensorElement`] whose coefficients live in the slot variables. Rank-3
//! results are reduced modulo `∂₁ + ∂₂ + ∂₃` by eliminating `∂₃`.

use std::collections::BTreeMap;

use crate::conformal::{ConformalAlgebra, TensorElement};
use crate::conformal_rb::ConformalMap;
use crate::error::Error;
use crate::exact::{Poly, PolyMatrix, Var};

fn require_rank(r: &TensorElement, rank: usize) -> Result<(), Error> {
    if r.rank() != rank {
        return Err(Error::Rank(format!("expected a rank-{rank} tensor, got rank {}", r.rank())));
    }
    Ok(())
}

fn d(n: usize) -> Poly {
    Poly::var(Var::slot(n))
}

/// `τ(A(∂₁, ∂₂) a ⊗ b) = A(∂₂, ∂₁) b ⊗ a`.
pub fn tau(r: &TensorElement) -> Result<TensorElement, Error> {
    require_rank(r, 2)?;
    let swap: BTreeMap<Var, Poly> = [(Var::D1, d(1)), (Var::D2, d(0))].into();
    TensorElement::from_terms(
        2,
        r.terms().map(|(k, c)| (vec![k[1], k[0]], c.substitute(&swap))),
    )
}

pub fn is_skew(r: &TensorElement) -> bool {
    match tau(r) {
        Ok(t) => r.add(&t).map(|s| s.is_zero()).unwrap_or(false),
        Err(_) => false,
    }
}

/// Representative modulo `∂₁ + ∂₂ + ∂₃`: `∂₃ ↦ -∂₁ - ∂₂`.
pub fn reduce_quotient(t: &TensorElement) -> TensorElement {
    let bind: BTreeMap<Var, Poly> = [(Var::D3, -&(&d(0) + &d(1)))].into();
    t.substitute(&bind)
}

/// The double bracket `⟦r, r⟧`, reduced to the quotient representative.
///
/// For `r = Σ A_pq(∂₁, ∂₂) p ⊗ q` on `Cur(g)` the three terms become
///
/// ```text
///   A_pq(-∂₂, ∂₂)      A_p'q'(∂₁+∂₂, ∂₃)  [p, p'] ⊗ q ⊗ q'
/// - A_pq(∂₁, ∂₂+∂₃)   A_p'q'(-∂₃, ∂₃)    p ⊗ [p', q] ⊗ q'
/// - A_pq(∂₁, ∂₂+∂₃)   A_p'q'(∂₂, -∂₂)    p ⊗ p' ⊗ [q', q]
/// ```
pub fn double_bracket(l: &ConformalAlgebra, r: &TensorElement) -> Result<TensorElement, Error> {
    require_rank(r, 2)?;
    let g = l.underlying_lie()?;
    let n = g.dim();
    if let Some(k) = r.terms().map(|(k, _)| k).find(|k| k.iter().any(|&i| i >= n)) {
        return Err(Error::Size(format!("tensor index {k:?} exceeds rank {n}")));
    }
    let at = |x: Poly, y: Poly| -> BTreeMap<Var, Poly> { [(Var::D1, x), (Var::D2, y)].into() };
    let (d1, d2, d3) = (d(0), d(1), d(2));
    let subs = [
        at(-&d2, d2.clone()),
        at(&d1 + &d2, d3.clone()),
        at(d1.clone(), &d2 + &d3),
        at(-&d3, d3.clone()),
        at(d2.clone(), -&d2),
    ];
    let terms: Vec<(usize, usize, Vec<Poly>)> = r
        .terms()
        .map(|(k, c)| (k[0], k[1], subs.iter().map(|s| c.substitute(s)).collect()))
        .collect();
    let mut out = TensorElement::zero(3);
    for (p, q, a) in &terms {
        for (p2, q2, b) in &terms {
            let t1 = &a[0] * &b[1];
            for (s, c) in g.bracket_basis(*p, *p2).iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(vec![s, *q, *q2], &(&t1 * c));
                }
            }
            let t2 = &a[2] * &b[3];
            for (s, c) in g.bracket_basis(*p2, *q).iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(vec![*p, s, *q2], &-&(&t2 * c));
                }
            }
            let t3 = &a[2] * &b[4];
            for (s, c) in g.bracket_basis(*q2, *q).iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(vec![*p, *p2, s], &-&(&t3 * c));
                }
            }
        }
    }
    Ok(reduce_quotient(&out))
}

pub fn check_ccybe(l: &ConformalAlgebra, r: &TensorElement) -> Result<bool, Error> {
    Ok(double_bracket(l, r)?.is_zero())
}

/// Generators `a` with `a_μ ⟦r, r⟧ ≠ 0` once `μ = -(∂₁ + ∂₂ + ∂₃)`.
pub fn weak_ccybe_defects(
    l: &ConformalAlgebra,
    r: &TensorElement,
) -> Result<Vec<(usize, TensorElement)>, Error> {
    let rr = double_bracket(l, r)?;
    let mu = Poly::var(Var::MU);
    let at: BTreeMap<Var, Poly> = [(Var::MU, -&(&(&d(0) + &d(1)) + &d(2)))].into();
    let mut out = Vec::new();
    for a in 0..l.rank() {
        let t = l.tensor_action(&l.unit(a), &rr, &mu)?;
        let t = reduce_quotient(&t.substitute(&at));
        if !t.is_zero() {
            out.push((a, t));
        }
    }
    Ok(out)
}

pub fn check_weak_ccybe(l: &ConformalAlgebra, r: &TensorElement) -> Result<bool, Error> {
    Ok(weak_ccybe_defects(l, r)?.is_empty())
}

/// Generators `a` with `a_λ(r + τ(r)) ≠ 0` at `λ = -(∂₁ + ∂₂)`.
pub fn invariance_defects(
    l: &ConformalAlgebra,
    r: &TensorElement,
) -> Result<Vec<(usize, TensorElement)>, Error> {
    let sym = r.add(&tau(r)?)?;
    let lam = Poly::var(Var::LAMBDA);
    let at: BTreeMap<Var, Poly> = [(Var::LAMBDA, -&(&d(0) + &d(1)))].into();
    let mut out = Vec::new();
    for a in 0..l.rank() {
        let t = l.tensor_action(&l.unit(a), &sym, &lam)?.substitute(&at);
        if !t.is_zero() {
            out.push((a, t));
        }
    }
    Ok(out)
}

pub fn check_invariance(l: &ConformalAlgebra, r: &TensorElement) -> Result<bool, Error> {
    Ok(invariance_defects(l, r)?.is_empty())
}

/// A conformal bilinear form `⟨f(∂)a, g(∂)b⟩_λ = f(-λ) g(λ) K(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalForm {
    base: PolyMatrix,
}

impl ConformalForm {
    /// Requires a symmetric, ∂- and λ-free base matrix.
    pub fn new(base: PolyMatrix) -> Result<Self, Error> {
        if base != base.transpose() {
            return Err(Error::Form("the base matrix is not symmetric".into()));
        }
        if base.entries().any(|p| p.involves(Var::D) || p.involves(Var::LAMBDA)) {
            return Err(Error::Form("the base matrix must not involve λ or ∂".into()));
        }
        Ok(ConformalForm { base })
    }

    /// The Killing form of the underlying Lie algebra of a current algebra.
    pub fn killing(l: &ConformalAlgebra) -> Result<Self, Error> {
        ConformalForm::new(l.underlying_lie()?.killing_form())
    }

    pub fn base(&self) -> &PolyMatrix {
        &self.base
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.base.det().is_zero()
    }

    /// `⟨[a_μ b], c⟩_λ - ⟨a, [b_{λ-∂} c]⟩_μ` over generator triples; empty
    /// when the form is invariant.
    pub fn invariance_defects(&self, l: &ConformalAlgebra) -> Vec<((usize, usize, usize), Poly)> {
        let n = l.rank();
        let (lam, mu) = (Poly::var(Var::LAMBDA), Poly::var(Var::MU));
        let nu = Var::named("ν");
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = l.bracket_at(&l.unit(a), &l.unit(b), &mu);
                let bc_generic = |c: usize| l.bracket_at(&l.unit(b), &l.unit(c), &Poly::var(nu));
                for c in 0..n {
                    let lhs = pair_at(self, &ab, &l.unit(c), &lam);
                    // ν = λ - ∂ with ∂ acting on the result
                    let shift: BTreeMap<Var, Poly> = [(nu, &lam - &Poly::var(Var::D))].into();
                    let bc: Vec<Poly> = bc_generic(c).iter().map(|p| p.substitute(&shift)).collect();
                    let rhs = pair_at(self, &l.unit(a), &bc, &mu);
                    let diff = &lhs - &rhs;
                    if !diff.is_zero() {
                        out.push(((a, b, c), diff));
                    }
                }
            }
        }
        out
    }
}

fn pair_at(form: &ConformalForm, x: &[Poly], y: &[Poly], at: &Poly) -> Poly {
    let xs: Vec<Poly> = x.iter().map(|p| p.subst(&[(Var::D, -at)])).collect();
    let ys: Vec<Poly> = y.iter().map(|p| p.subst(&[(Var::D, at.clone())])).collect();
    let mut acc = Poly::zero();
    for (a, xa) in xs.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in ys.iter().enumerate() {
            let k = form.base.get(a, b);
            if !yb.is_zero() && !k.is_zero() {
                acc += &(&(xa * yb) * k);
            }
        }
    }
    acc
}

/// `⟨x, y⟩_λ = Σ x_a(-λ) y_b(λ) K(a, b)`.
pub fn conformal_form(form: &ConformalForm, x: &[Poly], y: &[Poly]) -> Poly {
    pair_at(form, x, y, &Poly::var(Var::LAMBDA))
}

/// `P(u) = Σ_{i,j} A_ij(-∂, ∂) K(i, u) j`.
pub fn rb_from_solution(form: &ConformalForm, r: &TensorElement) -> Result<ConformalMap, Error> {
    require_rank(r, 2)?;
    if !form.is_nondegenerate() {
        return Err(Error::Form("the form is degenerate".into()));
    }
    let n = form.base.dim();
    if let Some(k) = r.terms().map(|(k, _)| k).find(|k| k.iter().any(|&i| i >= n)) {
        return Err(Error::Size(format!("tensor index {k:?} exceeds dimension {n}")));
    }
    let diag: BTreeMap<Var, Poly> = [
        (Var::D1, -&Poly::var(Var::D)),
        (Var::D2, Poly::var(Var::D)),
    ]
    .into();
    let mut m = PolyMatrix::zero(n);
    for (k, c) in r.terms() {
        let (i, j) = (k[0], k[1]);
        let a = c.substitute(&diag);
        for u in 0..n {
            let kiu = form.base.get(i, u);
            if !kiu.is_zero() {
                let cur = m.get(j, u).clone();
                m.set(j, u, &cur + &(&a * kiu));
            }
        }
    }
    ConformalMap::new(m)
}

/// The three cases of skew-symmetric solutions on Cur(sl₂).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionCase {
    /// `a_ee = 1`, `β = γ = 0`.
    I,
    /// `a_hh = s ≠ 0`, `α = β = γ = 0`.
    II,
    /// All `a_ql = 0`.
    III,
}

impl std::str::FromStr for SolutionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "i" | "I" | "1" => Ok(SolutionCase::I),
            "ii" | "II" | "2" => Ok(SolutionCase::II),
            "iii" | "III" | "3" => Ok(SolutionCase::III),
            _ => Err(Error::Family(format!("unknown case `{s}`, expected i, ii or iii"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub alpha: Poly,
    pub beta: Poly,
    pub gamma: Poly,
    /// The nonzero scalar `a_hh` of case (ii).
    pub scale: Poly,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            alpha: Poly::zero(),
            beta: Poly::zero(),
            gamma: Poly::zero(),
            scale: Poly::one(),
        }
    }
}

/// The variable of the polynomial `f` in the family constructor.
pub fn family_var() -> Var {
    Var::named("x")
}

/// `A(x, y) = g((x - y)/2)` with `g(t) = t·f(t²)`; it is odd under
/// `x ↔ y` and restricts to `x·f(x²)` on `y = -x`.
pub fn antisymmetric_lift(f: &Poly) -> Poly {
    let x = family_var();
    let t = (&d(0) - &d(1)).scale(&crate::exact::GaussRat::ratio(1, 2));
    let g = &Poly::var(x) * &f.subst(&[(x, Poly::var(x).pow(2))]);
    g.subst(&[(x, t)])
}

/// A skew-symmetric tensor on Cur(sl₂) (basis e, f, h) with
/// `A_ql(x, -x) - A_ql(0, 0) = a_ql·x·f(x²)` and the constants
/// `A_he(0,0) = α`, `A_fe(0,0) = β`, `A_hf(0,0) = γ`.
pub fn cursl2_solution_family(
    case: SolutionCase,
    f: &Poly,
    params: &FamilyParams,
) -> Result<TensorElement, Error> {
    let x = family_var();
    if f.vars().contains(&Var::D) || f.vars().iter().any(|v| v.name().starts_with('∂')) {
        return Err(Error::Family("f must be a polynomial in x".into()));
    }
    let deg = f.degree_in(x);
    let lead: Poly = f
        .coeff_extract(&[x].into())
        .into_iter()
        .find(|(m, _)| m.exponent(x) == deg)
        .map(|(_, c)| c)
        .unwrap_or_else(Poly::zero);
    if lead != Poly::one() {
        return Err(Error::Family(format!("f = {f} is not monic in x")));
    }
    let FamilyParams { alpha, beta, gamma, scale } = params;
    let need_zero = |p: &Poly, name: &str| {
        if p.is_zero() {
            Ok(())
        } else {
            Err(Error::Family(format!("case {case:?} requires {name} = 0, got {p}")))
        }
    };
    let lift = antisymmetric_lift(f);
    let (e, ff, h) = (0, 1, 2);
    let mut terms: Vec<(Vec<usize>, Poly)> = Vec::new();
    match case {
        SolutionCase::I => {
            need_zero(beta, "β")?;
            need_zero(gamma, "γ")?;
            terms.push((vec![e, e], lift));
        }
        SolutionCase::II => {
            need_zero(alpha, "α")?;
            need_zero(beta, "β")?;
            need_zero(gamma, "γ")?;
            if scale.is_zero() {
                return Err(Error::Family("case II needs a nonzero scalar a_hh".into()));
            }
            terms.push((vec![h, h], &lift * scale));
        }
        SolutionCase::III => {}
    }
    for (c, (i, j)) in [(alpha, (h, e)), (beta, (ff, e)), (gamma, (h, ff))] {
        if !c.is_zero() {
            terms.push((vec![i, j], c.clone()));
            terms.push((vec![j, i], -c));
        }
    }
    TensorElement::from_terms(2, terms)
}
