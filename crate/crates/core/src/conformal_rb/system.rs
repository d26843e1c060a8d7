//! Formal derivation of the coefficient equations of the Rota–Baxter
//! identity for a generic ∂-linear operator on a current algebra.
//!
//! The unknown entry `F_{m j}(∂)` (coordinate `m` of `R(e_j)`) is written
//! `x_m` with one letter per image (`a` for `R(e_1)`, `b` for `R(e_2)`, …).
//! A token `x_m(arg)` with `arg ∈ {∂, -λ, λ+∂, 0}` is an ordinary ring
//! variable, so an equation is a polynomial in tokens.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::ConformalMap;
use crate::conformal::ConformalAlgebra;
use crate::error::Error;
use crate::exact::{parse::parse_expr, poly_from_expr, GaussRat, Poly, Var};
use crate::schema;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Arg {
    D,
    NegLambda,
    LambdaPlusD,
    Zero,
}

impl Arg {
    const ALL: [Arg; 4] = [Arg::D, Arg::NegLambda, Arg::LambdaPlusD, Arg::Zero];

    fn as_str(self) -> &'static str {
        match self {
            Arg::D => "∂",
            Arg::NegLambda => "-λ",
            Arg::LambdaPlusD => "λ+∂",
            Arg::Zero => "0",
        }
    }

    fn poly(self) -> Poly {
        let l = Poly::var(Var::LAMBDA);
        let d = Poly::var(Var::D);
        match self {
            Arg::D => d,
            Arg::NegLambda => -&l,
            Arg::LambdaPlusD => &l + &d,
            Arg::Zero => Poly::zero(),
        }
    }

    fn classify(p: &Poly) -> Option<Arg> {
        Arg::ALL.into_iter().find(|a| a.poly() == *p)
    }
}

fn letter(j: usize) -> String {
    char::from(b'a' + (j % 26) as u8).to_string()
}

/// Token bookkeeping for an operator on an algebra with the given basis.
#[derive(Clone, Debug)]
struct Tokens {
    basis: Vec<String>,
    by_var: BTreeMap<Var, (usize, usize, Arg)>,
}

impl Tokens {
    fn new(basis: &[String]) -> Self {
        let mut by_var = BTreeMap::new();
        for j in 0..basis.len() {
            for m in 0..basis.len() {
                for arg in Arg::ALL {
                    by_var.insert(Self::var_for(basis, m, j, arg), (m, j, arg));
                }
            }
        }
        Tokens {
            basis: basis.to_vec(),
            by_var,
        }
    }

    fn fn_name(basis: &[String], m: usize, j: usize) -> String {
        format!("{}_{}", letter(j), basis[m])
    }

    fn var_for(basis: &[String], m: usize, j: usize, arg: Arg) -> Var {
        Var::named(&format!("{}({})", Self::fn_name(basis, m, j), arg.as_str()))
    }

    fn tok(&self, m: usize, j: usize, arg: Arg) -> Poly {
        Poly::var(Self::var_for(&self.basis, m, j, arg))
    }

    fn lookup(&self, name: &str, arg: &Poly) -> Result<Poly, Error> {
        let arg = Arg::classify(arg).ok_or_else(|| {
            Error::Parse(format!("argument `{arg}` of `{name}` is not one of ∂, -λ, λ+∂, 0"))
        })?;
        let n = self.basis.len();
        for j in 0..n {
            for m in 0..n {
                if Self::fn_name(&self.basis, m, j) == name {
                    return Ok(self.tok(m, j, arg));
                }
            }
        }
        Err(Error::Parse(format!("unknown coefficient function `{name}`")))
    }
}

/// One coefficient equation `poly = 0`, tagged with the generator pair of
/// the identity and the generator coordinate it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub pair: (usize, usize),
    pub coord: usize,
    pub poly: Poly,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub equations: Vec<Equation>,
    tokens: Tokens,
}

/// Scales a polynomial so that its first term (in monomial order) has
/// coefficient 1.
fn canonical(p: &Poly) -> Poly {
    match p.terms().next() {
        Some((_, c)) => p.scale(&c.inv().expect("stored coefficients are nonzero")),
        None => Poly::zero(),
    }
}

impl EquationSystem {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn basis(&self) -> &[String] {
        &self.tokens.basis
    }

    /// Substitutes the entries of an actual operator for the tokens:
    /// `x_m(arg)` becomes entry `(m, j)` evaluated at `∂ = arg`.
    pub fn evaluate(&self, r: &ConformalMap) -> Result<Vec<Poly>, Error> {
        if r.dim() != self.tokens.basis.len() {
            return Err(Error::Size(format!(
                "operator is {0}x{0}, system has {1} generators",
                r.dim(),
                self.tokens.basis.len()
            )));
        }
        let bind: BTreeMap<Var, Poly> = self
            .tokens
            .by_var
            .iter()
            .map(|(&v, &(m, j, arg))| {
                let at: BTreeMap<Var, Poly> = [(Var::D, arg.poly())].into();
                (v, r.matrix.get(m, j).substitute(&at))
            })
            .collect();
        Ok(self.equations.iter().map(|e| e.poly.substitute(&bind)).collect())
    }

    fn term_json(&self, p: &Poly) -> Vec<Value> {
        p.terms()
            .map(|(m, c)| {
                let mut toks = Vec::new();
                for &(v, e) in m.pairs() {
                    let (fname, arg) = match self.tokens.by_var.get(&v) {
                        Some(&(mm, j, arg)) => {
                            (Tokens::fn_name(&self.tokens.basis, mm, j), arg.as_str().to_owned())
                        }
                        None => (v.name().to_owned(), String::new()),
                    };
                    for _ in 0..e {
                        toks.push(json!({ "fn": fname, "arg": arg }));
                    }
                }
                json!({
                    "coeff": {
                        "re": GaussRat::ratio_string(&c.re),
                        "im": GaussRat::ratio_string(&c.im),
                    },
                    "tokens": toks,
                })
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let b = &self.tokens.basis;
        Value::Array(
            self.equations
                .iter()
                .map(|e| {
                    json!({
                        "pair": [b[e.pair.0], b[e.pair.1]],
                        "coord": b[e.coord],
                        "equation": format!("{} = 0", e.poly),
                        "terms": self.term_json(&e.poly),
                    })
                })
                .collect(),
        )
    }
}

/// The coefficient equations for a generic ∂-linear operator of weight `k`
/// on a current algebra: one per unordered generator pair and coordinate.
pub fn derive_system_for(l: &ConformalAlgebra, k: &Poly) -> Result<EquationSystem, Error> {
    if !l.is_current() {
        return Err(Error::UnsupportedAlgebra(
            "formal derivation needs a current algebra".into(),
        ));
    }
    let n = l.rank();
    let toks = Tokens::new(l.generators());
    let t = |i: usize, j: usize, c: usize| l.table_entry(i, j)[c].clone();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let mut equations = Vec::new();
    for (a, b) in pairs {
        let inner: Vec<Poly> = (0..n)
            .map(|c| {
                let mut s = k * &t(a, b, c);
                for m in 0..n {
                    s += &(&toks.tok(m, a, Arg::NegLambda) * &t(m, b, c));
                    s += &(&toks.tok(m, b, Arg::LambdaPlusD) * &t(a, m, c));
                }
                s
            })
            .collect();
        for c in 0..n {
            let mut lhs = Poly::zero();
            for m in 0..n {
                for q in 0..n {
                    let s = t(m, q, c);
                    if !s.is_zero() {
                        lhs += &(&(&toks.tok(m, a, Arg::NegLambda) * &toks.tok(q, b, Arg::LambdaPlusD)) * &s);
                    }
                }
            }
            let mut rhs = Poly::zero();
            for (cc, v) in inner.iter().enumerate() {
                rhs += &(&toks.tok(c, cc, Arg::D) * v);
            }
            equations.push(Equation {
                pair: (a, b),
                coord: c,
                poly: &lhs - &rhs,
            });
        }
    }
    Ok(EquationSystem {
        equations,
        tokens: toks,
    })
}

/// The 18 equations for Cur(sl₂) at weight 0 or 1.
pub fn derive_rb_system(weight: i64) -> Result<EquationSystem, Error> {
    if weight != 0 && weight != 1 {
        return Err(Error::Weight(format!("systems are tabulated for weights 0 and 1, not {weight}")));
    }
    derive_system_for(&ConformalAlgebra::cur_sl2(), &Poly::int(weight))
}

// Transcribed in the order: pairs (h,h), (e,e), (f,f), (e,f), (e,h), (f,h),
// coordinates e, f, h within each pair.
const WEIGHT0: [&str; 18] = [
    "c_e(λ+∂)c_h(-λ) - c_e(-λ)c_h(λ+∂) = a_e(∂)(c_e(λ+∂)-c_e(-λ)) + b_e(∂)(c_f(-λ)-c_f(λ+∂))",
    "c_f(-λ)c_h(λ+∂) - c_f(λ+∂)c_h(-λ) = a_f(∂)(c_e(λ+∂)-c_e(-λ)) + b_f(∂)(c_f(-λ)-c_f(λ+∂))",
    "c_e(-λ)c_f(λ+∂) - c_e(λ+∂)c_f(-λ) = 2a_h(∂)(c_e(λ+∂)-c_e(-λ)) + 2b_h(∂)(c_f(-λ)-c_f(λ+∂))",
    "2a_e(λ+∂)a_h(-λ) - 2a_e(-λ)a_h(λ+∂) = c_e(∂)(a_f(λ+∂)-a_f(-λ)) + 2a_e(∂)(a_h(-λ)-a_h(λ+∂))",
    "2a_f(-λ)a_h(λ+∂) - 2a_f(λ+∂)a_h(-λ) = c_f(∂)(a_f(λ+∂)-a_f(-λ)) + 2a_f(∂)(a_h(-λ)-a_h(λ+∂))",
    "a_e(-λ)a_f(λ+∂) - a_e(λ+∂)a_f(-λ) = c_h(∂)(a_f(λ+∂)-a_f(-λ)) + 2a_h(∂)(a_h(-λ)-a_h(λ+∂))",
    "2b_e(λ+∂)b_h(-λ) - 2b_e(-λ)b_h(λ+∂) = c_e(∂)(b_e(-λ)-b_e(λ+∂)) + 2b_e(∂)(b_h(λ+∂)-b_h(-λ))",
    "2b_f(-λ)b_h(λ+∂) - 2b_f(λ+∂)b_h(-λ) = c_f(∂)(b_e(-λ)-b_e(λ+∂)) + 2b_f(∂)(b_h(λ+∂)-b_h(-λ))",
    "b_e(-λ)b_f(λ+∂) - b_e(λ+∂)b_f(-λ) = c_h(∂)(b_e(-λ)-b_e(λ+∂)) + 2b_h(∂)(b_h(λ+∂)-b_h(-λ))",
    "2(a_h(-λ)b_e(λ+∂)-a_e(-λ)b_h(λ+∂)) = -2b_h(λ+∂)a_e(∂) - 2a_h(-λ)b_e(∂) + (a_e(-λ)+b_f(λ+∂))c_e(∂)",
    "- 2(a_h(-λ)b_f(λ+∂)-a_f(-λ)b_h(λ+∂)) = -2b_h(λ+∂)a_f(∂) - 2a_h(-λ)b_f(∂) + (a_e(-λ)+b_f(λ+∂))c_f(∂)",
    "a_e(-λ)b_f(λ+∂)-a_f(-λ)b_e(λ+∂) = -2b_h(λ+∂)a_h(∂) - 2a_h(-λ)b_h(∂) + (a_e(-λ)+b_f(λ+∂))c_h(∂)",
    "2(a_h(-λ)c_e(λ+∂)-a_e(-λ)c_h(λ+∂)) = -2( a_e(-λ) + c_h(λ+∂) )a_e(∂) + 2a_f(-λ)b_e(∂) + c_f(λ+∂)c_e(∂)",
    "- 2(a_h(-λ)c_f(λ+∂)-a_f(-λ)c_h(λ+∂)) = -2( a_e(-λ) + c_h(λ+∂) )a_f(∂) + 2a_f(-λ)b_f(∂) + c_f(λ+∂)c_f(∂)",
    "a_e(-λ)c_f(λ+∂)-a_f(-λ)c_e(λ+∂) = -2( a_e(-λ) + c_h(λ+∂) )a_h(∂) + 2a_f(-λ)b_h(∂) + c_f(λ+∂)c_h(∂)",
    "2(b_h(-λ)c_e(λ+∂)-b_e(-λ)c_h(λ+∂)) = -2b_e(-λ)a_e(∂) + 2(b_f(-λ)+c_h(λ+∂))b_e(∂) - c_e(λ+∂)c_e(∂)",
    "- 2(b_h(-λ)c_f(λ+∂)-b_f(-λ)c_h(λ+∂)) = -2b_e(-λ)a_f(∂) + 2(b_f(-λ)+c_h(λ+∂))b_f(∂) - c_e(λ+∂)c_f(∂)",
    "b_e(-λ)c_f(λ+∂)-b_f(-λ)c_e(λ+∂) = -2b_e(-λ)a_h(∂) + 2(b_f(-λ)+c_h(λ+∂))b_h(∂) - c_e(λ+∂)c_h(∂)",
];

const WEIGHT1: [&str; 18] = [
    "c_e(λ+∂)c_h(-λ) - c_e(-λ)c_h(λ+∂) = a_e(∂)(c_e(λ+∂)-c_e(-λ)) + b_e(∂)(c_f(-λ)-c_f(λ+∂))",
    "c_f(-λ)c_h(λ+∂) - c_f(λ+∂)c_h(-λ) = a_f(∂)(c_e(λ+∂)-c_e(-λ)) + b_f(∂)(c_f(-λ)-c_f(λ+∂))",
    "c_e(-λ)c_f(λ+∂) - c_e(λ+∂)c_f(-λ) = 2a_h(∂)(c_e(λ+∂)-c_e(-λ)) + 2b_h(∂)(c_f(-λ)-c_f(λ+∂))",
    "2a_e(λ+∂)a_h(-λ) - 2a_e(-λ)a_h(λ+∂) = c_e(∂)(a_f(λ+∂)-a_f(-λ)) + 2a_e(∂)(a_h(-λ)-a_h(λ+∂))",
    "2a_f(-λ)a_h(λ+∂) - 2a_f(λ+∂)a_h(-λ) = c_f(∂)(a_f(λ+∂)-a_f(-λ)) + 2a_f(∂)(a_h(-λ)-a_h(λ+∂))",
    "a_e(-λ)a_f(λ+∂) - a_e(λ+∂)a_f(-λ) = c_h(∂)(a_f(λ+∂)-a_f(-λ)) + 2a_h(∂)(a_h(-λ)-a_h(λ+∂))",
    "2b_e(λ+∂)b_h(-λ) - 2b_e(-λ)b_h(λ+∂) = c_e(∂)(b_e(-λ)-b_e(λ+∂)) + 2b_e(∂)(b_h(λ+∂)-b_h(-λ))",
    "2b_f(-λ)b_h(λ+∂) - 2b_f(λ+∂)b_h(-λ) = c_f(∂)(b_e(-λ)-b_e(λ+∂)) + 2b_f(∂)(b_h(λ+∂)-b_h(-λ))",
    "b_e(-λ)b_f(λ+∂) - b_e(λ+∂)b_f(-λ) = c_h(∂)(b_e(-λ)-b_e(λ+∂)) + 2b_h(∂)(b_h(λ+∂)-b_h(-λ))",
    "2(a_h(-λ)b_e(λ+∂)-a_e(-λ)b_h(λ+∂)) = -2b_h(λ+∂)a_e(∂) - 2a_h(-λ)b_e(∂) + (a_e(-λ)+b_f(λ+∂) +1)c_e(∂)",
    "- 2(a_h(-λ)b_f(λ+∂)-a_f(-λ)b_h(λ+∂)) = -2b_h(λ+∂)a_f(∂) - 2a_h(-λ)b_f(∂) + (a_e(-λ)+b_f(λ+∂) +1)c_f(∂)",
    "a_e(-λ)b_f(λ+∂)-a_f(-λ)b_e(λ+∂) = -2b_h(λ+∂)a_h(∂) - 2a_h(-λ)b_h(∂) + (a_e(-λ)+b_f(λ+∂) +1)c_h(∂)",
    "2(a_h(-λ)c_e(λ+∂)-a_e(-λ)c_h(λ+∂)) = -2( a_e(-λ) + c_h(λ+∂) + 1)a_e(∂) + 2a_f(-λ)b_e(∂) + c_f(λ+∂)c_e(∂)",
    "- 2(a_h(-λ)c_f(λ+∂)-a_f(-λ)c_h(λ+∂)) = -2( a_e(-λ) + c_h(λ+∂) + 1)a_f(∂) + 2a_f(-λ)b_f(∂) + c_f(λ+∂)c_f(∂)",
    "a_e(-λ)c_f(λ+∂)-a_f(-λ)c_e(λ+∂) = -2( a_e(-λ) + c_h(λ+∂) + 1)a_h(∂) + 2a_f(-λ)b_h(∂) + c_f(λ+∂)c_h(∂)",
    "2(b_h(-λ)c_e(λ+∂)-b_e(-λ)c_h(λ+∂)) = -2b_e(-λ)a_e(∂) + 2(b_f(-λ)+c_h(λ+∂) + 1)b_e(∂) - c_e(λ+∂)c_e(∂)",
    "- 2(b_h(-λ)c_f(λ+∂)-b_f(-λ)c_h(λ+∂)) = -2b_e(-λ)a_f(∂) + 2(b_f(-λ)+c_h(λ+∂) + 1)b_f(∂) - c_e(λ+∂)c_f(∂)",
    "b_e(-λ)c_f(λ+∂)-b_f(-λ)c_e(λ+∂) = -2b_e(-λ)a_h(∂) + 2(b_f(-λ)+c_h(λ+∂) + 1)b_h(∂) - c_e(λ+∂)c_h(∂)",
];

/// Parses `lhs = rhs` over the token alphabet of `basis` into `lhs - rhs`.
pub(crate) fn parse_equation(src: &str, basis: &[String]) -> Result<Poly, Error> {
    let toks = Tokens::new(basis);
    let on_call = |name: &str, arg: &Poly| toks.lookup(name, arg);
    let mut sides = src.split('=');
    let (lhs, rhs) = match (sides.next(), sides.next(), sides.next()) {
        (Some(l), Some(r), None) => (l, r),
        (Some(l), None, None) => (l, "0"),
        _ => return Err(Error::Parse(format!("`{src}` has more than one `=`"))),
    };
    let l = poly_from_expr(&parse_expr(lhs)?, &on_call)?;
    let r = poly_from_expr(&parse_expr(rhs)?, &on_call)?;
    Ok(&l - &r)
}

/// The systems as printed for Cur(sl₂), weights 0 and 1.
pub fn reference_system(weight: i64) -> Result<EquationSystem, Error> {
    let src = match weight {
        0 => &WEIGHT0,
        1 => &WEIGHT1,
        k => return Err(Error::Weight(format!("no tabulated system for weight {k}"))),
    };
    let basis: Vec<String> = ["e", "f", "h"].map(String::from).to_vec();
    let pairs = [(2, 2), (0, 0), (1, 1), (0, 1), (0, 2), (1, 2)];
    let mut equations = Vec::new();
    for (i, s) in src.iter().enumerate() {
        equations.push(Equation {
            pair: pairs[i / 3],
            coord: i % 3,
            poly: parse_equation(s, &basis)?,
        });
    }
    Ok(EquationSystem {
        equations,
        tokens: Tokens::new(&basis),
    })
}

#[derive(Clone, Debug, Default)]
pub struct MatchReport {
    /// `(derived index, reference index)`.
    pub matched: Vec<(usize, usize)>,
    pub unmatched_derived: Vec<usize>,
    pub unmatched_reference: Vec<usize>,
}

impl MatchReport {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_derived.is_empty() && self.unmatched_reference.is_empty()
    }

    pub fn mismatch_count(&self) -> usize {
        self.unmatched_derived.len() + self.unmatched_reference.len()
    }
}

/// Pairs equations that agree up to a nonzero scalar (which covers moving
/// terms across the equality sign).
pub fn match_system(derived: &EquationSystem, reference: &EquationSystem) -> MatchReport {
    let canon_ref: Vec<Poly> = reference.equations.iter().map(|e| canonical(&e.poly)).collect();
    let mut used = BTreeSet::new();
    let mut report = MatchReport::default();
    for (i, e) in derived.equations.iter().enumerate() {
        let c = canonical(&e.poly);
        match (0..canon_ref.len()).find(|j| !used.contains(j) && canon_ref[*j] == c) {
            Some(j) => {
                used.insert(j);
                report.matched.push((i, j));
            }
            None => report.unmatched_derived.push(i),
        }
    }
    report.unmatched_reference = (0..canon_ref.len()).filter(|j| !used.contains(j)).collect();
    report
}

/// Key for the JSON tags.
pub fn pair_label(sys: &EquationSystem, e: &Equation) -> String {
    format!(
        "[{}]/{}",
        schema::format_key(&[e.pair.0, e.pair.1], sys.basis()),
        sys.basis()[e.coord]
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_systems_match_tabulated_ones() {
        for w in [0, 1] {
            let d = derive_rb_system(w).unwrap();
            let r = reference_system(w).unwrap();
            assert_eq!(d.len(), 18);
            let m = match_system(&d, &r);
            assert!(m.is_bijection(), "weight {w}: {m:?}");
            for (i, j) in m.matched {
                assert_eq!(d.equations[i].pair, r.equations[j].pair);
                assert_eq!(d.equations[i].coord, r.equations[j].coord);
            }
        }
    }

    #[test]
    fn weights_differ_in_the_mixed_pairs() {
        let d = derive_rb_system(0).unwrap();
        let r = reference_system(1).unwrap();
        let m = match_system(&d, &r);
        assert_eq!(m.matched.len(), 9);
        assert_eq!(m.mismatch_count(), 18);
    }

    #[test]
    fn anchored_equations() {
        let d = derive_rb_system(0).unwrap();
        let basis = d.basis().to_vec();
        let hh_e = d.equations.iter().find(|e| e.pair == (2, 2) && e.coord == 0).unwrap();
        let want = parse_equation(WEIGHT0[0], &basis).unwrap();
        assert_eq!(canonical(&hh_e.poly), canonical(&want));
        let d1 = derive_rb_system(1).unwrap();
        let eh_f = d1.equations.iter().find(|e| e.pair == (0, 2) && e.coord == 1).unwrap();
        assert_eq!(canonical(&eh_f.poly), canonical(&parse_equation(WEIGHT1[13], &basis).unwrap()));
    }

    #[test]
    fn evaluation_on_an_operator() {
        let d = derive_rb_system(1).unwrap();
        let p = |s: &str| Poly::parse(s).unwrap();
        let q1 = ConformalMap::from_images(vec![
            vec![p("-1"), p("0"), p("0")],
            vec![p("0"), p("0"), p("0")],
            vec![p("0"), p("0"), p("∂^2 + 3")],
        ])
        .unwrap();
        assert!(d.evaluate(&q1).unwrap().iter().all(Poly::is_zero));
        let d0 = derive_rb_system(0).unwrap();
        assert!(d0.evaluate(&q1).unwrap().iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn json_layout() {
        let d = derive_rb_system(0).unwrap();
        let j = d.to_json();
        assert_eq!(j.as_array().unwrap().len(), 18);
        let first = &j[0]["terms"][0];
        assert!(first["tokens"].as_array().unwrap().iter().all(|t| t["fn"].is_string()));
    }

    #[test]
    fn rejects_unknown_tokens() {
        let basis: Vec<String> = ["e", "f", "h"].map(String::from).to_vec();
        assert!(parse_equation("z_e(∂) = 0", &basis).is_err());
        assert!(parse_equation("a_e(2λ) = 0", &basis).is_err());
    }
}
