use std::collections::{BTreeMap, BTreeSet};

use super::gauss::GaussRat;
use super::parse::{parse_expr, Expr};
use super::poly::{Monomial, Poly};
use super::var::Var;
use crate::error::Error;

/// A declared variable alphabet. The checked operations here reject
/// polynomials that stray outside it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    vars: BTreeSet<Var>,
}

#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    ScalarMul(GaussRat),
}

impl Alphabet {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Self {
        Alphabet {
            vars: vars.into_iter().collect(),
        }
    }

    pub fn from_names(names: &[&str]) -> Self {
        Alphabet::new(names.iter().map(|n| Var::named(n)))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.contains(&v)
    }

    pub fn vars(&self) -> &BTreeSet<Var> {
        &self.vars
    }

    pub fn check(&self, p: &Poly) -> Result<(), Error> {
        match p.vars().into_iter().find(|v| !self.vars.contains(v)) {
            Some(v) => Err(Error::Alphabet(format!(
                "variable {v} is not in the alphabet {:?}",
                self.vars
            ))),
            None => Ok(()),
        }
    }

    /// Checked ring arithmetic; `q` is ignored by unary operations.
    pub fn arith(&self, p: &Poly, q: &Poly, op: &ArithOp) -> Result<Poly, Error> {
        self.check(p)?;
        self.check(q)?;
        Ok(match op {
            ArithOp::Add => p + q,
            ArithOp::Sub => p - q,
            ArithOp::Mul => p * q,
            ArithOp::Neg => -p,
            ArithOp::ScalarMul(c) => p.scale(c),
        })
    }

    /// Checked substitution: bound variables must belong to this alphabet
    /// and images must lie in `target`.
    pub fn substitute(
        &self,
        p: &Poly,
        bindings: &BTreeMap<Var, Poly>,
        target: &Alphabet,
    ) -> Result<Poly, Error> {
        self.check(p)?;
        for (v, image) in bindings {
            if !self.contains(*v) {
                return Err(Error::Alphabet(format!("cannot bind unknown variable {v}")));
            }
            target.check(image)?;
        }
        let out = p.substitute(bindings);
        target.check(&out)?;
        Ok(out)
    }

    pub fn coeff_extract(
        &self,
        p: &Poly,
        vars: &BTreeSet<Var>,
    ) -> Result<BTreeMap<Monomial, Poly>, Error> {
        self.check(p)?;
        if let Some(v) = vars.iter().find(|v| !self.vars.contains(v)) {
            return Err(Error::Alphabet(format!("cannot extract unknown variable {v}")));
        }
        Ok(p.coeff_extract(vars))
    }
}

impl Poly {
    /// Parses an infix polynomial such as `q0 + q1*∂ - 1/2λ^2` or `3 + 2I`.
    pub fn parse(src: &str) -> Result<Poly, Error> {
        from_expr(&parse_expr(src)?)
    }
}

/// Parses a linear combination of basis names such as `t*e - h` or
/// `(∂+1)a + 2b` into a coordinate vector.
pub fn parse_vector(src: &str, basis: &[String]) -> Result<Vec<Poly>, Error> {
    match lin_expr(&parse_expr(src)?, basis)? {
        Lin::Vector(v) => Ok(v),
        Lin::Scalar(p) if p.is_zero() => Ok(vec![Poly::zero(); basis.len()]),
        Lin::Scalar(p) => Err(Error::Parse(format!(
            "`{src}` has a scalar part `{p}` with no basis element"
        ))),
    }
}

enum Lin {
    Scalar(Poly),
    Vector(Vec<Poly>),
}

fn lin_expr(e: &Expr, basis: &[String]) -> Result<Lin, Error> {
    let n = basis.len();
    let nonlinear = || Error::Parse("expression is not linear in the basis".into());
    Ok(match e {
        Expr::Ident(name) => match basis.iter().position(|b| b == name) {
            Some(i) => Lin::Vector(
                (0..n).map(|k| if k == i { Poly::one() } else { Poly::zero() }).collect(),
            ),
            None => Lin::Scalar(Poly::named(name)),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sign = matches!(e, Expr::Sub(..));
            let (a, b) = (lin_expr(a, basis)?, lin_expr(b, basis)?);
            let b = if sign { lin_neg(b) } else { b };
            match (a, b) {
                (Lin::Scalar(x), Lin::Scalar(y)) => Lin::Scalar(&x + &y),
                (Lin::Vector(x), Lin::Vector(y)) => {
                    Lin::Vector(x.iter().zip(&y).map(|(p, q)| p + q).collect())
                }
                (Lin::Vector(v), Lin::Scalar(s)) | (Lin::Scalar(s), Lin::Vector(v))
                    if s.is_zero() =>
                {
                    Lin::Vector(v)
                }
                _ => return Err(Error::Parse("adding a scalar to a vector".into())),
            }
        }
        Expr::Mul(a, b) => match (lin_expr(a, basis)?, lin_expr(b, basis)?) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Lin::Scalar(&x * &y),
            (Lin::Scalar(s), Lin::Vector(v)) | (Lin::Vector(v), Lin::Scalar(s)) => {
                Lin::Vector(v.iter().map(|p| &s * p).collect())
            }
            _ => return Err(nonlinear()),
        },
        Expr::Div(a, b) => {
            let den = from_expr(b)?;
            let inv = den
                .as_constant()
                .and_then(|c| c.inv())
                .ok_or_else(|| Error::Parse(format!("division by non-constant or zero `{den}`")))?;
            match lin_expr(a, basis)? {
                Lin::Scalar(s) => Lin::Scalar(s.scale(&inv)),
                Lin::Vector(v) => Lin::Vector(v.iter().map(|p| p.scale(&inv)).collect()),
            }
        }
        Expr::Neg(a) => lin_neg(lin_expr(a, basis)?),
        Expr::Pow(a, k) => match lin_expr(a, basis)? {
            Lin::Scalar(s) => Lin::Scalar(s.pow(*k)),
            Lin::Vector(v) if *k == 1 => Lin::Vector(v),
            _ => return Err(nonlinear()),
        },
        Expr::Num(_) | Expr::Call(..) => Lin::Scalar(from_expr(e)?),
    })
}

fn lin_neg(x: Lin) -> Lin {
    match x {
        Lin::Scalar(s) => Lin::Scalar(-&s),
        Lin::Vector(v) => Lin::Vector(v.iter().map(|p| -p).collect()),
    }
}

fn from_expr(e: &Expr) -> Result<Poly, Error> {
    poly_from_expr(e, &|name, _| {
        Err(Error::Parse(format!(
            "function application `{name}(..)` is not a polynomial"
        )))
    })
}

/// Converts a parsed expression to a polynomial; `on_call` decides what a
/// call `name(arg)` stands for, given the argument as a polynomial.
pub fn poly_from_expr(
    e: &Expr,
    on_call: &dyn Fn(&str, &Poly) -> Result<Poly, Error>,
) -> Result<Poly, Error> {
    let go = |x: &Expr| poly_from_expr(x, on_call);
    Ok(match e {
        Expr::Num(c) => Poly::constant(c.clone()),
        Expr::Ident(name) => Poly::named(name),
        Expr::Call(name, arg) => on_call(name, &go(arg)?)?,
        Expr::Add(a, b) => &go(a)? + &go(b)?,
        Expr::Sub(a, b) => &go(a)? - &go(b)?,
        Expr::Mul(a, b) => &go(a)? * &go(b)?,
        Expr::Div(a, b) => {
            let den = go(b)?;
            let inv = den
                .as_constant()
                .and_then(|c| c.inv())
                .ok_or_else(|| Error::Parse(format!("division by non-constant or zero `{den}`")))?;
            go(a)?.scale(&inv)
        }
        Expr::Neg(a) => -&go(a)?,
        Expr::Pow(a, k) => go(a)?.pow(*k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrips_display() {
        let p = Poly::parse("(∂+1)(∂-1)").unwrap();
        assert_eq!(p, Poly::parse("∂^2 - 1").unwrap());
        assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
        assert_eq!(Poly::parse("I*I").unwrap(), Poly::int(-1));
        assert_eq!(Poly::parse("x/2").unwrap(), Poly::named("x").scale(&GaussRat::ratio(1, 2)));
        assert!(Poly::parse("x/y").is_err());
        assert!(Poly::parse("f(x)").is_err());
    }

    #[test]
    fn alphabet_rejects_foreign_variables() {
        let ab = Alphabet::from_names(&["λ", "∂"]);
        let p = Poly::parse("λ + ∂").unwrap();
        let q = Poly::parse("t").unwrap();
        assert!(ab.arith(&p, &p, &ArithOp::Mul).is_ok());
        assert!(matches!(ab.arith(&p, &q, &ArithOp::Add), Err(Error::Alphabet(_))));
        let bind: BTreeMap<_, _> = [(Var::named("t"), Poly::zero())].into();
        assert!(ab.substitute(&p, &bind, &ab).is_err());
        let bind: BTreeMap<_, _> = [(Var::D, -&Poly::var(Var::LAMBDA))].into();
        assert_eq!(ab.substitute(&p, &bind, &ab).unwrap(), Poly::zero());
        let ext: BTreeSet<_> = [Var::MU].into();
        assert!(ab.coeff_extract(&p, &ext).is_err());
    }

    #[test]
    fn vectors_over_a_basis() {
        let basis: Vec<String> = ["e", "f", "h"].map(String::from).to_vec();
        let v = parse_vector("t*e - h", &basis).unwrap();
        assert_eq!(v, vec![Poly::named("t"), Poly::zero(), Poly::int(-1)]);
        let v = parse_vector("(∂+1)(e + f)/2", &basis).unwrap();
        assert_eq!(v[0], Poly::parse("∂/2 + 1/2").unwrap());
        assert_eq!(parse_vector("0", &basis).unwrap(), vec![Poly::zero(); 3]);
        assert!(parse_vector("e*f", &basis).is_err());
        assert!(parse_vector("e + 1", &basis).is_err());
    }

    #[test]
    fn scalar_multiplication() {
        let ab = Alphabet::from_names(&["∂"]);
        let p = Poly::parse("∂ + 1").unwrap();
        let got = ab
            .arith(&p, &Poly::zero(), &ArithOp::ScalarMul(GaussRat::ratio(2, 3)))
            .unwrap();
        assert_eq!(got, Poly::parse("2/3∂ + 2/3").unwrap());
        assert_eq!(ab.arith(&p, &Poly::zero(), &ArithOp::Neg).unwrap(), -&p);
    }
}
