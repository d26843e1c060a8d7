use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::gauss::GaussRat;
use super::var::Var;
use crate::error::Error;

/// A monomial as a sorted list of `(variable, exponent)` pairs with
/// positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits into the part over `vars` and the remainder.
    pub fn split(&self, vars: &BTreeSet<Var>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) =
            self.0.iter().partition(|(v, _)| vars.contains(v));
        (Monomial(inside), Monomial(outside))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse multivariate polynomial over Q(i).
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::monomial(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(GaussRat::from(c))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Poly::constant(GaussRat::ratio(num, den))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(GaussRat::one(), Monomial::var(v, 1))
    }

    pub fn named(name: &str) -> Self {
        Poly::var(Var::named(name))
    }

    pub fn monomial(c: GaussRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Univariate polynomial `Σ coeffs[k]·v^k`.
    pub fn univariate(v: Var, coeffs: &[Poly]) -> Self {
        let x = Poly::var(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_zero() {
            Some(GaussRat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> GaussRat {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Simultaneous substitution of variables by polynomials; unbound
    /// variables pass through unchanged.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Poly>) -> Poly {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(image) => {
                        let pw = powers
                            .entry((v, e))
                            .or_insert_with(|| image.pow(e))
                            .clone();
                        factor = &factor * &pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            out += &factor.mul_monomial(&Monomial(kept), &GaussRat::one());
        }
        out
    }

    /// Convenience wrapper over [`Poly::substitute`].
    pub fn subst(&self, bindings: &[(Var, Poly)]) -> Poly {
        self.substitute(&bindings.iter().cloned().collect())
    }

    /// Evaluates the variable `v` at zero.
    pub fn at_zero(&self, v: Var) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Collects coefficients with respect to `vars`: the result maps each
    /// monomial over `vars` to a residual polynomial free of `vars`.
    pub fn coeff_extract(&self, vars: &BTreeSet<Var>) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(vars);
            out.entry(inside).or_default().add_term(outside, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Whether `p(-v) = -p(v)`; `p` must involve no variable other than `v`.
    pub fn is_odd_in(&self, v: Var) -> Result<bool, Error> {
        if let Some(other) = self.vars().into_iter().find(|&w| w != v) {
            return Err(Error::Alphabet(format!(
                "oddness test in {v} but polynomial involves {other}"
            )));
        }
        Ok(self.terms.keys().all(|m| m.exponent(v) % 2 == 1))
    }

    /// Derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let rest = Monomial::from_pairs(
                m.pairs()
                    .iter()
                    .map(|&(w, k)| if w == v { (w, k - 1) } else { (w, k) }),
            );
            out.add_term(rest, &(c * &GaussRat::from(e as i64)));
        }
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<GaussRat> for Poly {
    fn from(c: GaussRat) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::int(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.total_degree().cmp(&a.0.total_degree()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_real() && c.re < num_rational::BigRational::from_integer(0.into());
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Poly {
        Poly::var(Var::D)
    }
    fn l() -> Poly {
        Poly::var(Var::LAMBDA)
    }

    #[test]
    fn difference_of_squares() {
        let p = &d() + &Poly::int(1);
        let q = &d() - &Poly::int(1);
        assert_eq!(&p * &q, &d().pow(2) - &Poly::int(1));
    }

    #[test]
    fn additive_inverse() {
        let p = &(&d() * &l()) + &Poly::ratio(3, 7);
        assert!((&p + &-&p).is_zero());
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let il = l().scale(&GaussRat::i());
        assert_eq!(&il * &il, -&l().pow(2));
    }

    #[test]
    fn substitute_even_and_odd_powers() {
        let minus_l = -&l();
        assert_eq!(d().pow(2).subst(&[(Var::D, minus_l.clone())]), l().pow(2));
        assert_eq!(d().pow(3).subst(&[(Var::D, minus_l)]), -&l().pow(3));
        assert_eq!(d().subst(&[(Var::D, &l() + &d())]), &l() + &d());
    }

    #[test]
    fn substitution_is_simultaneous() {
        // swap λ and ∂
        let p = &l() + &(&d() * &Poly::int(2));
        let swapped = p.subst(&[(Var::LAMBDA, d()), (Var::D, l())]);
        assert_eq!(swapped, &d() + &(&l() * &Poly::int(2)));
    }

    #[test]
    fn coeff_extract_collects_in_lambda() {
        let vars: BTreeSet<Var> = [Var::LAMBDA].into();
        let p = &(&l() * &d()) + &l();
        let got = p.coeff_extract(&vars);
        assert_eq!(got.len(), 1);
        assert_eq!(got[&Monomial::var(Var::LAMBDA, 1)], &d() + &Poly::one());

        let p = &(&l().pow(2) * &d()).scale(&GaussRat::from(2)) - &l().pow(2);
        let got = p.coeff_extract(&vars);
        assert_eq!(got[&Monomial::var(Var::LAMBDA, 2)], &d().scale(&GaussRat::from(2)) - &Poly::one());

        assert!(Poly::zero().coeff_extract(&vars).is_empty());
    }

    #[test]
    fn oddness() {
        let p = &d().pow(3) + &d().scale(&GaussRat::from(2));
        assert!(p.is_odd_in(Var::D).unwrap());
        assert!(!d().pow(2).is_odd_in(Var::D).unwrap());
        assert!(Poly::zero().is_odd_in(Var::D).unwrap());
        assert!(matches!(
            (&d() * &l()).is_odd_in(Var::D),
            Err(Error::Alphabet(_))
        ));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&d().pow(2) - &d().scale(&GaussRat::from(3))) + &Poly::ratio(1, 2);
        assert_eq!(p.to_string(), "∂^2 - 3*∂ + 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
