use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element `re + im·i` of the Gaussian rationals Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from(1)
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &norm, -(&self.im / &norm)))
    }

    /// Exact square root when one exists with rational real part and
    /// rational imaginary part of a real input (`√(-a) = i√a`).
    pub fn sqrt_exact(&self) -> Option<Self> {
        if !self.is_real() {
            return None;
        }
        let root = rational_sqrt(&self.re.abs())?;
        if self.re.is_negative() {
            Some(GaussRat::new(BigRational::zero(), root))
        } else {
            Some(GaussRat::new(root, BigRational::zero()))
        }
    }

    /// `"p/q"` form used by the JSON encoding.
    pub fn ratio_string(r: &BigRational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    pub fn parse_ratio(s: &str) -> Result<BigRational, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
        }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        GaussRat::new(BigRational::from_integer(v.into()), BigRational::zero())
    }
}

impl From<BigRational> for GaussRat {
    fn from(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        &self + &rhs
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        &self - &rhs
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::from(&self.re * &rhs.re);
        }
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        &self * &rhs
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "I"),
            (true, false) if (-self.im.clone()).is_one() => write!(f, "-I"),
            (true, false) => write!(f, "{}*I", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}*I)", self.re, -self.im.clone())
                } else {
                    write!(f, "({} + {}*I)", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussRat::new(GaussRat::parse_ratio("3/2").unwrap(), BigRational::from_integer((-2).into()));
        assert_eq!(&z * &z.inv().unwrap(), GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn reduced_canonical_form() {
        assert_eq!(GaussRat::ratio(2, 4), GaussRat::ratio(1, 2));
        assert_eq!(GaussRat::ratio(3, -6), GaussRat::ratio(-1, 2));
        assert_eq!(GaussRat::ratio_string(&GaussRat::ratio(-6, 4).re), "-3/2");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(GaussRat::from(4).sqrt_exact(), Some(GaussRat::from(2)));
        assert_eq!(GaussRat::ratio(9, 4).sqrt_exact(), Some(GaussRat::ratio(3, 2)));
        assert_eq!(
            GaussRat::from(-1).sqrt_exact(),
            Some(GaussRat::i())
        );
        assert_eq!(GaussRat::from(3).sqrt_exact(), None);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(GaussRat::parse_ratio("1/0").is_err());
        assert!(GaussRat::parse_ratio("x").is_err());
        assert_eq!(GaussRat::parse_ratio(" -7 ").unwrap(), BigRational::from_integer((-7).into()));
    }
}
