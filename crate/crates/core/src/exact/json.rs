//! Canonical JSON encoding of polynomials:
//! `[{"coeff": {"re": "p/q", "im": "p/q"}, "exps": {"var": n}}, ...]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gauss::GaussRat;
use super::poly::{Monomial, Poly};
use super::var::Var;
use crate::error::Error;

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0/1".to_owned()
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: CoeffJson,
    #[serde(default)]
    exps: BTreeMap<String, u32>,
}

impl Poly {
    fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(m, c)| TermJson {
                coeff: CoeffJson {
                    re: GaussRat::ratio_string(&c.re),
                    im: GaussRat::ratio_string(&c.im),
                },
                exps: m
                    .pairs()
                    .iter()
                    .map(|&(v, e)| (v.name().to_owned(), e))
                    .collect(),
            })
            .collect()
    }

    fn from_json_terms(terms: Vec<TermJson>) -> Result<Poly, Error> {
        let mut p = Poly::zero();
        for t in terms {
            let c = GaussRat::new(
                GaussRat::parse_ratio(&t.coeff.re)?,
                GaussRat::parse_ratio(&t.coeff.im)?,
            );
            let m = Monomial::from_pairs(t.exps.iter().map(|(v, &e)| (Var::named(v), e)));
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    /// Reads the canonical term list; an infix string such as `"∂ + 2λ"` or
    /// an integer is accepted as a shorthand on input.
    pub fn from_json(v: &serde_json::Value) -> Result<Poly, Error> {
        match v {
            serde_json::Value::String(s) => Poly::parse(s),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Poly::int)
                .ok_or_else(|| Error::Parse(format!("polynomial: non-integer number {n}"))),
            _ => Poly::deserialize(v).map_err(|e| Error::Parse(format!("polynomial: {e}"))),
        }
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        Poly::from_json_terms(terms).map_err(serde::de::Error::custom)
    }
}
