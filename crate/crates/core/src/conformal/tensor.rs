use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::exact::{Poly, Var};
use crate::schema;

/// `Σ c(∂_1, …, ∂_n) e_{i_1} ⊗ … ⊗ e_{i_n}` where `∂_k` acts on slot `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl TensorElement {
    pub fn zero(rank: usize) -> Self {
        TensorElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Poly)>,
    ) -> Result<Self, Error> {
        let mut t = TensorElement::zero(rank);
        for (k, c) in terms {
            if k.len() != rank {
                return Err(Error::Rank(format!(
                    "index {k:?} in a rank-{rank} tensor"
                )));
            }
            t.add_term(k, &c);
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` to the coefficient of `idx`; the index length must equal
    /// the rank.
    pub fn add_term(&mut self, idx: Vec<usize>, c: &Poly) {
        debug_assert_eq!(idx.len(), self.rank);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(idx).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> TensorElement {
        let mut out = TensorElement::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, Poly>) -> TensorElement {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    pub fn scale(&self, s: &Poly) -> TensorElement {
        self.map_coeffs(|c| c * s)
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        if self.rank != other.rank {
            return Err(Error::Rank(format!(
                "adding tensors of ranks {} and {}",
                self.rank, other.rank
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> TensorElement {
        self.map_coeffs(|c| -c)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.add(&other.neg())
    }

    /// Variables in coefficients other than the slot variables.
    pub fn parameters(&self) -> BTreeSet<Var> {
        let slots: BTreeSet<Var> = (0..self.rank).map(Var::slot).collect();
        self.terms
            .values()
            .flat_map(Poly::vars)
            .filter(|v| !slots.contains(v))
            .collect()
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Map<String, Value> = self
            .terms
            .iter()
            .map(|(k, c)| (schema::format_key(k, names), c.to_json()))
            .collect();
        json!({ "rank": self.rank, "terms": terms })
    }

    pub fn from_json(v: &Value, names: &[String]) -> Result<Self, Error> {
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("tensor needs an integer `rank`".into()))?
            as usize;
        if !(2..=3).contains(&rank) {
            return Err(Error::Rank(format!("tensor rank must be 2 or 3, got {rank}")));
        }
        let obj = v
            .get("terms")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("tensor needs a `terms` object".into()))?;
        let mut out = TensorElement::zero(rank);
        for (key, c) in obj {
            let idx = schema::parse_key(key, names, None)?;
            if idx.len() != rank {
                return Err(Error::Rank(format!("key `{key}` in a rank-{rank} tensor")));
            }
            out.add_term(idx, &Poly::from_json(c)?);
        }
        Ok(out)
    }

    /// Human-readable form with the given generator names.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let basis = k.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("⊗");
                format!("({c})·{basis}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}
