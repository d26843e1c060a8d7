use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use super::tensor::TensorElement;
use crate::error::Error;
use crate::exact::{Poly, PolyMatrix, Var};
use crate::lie::LieAlgebra;
use crate::schema;

fn lam() -> Poly {
    Poly::var(Var::LAMBDA)
}

fn del() -> Poly {
    Poly::var(Var::D)
}

/// A Lie conformal algebra, free of finite rank over C[∂].
///
/// Only the generator table `[e_i λ e_j] = Σ_k p_ijk(λ, ∂) e_k` is stored;
/// brackets of arbitrary elements are expanded by sesquilinearity.
#[derive(Clone, PartialEq, Eq)]
pub struct ConformalAlgebra {
    generators: Vec<String>,
    table: Vec<Vec<Vec<Poly>>>,
}

/// Defects of the axioms; empty lists mean a valid Lie conformal algebra.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    /// `[a_λ b] + [b_{-λ-∂} a]` per ordered generator pair.
    pub anticommutativity: Vec<((usize, usize), Vec<Poly>)>,
    /// `[a_λ[b_μ c]] - [b_μ[a_λ c]] - [[a_λ b]_{λ+μ} c]` per generator triple.
    pub jacobi: Vec<((usize, usize, usize), Vec<Poly>)>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.anticommutativity.is_empty() && self.jacobi.is_empty()
    }
}

impl ConformalAlgebra {
    /// Builds an algebra from table entries. A missing `(j, i)` entry is
    /// filled from `(i, j)` by anticommutativity; pairs given in both orders
    /// are kept as given, so inconsistent input shows up as axiom defects.
    pub fn from_table(
        generators: Vec<String>,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<Poly>)>,
    ) -> Result<Self, Error> {
        let n = generators.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("no generators".into()));
        }
        let mut given: Vec<Vec<Option<Vec<Poly>>>> = vec![vec![None; n]; n];
        for ((i, j), v) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidAlgebra(format!("pair ({i},{j}) out of range")));
            }
            if v.len() != n {
                return Err(Error::Size(format!(
                    "table entry ({i},{j}) has {} coordinates, expected {n}",
                    v.len()
                )));
            }
            for p in &v {
                if let Some(x) = p.vars().into_iter().find(|&x| x == Var::MU || is_slot(x)) {
                    return Err(Error::Alphabet(format!(
                        "table entry ({i},{j}) uses the reserved variable {x}"
                    )));
                }
            }
            given[i][j] = Some(v);
        }
        let flip: BTreeMap<Var, Poly> = [(Var::LAMBDA, -&(&lam() + &del()))].into();
        let mut table = vec![vec![vec![Poly::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = match (&given[i][j], &given[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(v)) => v.iter().map(|p| -&p.substitute(&flip)).collect(),
                    (None, None) => vec![Poly::zero(); n],
                };
            }
        }
        Ok(ConformalAlgebra { generators, table })
    }

    /// Cur(g): the table holds the structure constants of `g`.
    pub fn cur_of(g: &LieAlgebra) -> Result<Self, Error> {
        if let Some((t, _)) = g.jacobi_defects().first() {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi identity fails on the triple {t:?}"
            )));
        }
        let n = g.dim();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), g.bracket_basis(i, j).to_vec()));
        ConformalAlgebra::from_table(g.basis().to_vec(), entries)
    }

    pub fn cur_sl2() -> Self {
        ConformalAlgebra::cur_of(&LieAlgebra::sl2()).expect("sl2 is a Lie algebra")
    }

    /// Virasoro: `[L_λ L] = (∂ + 2λ)L`.
    pub fn virasoro() -> Self {
        let p = Poly::parse("∂ + 2λ").expect("literal");
        ConformalAlgebra::from_table(vec!["L".into()], [((0, 0), vec![p])]).expect("rank 1")
    }

    /// Rank 2: `[a_λ a] = (∂+2λ)a`, `[a_λ b] = (∂+λ)b`, `[b_λ b] = 0`.
    pub fn rank2_example() -> Self {
        let p = |s: &str| Poly::parse(s).expect("literal");
        ConformalAlgebra::from_table(
            vec!["a".into(), "b".into()],
            [
                ((0, 0), vec![p("∂ + 2λ"), p("0")]),
                ((0, 1), vec![p("0"), p("∂ + λ")]),
                ((1, 1), vec![p("0"), p("0")]),
            ],
        )
        .expect("rank 2")
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn table_entry(&self, i: usize, j: usize) -> &[Poly] {
        &self.table[i][j]
    }

    pub fn unit(&self, i: usize) -> Vec<Poly> {
        (0..self.rank())
            .map(|k| if k == i { Poly::one() } else { Poly::zero() })
            .collect()
    }

    /// Whether every table entry is free of λ and ∂.
    pub fn is_current(&self) -> bool {
        self.table.iter().flatten().flatten().all(|p| {
            !p.involves(Var::LAMBDA) && !p.involves(Var::D)
        })
    }

    /// The Lie algebra `g` of a current algebra `Cur(g)`.
    pub fn underlying_lie(&self) -> Result<LieAlgebra, Error> {
        if !self.is_current() {
            return Err(Error::UnsupportedAlgebra(
                "the table depends on λ or ∂, so the algebra is not a current algebra".into(),
            ));
        }
        let n = self.rank();
        let entries = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.table[i][j].clone()));
        LieAlgebra::from_brackets(self.generators.clone(), entries)
    }

    /// `[x_ν y]` for an arbitrary polynomial `ν`: coordinates of `x` are
    /// evaluated at `∂ = -ν`, those of `y` at `∂ = ν + ∂`, and the table at
    /// `λ = ν`.
    pub fn bracket_at(&self, x: &[Poly], y: &[Poly], nu: &Poly) -> Vec<Poly> {
        let n = self.rank();
        let left: BTreeMap<Var, Poly> = [(Var::D, -nu)].into();
        let right: BTreeMap<Var, Poly> = [(Var::D, nu + &del())].into();
        let tab: BTreeMap<Var, Poly> = [(Var::LAMBDA, nu.clone())].into();
        let xs: Vec<Poly> = x.iter().map(|p| p.substitute(&left)).collect();
        let ys: Vec<Poly> = y.iter().map(|p| p.substitute(&right)).collect();
        let mut out = vec![Poly::zero(); n];
        for (i, xi) in xs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &(&c * &t.substitute(&tab));
                    }
                }
            }
        }
        out
    }

    /// `[x_λ y]`.
    pub fn lambda_bracket(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        self.bracket_at(x, y, &lam())
    }

    pub fn check_conformal_axioms(&self) -> AxiomReport {
        let n = self.rank();
        let mut report = AxiomReport::default();
        let flip: BTreeMap<Var, Poly> = [(Var::LAMBDA, -&(&lam() + &del()))].into();
        for i in 0..n {
            for j in 0..n {
                let d: Vec<Poly> = (0..n)
                    .map(|k| &self.table[i][j][k] + &self.table[j][i][k].substitute(&flip))
                    .collect();
                if d.iter().any(|p| !p.is_zero()) {
                    report.anticommutativity.push(((i, j), d));
                }
            }
        }
        let l = lam();
        let m = Poly::var(Var::MU);
        let lm = &l + &m;
        let units: Vec<Vec<Poly>> = (0..n).map(|i| self.unit(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let ab = self.bracket_at(&units[i], &units[j], &l);
                for k in 0..n {
                    let bc = self.bracket_at(&units[j], &units[k], &m);
                    let ac = self.bracket_at(&units[i], &units[k], &l);
                    let t1 = self.bracket_at(&units[i], &bc, &l);
                    let t2 = self.bracket_at(&units[j], &ac, &m);
                    let t3 = self.bracket_at(&ab, &units[k], &lm);
                    let d: Vec<Poly> = (0..n).map(|c| &(&t1[c] - &t2[c]) - &t3[c]).collect();
                    if d.iter().any(|p| !p.is_zero()) {
                        report.jacobi.push(((i, j, k), d));
                    }
                }
            }
        }
        report
    }

    /// Whether the constant matrix `φ` preserves the λ-bracket on generators
    /// and is invertible.
    pub fn is_automorphism(&self, phi: &PolyMatrix) -> bool {
        let n = self.rank();
        if phi.dim() != n || phi.inverse().is_err() {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = phi.apply(&self.table[i][j]);
                let rhs = self.lambda_bracket(&phi.column(i), &phi.column(j));
                lhs == rhs
            })
        })
    }

    /// `a_ν T`: `a` acts on every slot of `T` in turn. Slot `i` carries the
    /// variable `∂_{i+1}`; its coefficient is shifted `∂_i ↦ ν + ∂_i` and `a`
    /// contributes its coordinates at `∂ = -ν`.
    pub fn tensor_action(
        &self,
        a: &[Poly],
        t: &TensorElement,
        nu: &Poly,
    ) -> Result<TensorElement, Error> {
        let n = self.rank();
        if a.len() != n {
            return Err(Error::Size(format!("element has {} coordinates, rank is {n}", a.len())));
        }
        if let Some(idx) = t.terms().map(|(k, _)| k).find(|k| k.iter().any(|&g| g >= n)) {
            return Err(Error::Size(format!("tensor index {idx:?} exceeds rank {n}")));
        }
        let left: BTreeMap<Var, Poly> = [(Var::D, -nu)].into();
        let a_at: Vec<Poly> = a.iter().map(|p| p.substitute(&left)).collect();
        let mut out = TensorElement::zero(t.rank());
        for slot in 0..t.rank() {
            let dv = Var::slot(slot);
            let shift: BTreeMap<Var, Poly> = [(dv, nu + &Poly::var(dv))].into();
            let tab: BTreeMap<Var, Poly> =
                [(Var::LAMBDA, nu.clone()), (Var::D, Poly::var(dv))].into();
            for (idx, c) in t.terms() {
                let shifted = c.substitute(&shift);
                let j = idx[slot];
                for (m, am) in a_at.iter().enumerate() {
                    if am.is_zero() {
                        continue;
                    }
                    let base = &shifted * am;
                    for (k, p) in self.table[m][j].iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        let mut key = idx.clone();
                        key[slot] = k;
                        out.add_term(key, &(&base * &p.substitute(&tab)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut table = Map::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let v = &self.table[i][j];
                if v.iter().any(|p| !p.is_zero()) {
                    table.insert(
                        schema::format_key(&[i, j], &self.generators),
                        Value::Array(v.iter().map(Poly::to_json).collect()),
                    );
                }
            }
        }
        json!({ "generators": self.generators, "table": table })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let generators = schema::names(v, "generators")?;
        let n = generators.len();
        let obj = v
            .get("table")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing `table` object".into()))?;
        let mut entries = Vec::new();
        for (key, val) in obj {
            let idx = schema::parse_key(key, &generators, Some(2))?;
            entries.push(((idx[0], idx[1]), schema::poly_vector(val, n, key)?));
        }
        ConformalAlgebra::from_table(generators, entries)
    }
}

fn is_slot(v: Var) -> bool {
    v == Var::D1 || v == Var::D2 || v == Var::D3
}

impl fmt::Debug for ConformalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConformalAlgebra{}", self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn presets_satisfy_axioms() {
        for alg in [
            ConformalAlgebra::cur_sl2(),
            ConformalAlgebra::virasoro(),
            ConformalAlgebra::rank2_example(),
        ] {
            let r = alg.check_conformal_axioms();
            assert!(r.is_empty(), "{alg:?}: {r:?}");
        }
    }

    #[test]
    fn current_brackets() {
        let c = ConformalAlgebra::cur_sl2();
        let (e, f, h) = (c.unit(0), c.unit(1), c.unit(2));
        assert_eq!(c.lambda_bracket(&h, &e), vec![p("2"), p("0"), p("0")]);
        let de: Vec<Poly> = e.iter().map(|x| x * &del()).collect();
        assert_eq!(c.lambda_bracket(&de, &f), vec![p("0"), p("0"), p("-λ")]);
        assert_eq!(c.table_entry(2, 1), &[p("0"), p("-2"), p("0")]);
        assert!(c.is_current());
        assert!(!ConformalAlgebra::virasoro().is_current());
    }

    #[test]
    fn virasoro_bracket() {
        let v = ConformalAlgebra::virasoro();
        assert_eq!(v.lambda_bracket(&[p("1")], &[p("1")]), vec![p("∂ + 2λ")]);
    }

    #[test]
    fn rank2_fills_opposite_order() {
        let r = ConformalAlgebra::rank2_example();
        assert_eq!(r.table_entry(1, 0), &[p("0"), p("λ")]);
    }

    #[test]
    fn broken_table_has_defects() {
        let bad = ConformalAlgebra::from_table(
            vec!["L".into()],
            [((0, 0), vec![p("∂ + 3λ")])],
        )
        .unwrap();
        let r = bad.check_conformal_axioms();
        assert!(!r.anticommutativity.is_empty());
    }

    #[test]
    fn cur_rejects_non_lie() {
        let names = ["e", "f", "h"].map(String::from).to_vec();
        let v = |a: i64, b: i64, c: i64| vec![Poly::int(a), Poly::int(b), Poly::int(c)];
        let g = LieAlgebra::from_brackets(
            names,
            [((0, 1), v(0, 0, 1)), ((2, 0), v(2, 0, 0)), ((2, 1), v(0, 2, 0))],
        )
        .unwrap();
        assert!(matches!(ConformalAlgebra::cur_of(&g), Err(Error::InvalidAlgebra(_))));
        let ab = ConformalAlgebra::cur_of(&LieAlgebra::abelian(2)).unwrap();
        assert!(ab.table.iter().flatten().flatten().all(Poly::is_zero));
    }

    #[test]
    fn tensor_action_on_slots() {
        let c = ConformalAlgebra::cur_sl2();
        let ff = TensorElement::from_terms(2, [(vec![1, 1], Poly::one())]).unwrap();
        let got = c.tensor_action(&c.unit(0), &ff, &lam()).unwrap();
        let want = TensorElement::from_terms(
            2,
            [(vec![2, 1], Poly::one()), (vec![1, 2], Poly::one())],
        )
        .unwrap();
        assert_eq!(got, want);
        let ef = TensorElement::from_terms(2, [(vec![0, 1], Poly::one())]).unwrap();
        assert!(c.tensor_action(&c.unit(2), &ef, &lam()).unwrap().is_zero());
        let zero = TensorElement::zero(2);
        assert!(c.tensor_action(&c.unit(1), &zero, &lam()).unwrap().is_zero());
    }

    #[test]
    fn json_roundtrip() {
        for alg in [ConformalAlgebra::cur_sl2(), ConformalAlgebra::rank2_example()] {
            assert_eq!(ConformalAlgebra::from_json(&alg.to_json()).unwrap(), alg);
        }
        assert!(ConformalAlgebra::from_json(&json!({"generators": ["L"]})).is_err());
    }
}
