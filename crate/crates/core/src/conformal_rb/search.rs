//! Exhaustive search over a finite lattice of ∂-linear operators.
//!
//! Every entry is a polynomial in ∂ of degree at most `deg` with
//! coefficients from a finite set, optionally constrained by a zero
//! pattern. Candidates are first screened by evaluating the defect at a few
//! integer points `(λ, ∂)`; survivors get the full symbolic check.

use rayon::prelude::*;

use super::{check_conformal_rb, ConformalMap};
use crate::conformal::ConformalAlgebra;
use crate::error::Error;
use crate::exact::{GaussRat, Poly, PolyMatrix, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Free,
    ZeroAtOrigin,
    Zero,
}

/// Constraints on individual matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPattern {
    n: usize,
    /// `slots[i][j]` constrains coordinate `i` of `R(e_j)`.
    slots: Vec<Vec<Slot>>,
}

const R0_SL2_ZERO: &str = "a_e(0)=0, a_f(0)=0, a_h(0)=0, b_f(0)=0, c_f(0)=0";
const R0_SL2_NONZERO: &str = "a_f(0)=0, b_e(0)=0, b_f(0)=0, b_h(0)=0, c_e(0)=0, c_f(0)=0";

impl ZeroPattern {
    pub fn free(n: usize) -> Self {
        ZeroPattern {
            n,
            slots: vec![vec![Slot::Free; n]; n],
        }
    }

    fn tighten(&mut self, i: usize, j: usize, s: Slot) {
        self.slots[i][j] = self.slots[i][j].max(s);
    }

    /// Parses a comma- or semicolon-separated list of clauses:
    ///
    /// * `R<g>=0`: the image of `g` vanishes;
    /// * `R<g>=diag`: the image of `g` is a multiple of `g`;
    /// * `R<g>.<c>=0`, `R<g>.<c>(0)=0`: coordinate `c` of `R(g)` vanishes,
    ///   or vanishes at `∂ = 0`;
    /// * `x_c=0`, `x_c(0)=0`: the same with `a, b, c, …` naming the images
    ///   of the generators in order;
    /// * `R0-sl2-zero`, `R0-sl2-nonzero`: the two normalizations of `R(∂=0)`
    ///   used for Cur(sl₂) at weights 0 and 1.
    pub fn parse(src: &str, generators: &[String]) -> Result<Self, Error> {
        let mut pat = ZeroPattern::free(generators.len());
        for raw in src.split([',', ';']) {
            let clause: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if clause.is_empty() {
                continue;
            }
            match clause.as_str() {
                "R0-sl2-zero" => pat.apply_all(R0_SL2_ZERO, generators)?,
                "R0-sl2-nonzero" => pat.apply_all(R0_SL2_NONZERO, generators)?,
                _ => pat.apply(&clause, generators)?,
            }
        }
        Ok(pat)
    }

    fn apply_all(&mut self, clauses: &str, generators: &[String]) -> Result<(), Error> {
        for c in clauses.split(',') {
            let c: String = c.chars().filter(|c| !c.is_whitespace()).collect();
            self.apply(&c, generators)?;
        }
        Ok(())
    }

    fn apply(&mut self, clause: &str, generators: &[String]) -> Result<(), Error> {
        let bad = || Error::Parse(format!("cannot read pattern clause `{clause}`"));
        let gen = |name: &str| {
            generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in `{clause}`")))
        };
        let (lhs, rhs) = clause.split_once('=').ok_or_else(bad)?;
        if let Some(rest) = lhs.strip_prefix('R') {
            let rest = rest.trim_start_matches('(');
            let (g, coord) = match rest.split_once('.') {
                Some((g, c)) => (g.trim_end_matches(')'), Some(c)),
                None => (rest.trim_end_matches(')'), None),
            };
            let j = gen(g)?;
            match (coord, rhs) {
                (None, "0") => (0..self.n).for_each(|i| self.tighten(i, j, Slot::Zero)),
                (None, "diag") => {
                    (0..self.n).filter(|&i| i != j).for_each(|i| self.tighten(i, j, Slot::Zero))
                }
                (Some(c), "0") => match c.strip_suffix("(0)") {
                    Some(c) => self.tighten(gen(c)?, j, Slot::ZeroAtOrigin),
                    None => self.tighten(gen(c)?, j, Slot::Zero),
                },
                _ => return Err(bad()),
            }
            return Ok(());
        }
        if rhs != "0" {
            return Err(bad());
        }
        let (name, at_origin) = match lhs.strip_suffix("(0)") {
            Some(n) => (n, true),
            None => (lhs, false),
        };
        let (letter, c) = name.split_once('_').ok_or_else(bad)?;
        let mut chars = letter.chars();
        let j = match (chars.next(), chars.next()) {
            (Some(ch @ 'a'..='z'), None) => (ch as u8 - b'a') as usize,
            _ => return Err(bad()),
        };
        if j >= self.n {
            return Err(Error::Parse(format!("`{letter}` names no generator image in `{clause}`")));
        }
        let slot = if at_origin { Slot::ZeroAtOrigin } else { Slot::Zero };
        self.tighten(gen(c)?, j, slot);
        Ok(())
    }

    /// Whether `r` satisfies every constraint.
    pub fn admits(&self, r: &ConformalMap) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| match self.slots[i][j] {
                Slot::Free => true,
                Slot::Zero => r.matrix.get(i, j).is_zero(),
                Slot::ZeroAtOrigin => r.matrix.get(i, j).at_zero(Var::D).is_zero(),
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub candidates: u128,
    /// Candidates that passed the pointwise screen.
    pub screened: usize,
    pub hits: Vec<ConformalMap>,
}

fn entry_options(slot: Slot, deg: u32, coeffs: &[GaussRat]) -> Vec<Poly> {
    if slot == Slot::Zero {
        return vec![Poly::zero()];
    }
    let mut out = vec![Poly::zero()];
    let mut vals: Vec<GaussRat> = coeffs.to_vec();
    vals.sort_by_key(|c| c.to_string());
    vals.dedup();
    for power in 0..=deg {
        let choices: Vec<GaussRat> = if power == 0 && slot == Slot::ZeroAtOrigin {
            vec![GaussRat::zero()]
        } else {
            vals.clone()
        };
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for p in &out {
            for c in &choices {
                let term = Poly::monomial(c.clone(), crate::exact::Monomial::var(Var::D, power));
                next.push(p + &term);
            }
        }
        out = next;
    }
    out.sort_by_key(|p| p.to_string());
    out.dedup();
    out
}

pub fn estimate_candidates(
    l: &ConformalAlgebra,
    deg: u32,
    coeffs: &[GaussRat],
    pattern: &ZeroPattern,
) -> u128 {
    let n = l.rank();
    let mut total: u128 = 1;
    for i in 0..n {
        for j in 0..n {
            let k = entry_options(pattern.slots[i][j], deg, coeffs).len() as u128;
            total = total.saturating_mul(k);
        }
    }
    total
}

const POINTS: [(i64, i64); 3] = [(1, 2), (-3, 5), (2, -7)];

/// Numeric data of the table and the weight at one point.
struct PointData {
    lam: GaussRat,
    del: GaussRat,
    table: Vec<Vec<Vec<GaussRat>>>,
}

fn eval_at(p: &Poly, lam: &GaussRat, del: &GaussRat) -> Option<GaussRat> {
    let bind = [(Var::LAMBDA, Poly::constant(lam.clone())), (Var::D, Poly::constant(del.clone()))];
    p.subst(&bind).as_constant()
}

/// Pointwise defect of one candidate; `false` means the candidate is
/// certainly not a solution.
fn survives(
    n: usize,
    points: &[PointData],
    k: &GaussRat,
    value: &dyn Fn(usize, usize, usize, usize) -> GaussRat,
) -> bool {
    // value(point, which, i, j): entry (i, j) at ∂ = {∂₀, -λ₀, λ₀+∂₀}[which]
    for (pi, pd) in points.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let mut inner = vec![GaussRat::zero(); n];
                for (c, slot) in inner.iter_mut().enumerate() {
                    let mut s = k * &pd.table[a][b][c];
                    for m in 0..n {
                        let t = &pd.table[m][b][c];
                        if !t.is_zero() {
                            s += &(&value(pi, 1, m, a) * t);
                        }
                        let t = &pd.table[a][m][c];
                        if !t.is_zero() {
                            s += &(&value(pi, 2, m, b) * t);
                        }
                    }
                    *slot = s;
                }
                for c in 0..n {
                    let mut lhs = GaussRat::zero();
                    for m in 0..n {
                        let x = value(pi, 1, m, a);
                        if x.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let t = &pd.table[m][q][c];
                            if !t.is_zero() {
                                lhs += &(&(&x * &value(pi, 2, q, b)) * t);
                            }
                        }
                    }
                    let mut rhs = GaussRat::zero();
                    for (cc, v) in inner.iter().enumerate() {
                        if !v.is_zero() {
                            rhs += &(&value(pi, 0, c, cc) * v);
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        let _ = pd;
    }
    let _ = (&points[0].lam, &points[0].del);
    true
}

/// All operators in the lattice that satisfy the identity at weight `k`.
pub fn bounded_search(
    l: &ConformalAlgebra,
    k: &GaussRat,
    deg: u32,
    coeffs: &[GaussRat],
    pattern: &ZeroPattern,
    max_candidates: u128,
) -> Result<SearchOutcome, Error> {
    let n = l.rank();
    if pattern.n != n {
        return Err(Error::Size(format!("pattern is for rank {}, algebra has rank {n}", pattern.n)));
    }
    if coeffs.is_empty() {
        return Err(Error::Parse("empty coefficient set".into()));
    }
    let total = estimate_candidates(l, deg, coeffs, pattern);
    if total > max_candidates {
        return Err(Error::ResourceCap(format!(
            "{total} candidates exceed the cap of {max_candidates}"
        )));
    }
    let options: Vec<Vec<Poly>> = (0..n * n)
        .map(|e| entry_options(pattern.slots[e % n][e / n], deg, coeffs))
        .collect();

    // Pointwise data; a parametric table disables the screen.
    let points: Option<Vec<PointData>> = POINTS
        .iter()
        .map(|&(lv, dv)| {
            let (lam, del) = (GaussRat::from(lv), GaussRat::from(dv));
            let table = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            l.table_entry(i, j)
                                .iter()
                                .map(|p| eval_at(p, &lam, &del))
                                .collect::<Option<Vec<_>>>()
                        })
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()?;
            Some(PointData { lam, del, table })
        })
        .collect();
    // values[e][option][point][which]
    let values: Option<Vec<Vec<Vec<[GaussRat; 3]>>>> = points.as_ref().map(|pts| {
        options
            .iter()
            .map(|opts| {
                opts.iter()
                    .map(|p| {
                        pts.iter()
                            .map(|pd| {
                                let at = |x: GaussRat| {
                                    p.subst(&[(Var::D, Poly::constant(x))])
                                        .as_constant()
                                        .unwrap_or_else(GaussRat::zero)
                                };
                                [
                                    at(pd.del.clone()),
                                    at(-&pd.lam),
                                    at(&pd.lam + &pd.del),
                                ]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });
    let radices: Vec<u64> = options.iter().map(|o| o.len() as u64).collect();
    let decode = |mut idx: u64| -> Vec<usize> {
        radices
            .iter()
            .map(|&r| {
                let d = (idx % r) as usize;
                idx /= r;
                d
            })
            .collect()
    };
    let weight = Poly::constant(k.clone());
    let results: Vec<(bool, Option<ConformalMap>)> = (0..total as u64)
        .into_par_iter()
        .map(|idx| {
            let choice = decode(idx);
            if let (Some(pts), Some(vals)) = (&points, &values) {
                let value = |pi: usize, which: usize, i: usize, j: usize| {
                    let e = j * n + i;
                    vals[e][choice[e]][pi][which].clone()
                };
                if !survives(n, pts, k, &value) {
                    return (false, None);
                }
            }
            let mut m = PolyMatrix::zero(n);
            for (e, &c) in choice.iter().enumerate() {
                m.set(e % n, e / n, options[e][c].clone());
            }
            let r = ConformalMap { matrix: m };
            let ok = check_conformal_rb(l, &r, &weight).map(|rep| rep.is_rb()).unwrap_or(false);
            (true, ok.then_some(r))
        })
        .collect();
    let screened = results.iter().filter(|(s, _)| *s).count();
    let hits = results.into_iter().filter_map(|(_, h)| h).collect();
    Ok(SearchOutcome {
        candidates: total,
        screened,
        hits,
    })
}
