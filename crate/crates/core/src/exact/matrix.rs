use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::poly::Poly;
use crate::error::Error;

/// Square matrix with polynomial entries, acting on column coordinate
/// vectors: column `j` holds the coordinates of the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Poly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: Vec<Vec<Poly>>) -> Result<Self, Error> {
        let n = columns.len();
        let mut m = PolyMatrix::zero(n);
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != n {
                return Err(Error::Size(format!(
                    "column {j} has {} entries, expected {n}",
                    col.len()
                )));
            }
            for (i, p) in col.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self, Error> {
        let n = rows.len();
        let mut m = PolyMatrix::zero(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Size(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        self.map(|p| p * c)
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        (0..self.n)
            .map(|i| {
                let mut acc = Poly::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Determinant by cofactor expansion (the matrices here are tiny).
    pub fn det(&self) -> Poly {
        let idx: Vec<usize> = (0..self.n).collect();
        det_rec(self, 0, &idx)
    }

    fn minor_det(&self, skip_row: usize, skip_col: usize) -> Poly {
        let rows: Vec<usize> = (0..self.n).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&c| c != skip_col).collect();
        let mut sub = PolyMatrix::zero(self.n - 1);
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                sub.set(a, b, self.get(r, c).clone());
            }
        }
        sub.det()
    }

    /// Inverse for matrices whose determinant is a nonzero constant, the
    /// only case in which the inverse stays polynomial.
    pub fn inverse(&self) -> Result<PolyMatrix, Error> {
        let det = self.det();
        let inv_det = det
            .as_constant()
            .and_then(|c| c.inv())
            .ok_or_else(|| Error::SingularMap(format!("determinant {det} is not a nonzero constant")))?;
        let mut adj = PolyMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let cof = self.minor_det(i, j);
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                adj.set(j, i, cof.scale(&inv_det));
            }
        }
        Ok(adj)
    }
}

fn det_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a * &det_rec(m, row + 1, &rest);
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = PolyMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a matrix over Q(i) given as rows.
pub fn rank(rows: &[Vec<GaussRat>]) -> usize {
    let mut m: Vec<Vec<GaussRat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let pivot = m[r].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for (x, y) in m[i].iter_mut().zip(&pivot).take(ncols).skip(c) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}
