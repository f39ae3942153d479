//! Dense matrices over a [`FieldTower`] with exact elimination.

use std::fmt;

use crate::error::{Error, Result};

use super::tower::{FieldElement, FieldTower};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    tower: FieldTower,
    rows: usize,
    cols: usize,
    e: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    m: ExactMatrix,
    pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zero(tower: &FieldTower, rows: usize, cols: usize) -> Self {
        ExactMatrix { tower: tower.clone(), rows, cols, e: vec![tower.zero(); rows * cols] }
    }

    pub fn identity(tower: &FieldTower, n: usize) -> Self {
        let mut m = Self::zero(tower, n, n);
        for i in 0..n {
            m.set(i, i, tower.one());
        }
        m
    }

    /// Builds a matrix from rows; entries are embedded into the common tower.
    pub fn from_rows(tower: &FieldTower, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut t = tower.clone();
        for row in &rows {
            for v in row {
                t = t.join(v.tower());
            }
        }
        let e = rows.into_iter().flatten().map(|v| v.embed(&t)).collect();
        Ok(ExactMatrix { tower: t, rows: r, cols: c, e })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        if !v.tower().is_prefix_of(&self.tower) {
            self.tower = self.tower.join(v.tower());
            let t = self.tower.clone();
            for x in self.e.iter_mut() {
                *x = x.embed(&t);
            }
        }
        self.e[i * self.cols + j] = v.embed(&self.tower);
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.e
    }

    pub fn embed(&self, target: &FieldTower) -> ExactMatrix {
        ExactMatrix {
            tower: target.clone(),
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(|v| v.embed(target)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(&self.tower, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.e[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = self.tower.join(&other.tower);
        let mut m = ExactMatrix::zero(&t, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    m.e[idx] = &m.e[idx] + &(a * b);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        let t = v.iter().fold(self.tower.clone(), |t, x| t.join(x.tower()));
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = t.zero();
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let t = self.tower.join(&other.tower);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { tower: t, rows: self.rows, cols: self.cols, e })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        let t = self.tower.join(&other.tower);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { tower: t, rows: self.rows, cols: self.cols, e })
    }

    pub fn scale(&self, s: &FieldElement) -> ExactMatrix {
        let t = self.tower.join(s.tower());
        ExactMatrix { tower: t, rows: self.rows, cols: self.cols, e: self.e.iter().map(|v| v * s).collect() }
    }

    pub fn trace(&self) -> FieldElement {
        let mut acc = self.tower.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let t = self.tower.join(&other.tower);
        let mut e: Vec<FieldElement> = self.e.iter().map(|v| v.embed(&t)).collect();
        e.extend(other.e.iter().map(|v| v.embed(&t)));
        Ok(ExactMatrix { tower: t, rows: self.rows + other.rows, cols: self.cols, e })
    }

    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.e.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.e[idx] = &m.e[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &f * m.get(r, j);
                    let idx = i * m.cols + j;
                    m.e[idx] = &m.e[idx] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let Echelon { m, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.tower.zero(); self.cols];
                v[f] = self.tower.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b`; returns one solution or `NoSolution`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let t = b.iter().fold(self.tower.clone(), |t, x| t.join(x.tower()));
        let mut aug = ExactMatrix::zero(&t, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.e[i * (self.cols + 1) + j] = self.get(i, j).embed(&t);
            }
            aug.e[i * (self.cols + 1) + self.cols] = b[i].embed(&t);
        }
        let Echelon { m, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![t.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Ok(x)
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.tower.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.tower.zero();
            };
            if p != c {
                for j in 0..n {
                    m.e.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let sub = &f * m.get(c, j);
                    m.e[i * n + j] = &m.e[i * n + j] - &sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zero(&self.tower, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.e[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.e[i * 2 * n + n + i] = self.tower.one();
        }
        let Echelon { m, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = ExactMatrix::zero(&self.tower, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.e[i * n + j] = m.get(i, n + j).clone();
            }
        }
        Some(inv)
    }

    /// True when `self = c * other` for some nonzero scalar `c`, both nonzero.
    pub fn projectively_equal(&self, other: &ExactMatrix) -> bool {
        projectively_equal(&self.e, &other.e)
    }
}

/// True when two nonzero vectors are proportional.
pub fn projectively_equal(a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let ratio = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y)
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
