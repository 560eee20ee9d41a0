use std::fmt;

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::polyring::{PolyRing, Polynomial};

/// Dense matrix of polynomials over one ring. Columns are the images of
/// basis vectors, so a `rows × cols` matrix maps `S^cols → S^rows`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    ring: PolyRing<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn zero(ring: &PolyRing<F>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &PolyRing<F>, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &PolyRing<F>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(CakError::Shape("rows of unequal length".into()));
        }
        let entries: Vec<Polynomial<F>> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.ring() != ring) {
            return Err(CakError::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    pub fn from_columns(ring: &PolyRing<F>, rows: usize, cols: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let mut m = PolyMatrix::zero(ring, rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rows {
                return Err(CakError::Shape(format!("column {j} has {} entries, expected {rows}", col.len())));
            }
            for (i, p) in col.into_iter().enumerate() {
                if p.ring() != ring {
                    return Err(CakError::RingMismatch);
                }
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    /// Parses `"a, b, c; d, e, f"`: rows separated by `;`, entries by `,`.
    pub fn parse(ring: &PolyRing<F>, text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|row| row.split(',').map(|e| ring.parse(e.trim())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<F>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial<F>> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        if self.ring != other.ring {
            return Err(CakError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(CakError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial<F>) -> Polynomial<F>) -> Self {
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(&mut f).collect() }
    }

    pub fn try_map_entries(&self, mut f: impl FnMut(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Self> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut m = PolyMatrix::zero(&self.ring, keep.len(), self.cols);
        for (a, &i) in keep.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, keep: &[usize]) -> Self {
        let mut m = PolyMatrix::zero(&self.ring, self.rows, keep.len());
        for i in 0..self.rows {
            for (b, &j) in keep.iter().enumerate() {
                m.set(i, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Block matrix `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix<F>) -> Result<Self> {
        if self.rows != other.rows {
            return Err(CakError::Shape("row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(&self.ring, self.rows, cols)
    }

    /// Degrees of the columns given row degrees, read off from the first
    /// nonzero entry of each column; zero columns get `None`.
    pub fn infer_column_degrees(&self, row_degrees: &[i64]) -> Result<Vec<Option<i64>>> {
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut deg = None;
            for i in 0..self.rows {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let d = p
                    .homogeneous_degree()
                    .ok_or_else(|| CakError::NotHomogeneous(format!("matrix entry ({i},{j}) `{p}`")))?
                    as i64
                    + row_degrees[i];
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(CakError::NotHomogeneous(format!("column {j} mixes degrees {e} and {d}")))
                    }
                    _ => {}
                }
            }
            out.push(deg);
        }
        Ok(out)
    }

    /// Checks that every nonzero entry `(i, j)` has degree `cols[j] − rows[i]`.
    pub fn is_graded(&self, row_degrees: &[i64], col_degrees: &[i64]) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let p = self.get(i, j);
                p.is_zero() || p.homogeneous_degree().map(|d| d as i64) == Some(col_degrees[j] - row_degrees[i])
            })
        })
    }
}
