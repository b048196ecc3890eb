//! Dense matrices over Q(zeta_N) with exact elimination.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::scalar::{CycField, CycScalar};

/// A rows x cols matrix of exact cyclotomic scalars, row-major.
///
/// Vectors are columns; a matrix acts on the left, and column j of an
/// operator matrix holds the image of basis vector j.
#[derive(Clone)]
pub struct ExactMatrix {
    field: CycField,
    rows: usize,
    cols: usize,
    entries: Vec<CycScalar>,
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}
impl Eq for ExactMatrix {}

impl Hash for ExactMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.entries.hash(state);
    }
}

impl ExactMatrix {
    pub fn zero(field: &CycField, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &CycField, n: usize) -> ExactMatrix {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &CycField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycScalar,
    ) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(field: &CycField, rows: Vec<Vec<CycScalar>>) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        ExactMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Parse every entry with the scalar grammar; handy in tests and specs.
    pub fn parse(field: &CycField, rows: &[&[&str]]) -> Result<ExactMatrix> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut or = Vec::with_capacity(row.len());
            for s in *row {
                or.push(crate::scalar::parse_scalar(field, s)?);
            }
            out.push(or);
        }
        Ok(Self::from_rows(field, out))
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<CycScalar> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(&self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> ExactMatrix {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = ExactMatrix::zero(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if a.is_zero() || v[c].is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(&v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> CycScalar {
        assert!(self.is_square());
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Kronecker product, row-major block layout.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        ExactMatrix::from_fn(&self.field, rows, cols, |r, c| {
            let (r1, r2) = (r / other.rows, r % other.rows);
            let (c1, c2) = (c / other.cols, c % other.cols);
            self.get(r1, c1).mul(other.get(r2, c2))
        })
    }

    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows);
        ExactMatrix::from_fn(&self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    /// Flatten row-major into a single vector (for matrix-space subspaces).
    pub fn vectorize(&self) -> Vec<CycScalar> {
        self.entries.clone()
    }

    pub fn from_vector(field: &CycField, rows: usize, cols: usize, v: Vec<CycScalar>) -> ExactMatrix {
        assert_eq!(v.len(), rows * cols);
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: v,
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    /// Deterministic: the pivot is always the first nonzero entry from the top.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let mut pivot_row = None;
            for r in row..self.rows {
                if !self.get(r, col).is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(p) = pivot_row else { continue };
            if p != row {
                for c in 0..self.cols {
                    let a = self.get(row, c).clone();
                    let b = self.get(p, c).clone();
                    self.set(row, c, b);
                    self.set(p, c, a);
                }
            }
            let inv = self.get(row, col).inverse().expect("pivot nonzero");
            for c in 0..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in 0..self.cols {
                    let v = self.get(r, c).sub(&factor.mul(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Inverse of a square matrix, or an error if singular.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hstack(&ExactMatrix::identity(&self.field, n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::DimensionMismatch {
                context: "matrix is singular".into(),
            });
        }
        Ok(ExactMatrix::from_fn(&self.field, n, n, |r, c| {
            aug.get(r, n + c).clone()
        }))
    }

    /// One solution of `self * x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[CycScalar]) -> Option<Vec<CycScalar>> {
        assert_eq!(b.len(), self.rows);
        let rhs = ExactMatrix::from_fn(&self.field, self.rows, 1, |r, _| b[r].clone());
        let mut aug = self.hstack(&rhs);
        let pivots = aug.rref_in_place();
        // inconsistent if a pivot lands in the rhs column
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
