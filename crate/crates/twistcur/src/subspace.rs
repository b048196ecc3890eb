//! Subspaces of k^n in canonical reduced row echelon form.
//!
//! The canonical form makes subspace equality a bit-exact matrix comparison,
//! which is what lets every "span of" object in the library be compared with
//! zero tolerance.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{CycField, CycScalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// RREF basis, one vector per row, no zero rows.
    basis: ExactMatrix,
}

impl Subspace {
    pub fn zero(field: &CycField, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: ExactMatrix::zero(field, 0, ambient),
        }
    }

    pub fn full(field: &CycField, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: ExactMatrix::identity(field, ambient),
        }
    }

    /// Span of the rows of `m`, canonicalized.
    pub fn row_space(m: &ExactMatrix) -> Subspace {
        let mut r = m.clone();
        let pivots = r.rref_in_place();
        let rank = pivots.len();
        let basis = ExactMatrix::from_fn(m.field(), rank, m.cols(), |i, j| r.get(i, j).clone());
        Subspace {
            ambient: m.cols(),
            basis,
        }
    }

    pub fn from_vectors(field: &CycField, ambient: usize, vectors: &[Vec<CycScalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = ExactMatrix::from_rows(field, vectors.to_vec());
        assert_eq!(m.cols(), ambient);
        Subspace::row_space(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> &CycField {
        self.basis.field()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<CycScalar>> {
        (0..self.dim()).map(|r| self.basis.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Reduce `v` against the basis; returns the remainder and the
    /// coordinates used. Remainder zero means membership.
    fn reduce_vector(&self, v: &[CycScalar]) -> (Vec<CycScalar>, Vec<CycScalar>) {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for r in 0..self.dim() {
            // pivot column of row r = first nonzero column
            let mut pivot = None;
            for c in 0..self.ambient {
                if !self.basis.get(r, c).is_zero() {
                    pivot = Some(c);
                    break;
                }
            }
            let p = pivot.expect("no zero rows in canonical basis");
            let coeff = rem[p].clone();
            if !coeff.is_zero() {
                for c in 0..self.ambient {
                    let b = self.basis.get(r, c);
                    if !b.is_zero() {
                        rem[c] = rem[c].sub(&coeff.mul(b));
                    }
                }
            }
            coords.push(coeff);
        }
        (rem, coords)
    }

    pub fn contains_vector(&self, v: &[CycScalar]) -> bool {
        let (rem, _) = self.reduce_vector(v);
        rem.iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[CycScalar]) -> Option<Vec<CycScalar>> {
        let (rem, coords) = self.reduce_vector(v);
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..other.dim()).all(|r| self.contains_vector(&other.basis.row(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Zassenhaus: RREF of [A|A; B|0]; rows with zero left half carry the
    /// intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let n = self.ambient;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(f, n));
        }
        let top = self.basis.hstack(&self.basis);
        let bottom = other
            .basis
            .hstack(&ExactMatrix::zero(f, other.dim(), n));
        let mut block = top.vstack(&bottom);
        block.rref_in_place();
        let mut vectors = Vec::new();
        for r in 0..block.rows() {
            let left_zero = (0..n).all(|c| block.get(r, c).is_zero());
            if left_zero {
                let right: Vec<CycScalar> = (0..n).map(|c| block.get(r, n + c).clone()).collect();
                if right.iter().any(|x| !x.is_zero()) {
                    vectors.push(right);
                }
            }
        }
        Ok(Subspace::from_vectors(f, n, &vectors))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// A matrix C whose kernel is exactly this subspace: v lies here iff
    /// C v = 0. Rows of C span the annihilator under the standard pairing.
    pub fn membership_conditions(&self) -> ExactMatrix {
        if self.dim() == 0 {
            return ExactMatrix::identity(self.field(), self.ambient);
        }
        let k = kernel(&self.basis);
        k.basis.clone()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}): {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

/// The exact kernel {v : m v = 0} as a canonical subspace of k^cols.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    let f = m.field();
    let n = m.cols();
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut vectors = Vec::new();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = r.get(row, free).neg();
        }
        vectors.push(v);
    }
    Subspace::from_vectors(f, n, &vectors)
}

/// Smallest subspace of the d x d matrix space containing the generators
/// (and the identity if requested) that is closed under matrix products.
/// Terminates because the dimension is bounded by d^2.
pub fn algebra_closure(generators: &[ExactMatrix], include_identity: bool) -> Result<Subspace> {
    let first = generators.first().ok_or_else(|| Error::DimensionMismatch {
        context: "algebra closure needs at least one generator".into(),
    })?;
    let d = first.rows();
    let f = first.field().clone();
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() || g.rows() != d {
            return Err(Error::DimensionMismatch {
                context: format!("generator {i} is not {d}x{d}"),
            });
        }
    }
    let mut seed: Vec<Vec<CycScalar>> = generators.iter().map(|g| g.vectorize()).collect();
    if include_identity {
        seed.push(ExactMatrix::identity(&f, d).vectorize());
    }
    let mut span = Subspace::from_vectors(&f, d * d, &seed);
    loop {
        let mats: Vec<ExactMatrix> = span
            .basis_vectors()
            .into_iter()
            .map(|v| ExactMatrix::from_vector(&f, d, d, v))
            .collect();
        let mut vectors = span.basis_vectors();
        for a in &mats {
            for b in &mats {
                vectors.push(a.mul(b).vectorize());
            }
        }
        let next = Subspace::from_vectors(&f, d * d, &vectors);
        if next.dim() == span.dim() {
            return Ok(next);
        }
        span = next;
    }
}
