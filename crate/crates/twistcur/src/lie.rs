//! Structure-constant Lie algebras over Q(zeta_N).
//!
//! An algebra is a distinguished basis x_1..x_d together with the table
//! c[i][j] = coordinates of [x_i, x_j]. Antisymmetry and the Jacobi identity
//! are exactly checkable and are verified for every algebra built here.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{parse_scalar, CycField, CycScalar};
use crate::subspace::{algebra_closure, kernel, Subspace};

#[derive(Clone)]
pub struct LieAlgebra {
    field: CycField,
    dim: usize,
    /// structure[i][j] = coordinate vector of [x_i, x_j].
    structure: Vec<Vec<Vec<CycScalar>>>,
    pub label: String,
    pub basis_labels: Vec<String>,
}

impl PartialEq for LieAlgebra {
    /// Structural equality: same field, dimension, and structure constants.
    /// Labels are cosmetic and ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.structure == other.structure
    }
}
impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.label, self.dim)
    }
}

impl LieAlgebra {
    pub fn from_structure(
        field: &CycField,
        dim: usize,
        structure: Vec<Vec<Vec<CycScalar>>>,
        label: impl Into<String>,
    ) -> Result<LieAlgebra> {
        let basis_labels = (1..=dim).map(|i| format!("x{}", i)).collect();
        let alg = LieAlgebra {
            field: field.clone(),
            dim,
            structure,
            label: label.into(),
            basis_labels,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// The zero-dimensional algebra.
    pub fn zero(field: &CycField) -> LieAlgebra {
        LieAlgebra {
            field: field.clone(),
            dim: 0,
            structure: Vec::new(),
            label: "0".into(),
            basis_labels: Vec::new(),
        }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[CycScalar] {
        &self.structure[i][j]
    }

    /// Antisymmetry and the Jacobi identity on every basis pair/triple.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        if self.structure.len() != d || self.structure.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidStructure {
                context: "structure table has wrong shape".into(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                if self.structure[i][j].len() != d {
                    return Err(Error::InvalidStructure {
                        context: format!("bracket ({i},{j}) has wrong length"),
                    });
                }
            }
        }
        for i in 0..d {
            if self.structure[i][i].iter().any(|v| !v.is_zero()) {
                return Err(Error::InvalidStructure {
                    context: format!("[x{i}, x{i}] is nonzero"),
                });
            }
            for j in 0..d {
                for s in 0..d {
                    let sum = self.structure[i][j][s].add(&self.structure[j][i][s]);
                    if !sum.is_zero() {
                        return Err(Error::InvalidStructure {
                            context: format!("antisymmetry fails at ({i},{j})"),
                        });
                    }
                }
            }
        }
        // Jacobi: [[xi,xj],xk] + [[xj,xk],xi] + [[xk,xi],xj] = 0
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let a = self.bracket(&self.structure[i][j], &basis_vec(&self.field, d, k));
                    let b = self.bracket(&self.structure[j][k], &basis_vec(&self.field, d, i));
                    let c = self.bracket(&self.structure[k][i], &basis_vec(&self.field, d, j));
                    for s in 0..d {
                        let total = a[s].add(&b[s]).add(&c[s]);
                        if !total.is_zero() {
                            return Err(Error::InvalidStructure {
                                context: format!("Jacobi fails at triple ({i},{j},{k})"),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Bilinear extension of the structure table.
    pub fn bracket(&self, u: &[CycScalar], v: &[CycScalar]) -> Vec<CycScalar> {
        let d = self.dim;
        let mut out = vec![self.field.zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() {
                    continue;
                }
                let coef = u[i].mul(&v[j]);
                for s in 0..d {
                    let c = &self.structure[i][j][s];
                    if !c.is_zero() {
                        out[s] = out[s].add(&coef.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(u): v -> [u, v].
    pub fn ad(&self, u: &[CycScalar]) -> ExactMatrix {
        let d = self.dim;
        ExactMatrix::from_fn(&self.field, d, d, |r, c| {
            let mut acc = self.field.zero();
            for i in 0..d {
                if u[i].is_zero() {
                    continue;
                }
                acc = acc.add(&u[i].mul(&self.structure[i][c][r]));
            }
            acc
        })
    }

    pub fn killing_matrix(&self) -> ExactMatrix {
        let d = self.dim;
        let ads: Vec<ExactMatrix> = (0..d)
            .map(|i| self.ad(&basis_vec(&self.field, d, i)))
            .collect();
        ExactMatrix::from_fn(&self.field, d, d, |i, j| ads[i].mul(&ads[j]).trace())
    }

    pub fn killing_form(&self, u: &[CycScalar], v: &[CycScalar]) -> CycScalar {
        self.ad(u).mul(&self.ad(v)).trace()
    }

    /// Span of all brackets of basis pairs.
    pub fn derived(&self) -> Subspace {
        let mut vectors = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.structure[i][j].iter().any(|v| !v.is_zero()) {
                    vectors.push(self.structure[i][j].clone());
                }
            }
        }
        Subspace::from_vectors(&self.field, self.dim, &vectors)
    }

    /// {x : [x, y] = 0 for all y}, via the kernel of the stacked
    /// right-bracket maps.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        if d == 0 {
            return Subspace::zero(&self.field, 0);
        }
        let mut stacked = ExactMatrix::zero(&self.field, d * d, d);
        for j in 0..d {
            for i in 0..d {
                for s in 0..d {
                    stacked.set(j * d + s, i, self.structure[i][j][s].clone());
                }
            }
        }
        kernel(&stacked)
    }

    pub fn derived_and_center(&self) -> (Subspace, Subspace) {
        (self.derived(), self.center())
    }

    /// Induced algebra on a bracket-closed subspace, together with the
    /// embedding rows (the canonical basis of the subspace).
    pub fn subalgebra(&self, space: &Subspace, label: impl Into<String>) -> Result<LieAlgebra> {
        if space.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch {
                left: space.ambient_dim(),
                right: self.dim,
            });
        }
        let q = space.dim();
        let basis = space.basis_vectors();
        let mut structure = vec![vec![vec![self.field.zero(); q]; q]; q];
        for s in 0..q {
            for t in 0..q {
                let br = self.bracket(&basis[s], &basis[t]);
                let coords = space.coordinates(&br).ok_or_else(|| Error::NotBracketClosed {
                    context: format!("bracket of subspace basis pair ({s},{t}) leaves the subspace"),
                })?;
                structure[s][t] = coords;
            }
        }
        let mut alg = LieAlgebra::from_structure(&self.field, q, structure, label)?;
        alg.basis_labels = (1..=q).map(|i| format!("y{}", i)).collect();
        Ok(alg)
    }

    pub fn is_semisimple(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        self.killing_matrix().rank() == self.dim
    }

    /// Simple: nonzero, perfect, and the adjoint representation is
    /// irreducible (its associative closure is the full matrix algebra).
    pub fn is_simple(&self) -> Result<bool> {
        if self.dim == 0 || self.derived().dim() != self.dim {
            return Ok(false);
        }
        let ads: Vec<ExactMatrix> = (0..self.dim)
            .map(|i| self.ad(&basis_vec(&self.field, self.dim, i)))
            .collect();
        let closure = algebra_closure(&ads, true)?;
        Ok(closure.dim() == self.dim * self.dim)
    }

    pub fn structure_report(&self) -> StructureReport {
        let derived = self.derived();
        let center = self.center();
        let kind = if self.is_semisimple() {
            StructureKind::Semisimple
        } else {
            let complementary = derived.dim() + center.dim() == self.dim
                && derived
                    .intersect(&center)
                    .map(|m| m.is_zero())
                    .unwrap_or(false);
            let derived_ss = if complementary {
                match self.subalgebra(&derived, "derived") {
                    Ok(sub) => sub.is_semisimple(),
                    Err(_) => false,
                }
            } else {
                false
            };
            if complementary && derived_ss {
                StructureKind::Reductive
            } else {
                StructureKind::Neither
            }
        };
        StructureReport {
            kind,
            derived,
            center,
        }
    }

    /// Quotient by an ideal. The complement basis is the echelon-pivot
    /// completion of the ideal basis (lowest available index first), so the
    /// induced structure constants are reproducible. Also returns the
    /// projection matrix in quotient coordinates.
    pub fn quotient(&self, ideal: &LieIdeal) -> Result<(LieAlgebra, ExactMatrix)> {
        ideal.check_parent(self)?;
        let d = self.dim;
        let idim = ideal.space.dim();
        let q = d - idim;
        let pivots: std::collections::BTreeSet<usize> = (0..idim)
            .map(|r| {
                let row = ideal.space.basis().row(r);
                row.iter().position(|v| !v.is_zero()).expect("no zero rows")
            })
            .collect();
        let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        // full basis matrix: ideal rows then complement indicators; transpose
        // to express vectors in that basis.
        let mut full_rows = ideal.space.basis_vectors();
        for &c in &complement {
            full_rows.push(basis_vec(&self.field, d, c));
        }
        let full = ExactMatrix::from_rows(&self.field, full_rows).transpose();
        let inv = full.inverse().map_err(|_| Error::InvalidStructure {
            context: "ideal basis plus complement is singular (internal)".into(),
        })?;
        // projection coords = rows idim..d of inv
        let projection = ExactMatrix::from_fn(&self.field, q, d, |r, c| {
            inv.get(idim + r, c).clone()
        });
        let mut structure = vec![vec![vec![self.field.zero(); q]; q]; q];
        for s in 0..q {
            for t in 0..q {
                let br = self.bracket(
                    &basis_vec(&self.field, d, complement[s]),
                    &basis_vec(&self.field, d, complement[t]),
                );
                structure[s][t] = projection.apply(&br);
            }
        }
        let quotient = LieAlgebra::from_structure(
            &self.field,
            q,
            structure,
            format!("{}/ideal", self.label),
        )?;
        // the projection must be a Lie homomorphism
        for i in 0..d {
            for j in 0..d {
                let lhs = projection.apply(&self.structure[i][j]);
                let rhs = quotient.bracket(
                    &projection.apply(&basis_vec(&self.field, d, i)),
                    &projection.apply(&basis_vec(&self.field, d, j)),
                );
                if lhs != rhs {
                    return Err(Error::IdentityViolation {
                        context: format!("quotient projection is not a homomorphism at ({i},{j})"),
                    });
                }
            }
        }
        Ok((quotient, projection))
    }

    /// Export as a text table of triples `i j c1 ... cd` (1-based, scalars in
    /// the text grammar with whitespace stripped), one line per nonzero
    /// bracket with i < j.
    pub fn to_structure_table(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.structure[i][j].iter().any(|v| !v.is_zero()) {
                    let coords: Vec<String> = self.structure[i][j]
                        .iter()
                        .map(|v| v.to_string().replace(' ', ""))
                        .collect();
                    out.push_str(&format!("{} {} {}\n", i + 1, j + 1, coords.join(" ")));
                }
            }
        }
        out
    }

    pub fn from_structure_table(field: &CycField, text: &str) -> Result<LieAlgebra> {
        let mut dim = None;
        let mut triples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            if first == "dim" {
                let v = parts.next().ok_or_else(|| Error::Spec {
                    path: format!("line {}", lineno + 1),
                    reason: "missing dimension".into(),
                })?;
                dim = Some(v.parse::<usize>().map_err(|_| Error::Spec {
                    path: format!("line {}", lineno + 1),
                    reason: "bad dimension".into(),
                })?);
                continue;
            }
            let i: usize = first.parse().map_err(|_| Error::Spec {
                path: format!("line {}", lineno + 1),
                reason: "bad index".into(),
            })?;
            let j: usize = parts
                .next()
                .ok_or_else(|| Error::Spec {
                    path: format!("line {}", lineno + 1),
                    reason: "missing second index".into(),
                })?
                .parse()
                .map_err(|_| Error::Spec {
                    path: format!("line {}", lineno + 1),
                    reason: "bad index".into(),
                })?;
            let coords: Vec<CycScalar> = parts
                .map(|s| parse_scalar(field, s))
                .collect::<Result<_>>()?;
            triples.push((i, j, coords, lineno + 1));
        }
        let d = dim.ok_or_else(|| Error::Spec {
            path: "structure table".into(),
            reason: "missing 'dim' header".into(),
        })?;
        let mut structure = vec![vec![vec![field.zero(); d]; d]; d];
        for (i, j, coords, lineno) in triples {
            if i == 0 || j == 0 || i > d || j > d || coords.len() != d {
                return Err(Error::Spec {
                    path: format!("line {}", lineno),
                    reason: "indices out of range or wrong coordinate count".into(),
                });
            }
            structure[i - 1][j - 1] = coords.clone();
            structure[j - 1][i - 1] = coords.iter().map(|v| v.neg()).collect();
        }
        LieAlgebra::from_structure(field, d, structure, "custom")
    }
}

pub fn basis_vec(field: &CycField, dim: usize, i: usize) -> Vec<CycScalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Semisimple,
    Reductive,
    Neither,
}

#[derive(Clone)]
pub struct StructureReport {
    pub kind: StructureKind,
    pub derived: Subspace,
    pub center: Subspace,
}

/// An ideal of a structure-constant algebra, kept as a canonical subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieIdeal {
    parent_dim: usize,
    pub space: Subspace,
}

impl LieIdeal {
    pub fn new(parent: &LieAlgebra, space: Subspace) -> Result<LieIdeal> {
        if space.ambient_dim() != parent.dim() {
            return Err(Error::AmbientMismatch {
                left: space.ambient_dim(),
                right: parent.dim(),
            });
        }
        for i in 0..parent.dim() {
            for b in space.basis_vectors() {
                let br = parent.bracket(&basis_vec(parent.field(), parent.dim(), i), &b);
                if !space.contains_vector(&br) {
                    return Err(Error::NotAnIdeal {
                        context: format!("[x{}, v] leaves the subspace", i + 1),
                    });
                }
            }
        }
        Ok(LieIdeal {
            parent_dim: parent.dim(),
            space,
        })
    }

    fn check_parent(&self, parent: &LieAlgebra) -> Result<()> {
        if self.parent_dim != parent.dim() {
            return Err(Error::AmbientMismatch {
                left: self.parent_dim,
                right: parent.dim(),
            });
        }
        Ok(())
    }
}

/// Chevalley-style basis of sl(n). For n = 2 the basis is (e, f, h) with
/// [h,e] = 2e, [h,f] = -2f, [e,f] = h; in general the off-diagonal units
/// E_ij come first (upper then lower, lexicographically), followed by the
/// coroots H_k = E_kk - E_(k+1)(k+1).
pub fn build_sl(field: &CycField, n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::BadRank(n));
    }
    let dim = n * n - 1;
    // basis as n x n matrices
    let mut mats: Vec<ExactMatrix> = Vec::with_capacity(dim);
    let mut labels: Vec<String> = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            if i < j {
                let mut m = ExactMatrix::zero(field, n, n);
                m.set(i, j, field.one());
                mats.push(m);
                labels.push(unit_label(n, i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i > j {
                let mut m = ExactMatrix::zero(field, n, n);
                m.set(i, j, field.one());
                mats.push(m);
                labels.push(unit_label(n, i, j));
            }
        }
    }
    for k in 0..n - 1 {
        let mut m = ExactMatrix::zero(field, n, n);
        m.set(k, k, field.one());
        m.set(k + 1, k + 1, field.integer(-1));
        mats.push(m);
        labels.push(if n == 2 { "h".into() } else { format!("H{}", k + 1) });
    }
    // coordinates of a traceless matrix: off-diagonal entries directly,
    // coroot coefficients by partial sums of the diagonal.
    let coords_of = |m: &ExactMatrix| -> Vec<CycScalar> {
        let mut coords = vec![field.zero(); dim];
        let mut idx = 0;
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    coords[idx] = m.get(i, j).clone();
                    idx += 1;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i > j {
                    coords[idx] = m.get(i, j).clone();
                    idx += 1;
                }
            }
        }
        let mut partial = field.zero();
        for k in 0..n - 1 {
            partial = partial.add(m.get(k, k));
            coords[idx] = partial.clone();
            idx += 1;
        }
        coords
    };
    let mut structure = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let comm = mats[a].mul(&mats[b]).sub(&mats[b].mul(&mats[a]));
            structure[a][b] = coords_of(&comm);
        }
    }
    let mut alg = LieAlgebra::from_structure(field, dim, structure, format!("sl{}", n))?;
    alg.basis_labels = labels;
    Ok(alg)
}

fn unit_label(n: usize, i: usize, j: usize) -> String {
    if n == 2 {
        if i < j {
            "e".into()
        } else {
            "f".into()
        }
    } else {
        format!("E{}{}", i + 1, j + 1)
    }
}

/// The current algebra g tensor k^n: one copy of g per point, with basis
/// x_i (x) e_j ordered i-major.
pub fn current_algebra(g: &LieAlgebra, n: usize) -> LieAlgebra {
    let field = g.field().clone();
    let d = g.dim();
    let dim = d * n;
    let mut structure = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for i in 0..d {
        for k in 0..d {
            let c = g.bracket_basis(i, k);
            for j in 0..n {
                for (s, v) in c.iter().enumerate() {
                    if !v.is_zero() {
                        structure[i * n + j][k * n + j][s * n + j] = v.clone();
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(dim);
    for i in 0..d {
        for j in 0..n {
            labels.push(format!("{}(x)e{}", g.basis_labels[i], j + 1));
        }
    }
    let mut alg = LieAlgebra {
        field,
        dim,
        structure,
        label: format!("{}(x)k^{}", g.label, n),
        basis_labels: labels,
    };
    debug_assert!(alg.validate().is_ok());
    alg.label = format!("{}(x)k^{}", g.label, n);
    alg
}

/// A finite-dimensional representation given by one matrix per basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct LieRep {
    pub algebra: LieAlgebra,
    pub matrices: Vec<ExactMatrix>,
}

impl fmt::Debug for LieRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieRep(dim {} of {:?})", self.dim_v(), self.algebra)
    }
}

impl LieRep {
    pub fn new(algebra: LieAlgebra, matrices: Vec<ExactMatrix>) -> Result<LieRep> {
        let rep = LieRep { algebra, matrices };
        rep.validate()?;
        Ok(rep)
    }

    pub fn dim_v(&self) -> usize {
        self.matrices
            .first()
            .map(|m| m.rows())
            .unwrap_or(1)
    }

    /// The trivial one-dimensional module.
    pub fn trivial(algebra: LieAlgebra) -> LieRep {
        let field = algebra.field().clone();
        let matrices = (0..algebra.dim())
            .map(|_| ExactMatrix::zero(&field, 1, 1))
            .collect();
        LieRep { algebra, matrices }
    }

    pub fn is_trivial(&self) -> bool {
        self.dim_v() == 1 && self.matrices.iter().all(|m| m.is_zero())
    }

    /// rho([x_i, x_j]) = rho(x_i) rho(x_j) - rho(x_j) rho(x_i) on all pairs.
    pub fn validate(&self) -> Result<()> {
        let d = self.algebra.dim();
        if self.matrices.len() != d {
            return Err(Error::DimensionMismatch {
                context: "one matrix per basis element required".into(),
            });
        }
        let dv = self.dim_v();
        if self
            .matrices
            .iter()
            .any(|m| m.rows() != dv || m.cols() != dv)
        {
            return Err(Error::DimensionMismatch {
                context: "representation matrices must be square of equal size".into(),
            });
        }
        for i in 0..d {
            for j in (i + 1)..d {
                let lhs = self.apply(self.algebra.bracket_basis(i, j));
                let rhs = self.matrices[i]
                    .mul(&self.matrices[j])
                    .sub(&self.matrices[j].mul(&self.matrices[i]));
                if lhs != rhs {
                    return Err(Error::InvalidStructure {
                        context: format!("homomorphism property fails at pair ({i},{j})"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Matrix representing sum_i coords_i x_i.
    pub fn apply(&self, coords: &[CycScalar]) -> ExactMatrix {
        let field = self.algebra.field();
        let dv = self.dim_v();
        let mut acc = ExactMatrix::zero(field, dv, dv);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.matrices[i].scale(c));
            }
        }
        acc
    }

    /// Tensor product of two representations of the same algebra.
    pub fn tensor(&self, other: &LieRep) -> Result<LieRep> {
        if self.algebra != other.algebra {
            return Err(Error::DimensionMismatch {
                context: "tensor factors live over different algebras".into(),
            });
        }
        let field = self.algebra.field();
        let ida = ExactMatrix::identity(field, self.dim_v());
        let idb = ExactMatrix::identity(field, other.dim_v());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.kron(&idb).add(&ida.kron(b)))
            .collect();
        LieRep::new(self.algebra.clone(), matrices)
    }

    /// Block-diagonal direct sum of two representations of the same algebra.
    pub fn direct_sum(&self, other: &LieRep) -> Result<LieRep> {
        if self.algebra != other.algebra {
            return Err(Error::DimensionMismatch {
                context: "direct summands live over different algebras".into(),
            });
        }
        let field = self.algebra.field();
        let (da, db) = (self.dim_v(), other.dim_v());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                ExactMatrix::from_fn(field, da + db, da + db, |r, c| {
                    if r < da && c < da {
                        a.get(r, c).clone()
                    } else if r >= da && c >= da {
                        b.get(r - da, c - da).clone()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        LieRep::new(self.algebra.clone(), matrices)
    }

    /// Pull back along a homomorphism into this representation's algebra;
    /// column i of `hom` holds the image of basis vector i of `domain`.
    pub fn pullback(&self, domain: LieAlgebra, hom: &ExactMatrix) -> Result<LieRep> {
        if hom.rows() != self.algebra.dim() || hom.cols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                context: "homomorphism matrix has wrong shape".into(),
            });
        }
        let matrices = (0..domain.dim())
            .map(|i| self.apply(&hom.col(i)))
            .collect();
        LieRep::new(domain, matrices)
    }
}

/// The (m+1)-dimensional irreducible highest-weight module of sl(2) in the
/// weight basis v_0, ..., v_m: h v_j = (m - 2j) v_j, f v_j = v_(j+1),
/// e v_j = j (m + 1 - j) v_(j-1).
pub fn sl2_irrep(field: &CycField, m: usize) -> Result<LieRep> {
    let sl2 = build_sl(field, 2)?;
    let dv = m + 1;
    let mut e = ExactMatrix::zero(field, dv, dv);
    let mut f = ExactMatrix::zero(field, dv, dv);
    let mut h = ExactMatrix::zero(field, dv, dv);
    for j in 0..dv {
        h.set(j, j, field.integer(m as i64 - 2 * j as i64));
        if j + 1 < dv {
            f.set(j + 1, j, field.one());
        }
        if j > 0 {
            e.set(j - 1, j, field.integer((j * (m + 1 - j)) as i64));
        }
    }
    LieRep::new(sl2, vec![e, f, h])
}

/// One-dimensional module of an algebra, given by a functional that must
/// vanish on the derived subalgebra.
pub fn character_rep(algebra: &LieAlgebra, values: &[CycScalar]) -> Result<LieRep> {
    if values.len() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            context: "character needs one value per basis element".into(),
        });
    }
    for v in algebra.derived().basis_vectors() {
        let mut acc = algebra.field().zero();
        for (i, c) in v.iter().enumerate() {
            acc = acc.add(&c.mul(&values[i]));
        }
        if !acc.is_zero() {
            return Err(Error::InvalidCharacter);
        }
    }
    let matrices = values
        .iter()
        .map(|v| {
            let mut m = ExactMatrix::zero(algebra.field(), 1, 1);
            m.set(0, 0, v.clone());
            m
        })
        .collect();
    LieRep::new(algebra.clone(), matrices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CycField {
        CycField::new(1).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        assert_eq!(sl2.dim(), 3);
        // basis order (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f
        assert_eq!(sl2.bracket_basis(0, 1), &basis_vec(&f, 3, 2)[..]);
        let he = sl2.bracket_basis(2, 0);
        assert_eq!(he[0], f.integer(2));
        let hf = sl2.bracket_basis(2, 1);
        assert_eq!(hf[1], f.integer(-2));
    }

    #[test]
    fn sl3_dimension_and_jacobi() {
        let f = q();
        let sl3 = build_sl(&f, 3).unwrap();
        assert_eq!(sl3.dim(), 8);
        assert!(sl3.validate().is_ok());
    }

    #[test]
    fn rank_below_two_is_rejected() {
        let f = q();
        assert!(matches!(build_sl(&f, 1), Err(Error::BadRank(1))));
    }

    #[test]
    fn sl2_killing_values() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        let e = basis_vec(&f, 3, 0);
        let fv = basis_vec(&f, 3, 1);
        let h = basis_vec(&f, 3, 2);
        assert_eq!(sl2.killing_form(&h, &h), f.integer(8));
        assert_eq!(sl2.killing_form(&e, &fv), f.integer(4));
        assert_eq!(sl2.killing_form(&e, &e), f.zero());
    }

    #[test]
    fn derived_and_center_of_sl2() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        let (derived, center) = sl2.derived_and_center();
        assert_eq!(derived.dim(), 3);
        assert!(center.is_zero());
    }

    #[test]
    fn one_dimensional_abelian() {
        let f = q();
        let a = LieAlgebra::from_structure(&f, 1, vec![vec![vec![f.zero()]]], "k").unwrap();
        let (derived, center) = a.derived_and_center();
        assert!(derived.is_zero());
        assert_eq!(center.dim(), 1);
        let report = a.structure_report();
        assert_eq!(report.kind, StructureKind::Reductive);
    }

    #[test]
    fn structure_kinds() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        assert_eq!(sl2.structure_report().kind, StructureKind::Semisimple);
        assert!(sl2.is_simple().unwrap());

        // sl2 plus a central line is reductive
        let d = 4;
        let mut structure = vec![vec![vec![f.zero(); d]; d]; d];
        for i in 0..3 {
            for j in 0..3 {
                let c = sl2.bracket_basis(i, j);
                for s in 0..3 {
                    structure[i][j][s] = c[s].clone();
                }
            }
        }
        let red = LieAlgebra::from_structure(&f, d, structure, "sl2+k").unwrap();
        let report = red.structure_report();
        assert_eq!(report.kind, StructureKind::Reductive);
        assert_eq!(report.center.dim(), 1);
        assert!(!red.is_simple().unwrap());

        // the 2-dim nonabelian algebra [x,y] = y is neither
        let mut structure = vec![vec![vec![f.zero(); 2]; 2]; 2];
        structure[0][1][1] = f.one();
        structure[1][0][1] = f.integer(-1);
        let na = LieAlgebra::from_structure(&f, 2, structure, "aff1").unwrap();
        assert_eq!(na.structure_report().kind, StructureKind::Neither);
        assert_eq!(na.killing_matrix().rank(), 1);
    }

    #[test]
    fn quotients() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        // by the zero ideal: an isomorphic copy
        let zero_ideal = LieIdeal::new(&sl2, Subspace::zero(&f, 3)).unwrap();
        let (same, proj) = sl2.quotient(&zero_ideal).unwrap();
        assert_eq!(same, sl2);
        assert_eq!(proj, ExactMatrix::identity(&f, 3));
        // by the whole algebra: zero
        let full = LieIdeal::new(&sl2, Subspace::full(&f, 3)).unwrap();
        let (zero, _) = sl2.quotient(&full).unwrap();
        assert_eq!(zero.dim(), 0);

        // (g tensor k^2) / (g tensor (k+0)) is isomorphic to g
        let cur = current_algebra(&sl2, 2);
        let mut rows = Vec::new();
        for i in 0..3 {
            rows.push(basis_vec(&f, 6, i * 2));
        }
        let slice = Subspace::from_vectors(&f, 6, &rows);
        let ideal = LieIdeal::new(&cur, slice).unwrap();
        let (quot, _) = cur.quotient(&ideal).unwrap();
        assert_eq!(quot, sl2);
    }

    #[test]
    fn non_ideal_subspace_is_rejected() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        let line = Subspace::from_vectors(&f, 3, &[basis_vec(&f, 3, 0)]);
        assert!(matches!(
            LieIdeal::new(&sl2, line),
            Err(Error::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn sl2_irreps() {
        let f = q();
        let v0 = sl2_irrep(&f, 0).unwrap();
        assert!(v0.is_trivial());
        let v1 = sl2_irrep(&f, 1).unwrap();
        let e_expected = ExactMatrix::parse(&f, &[&["0", "1"], &["0", "0"]]).unwrap();
        assert_eq!(v1.matrices[0], e_expected);
        let v2 = sl2_irrep(&f, 2).unwrap();
        let h = &v2.matrices[2];
        assert_eq!(h.get(0, 0), &f.integer(2));
        assert_eq!(h.get(1, 1), &f.zero());
        assert_eq!(h.get(2, 2), &f.integer(-2));
    }

    #[test]
    fn irrep_closures_have_full_dimension() {
        let f = q();
        for m in 0..=5usize {
            let rep = sl2_irrep(&f, m).unwrap();
            let closure = algebra_closure(&rep.matrices, true).unwrap();
            assert_eq!(closure.dim(), (m + 1) * (m + 1), "weight {m}");
        }
    }

    #[test]
    fn tensor_of_natural_representations() {
        // V(1) (x) V(1) decomposes as V(2) + V(0): four-dimensional, not
        // irreducible, with a two-dimensional commutant
        let f = q();
        let v1 = sl2_irrep(&f, 1).unwrap();
        let t = v1.tensor(&v1).unwrap();
        assert_eq!(t.dim_v(), 4);
        let closure = algebra_closure(
            &t.matrices
                .iter()
                .cloned()
                .chain([ExactMatrix::identity(&f, 4)])
                .collect::<Vec<_>>(),
            false,
        )
        .unwrap();
        // the closure is End(V(2)) + End(V(0)) inside the 4x4 matrices
        assert_eq!(closure.dim(), 10);
        // weights of h in the tensor are 2, 0, 0, -2
        let h = &t.matrices[2];
        assert_eq!(h.get(0, 0), &f.integer(2));
        assert_eq!(h.get(3, 3), &f.integer(-2));
    }

    #[test]
    fn pullback_kernel_contains_ideal() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        let cur = current_algebra(&sl2, 2);
        let mut rows = Vec::new();
        for i in 0..3 {
            rows.push(basis_vec(&f, 6, i * 2));
        }
        let ideal = LieIdeal::new(&cur, Subspace::from_vectors(&f, 6, &rows)).unwrap();
        let (quot, proj) = cur.quotient(&ideal).unwrap();
        let rep = sl2_irrep(&f, 1).unwrap();
        // quot == sl2 structurally, so reinterpret the irrep over it
        let rep_q = LieRep::new(quot, rep.matrices.clone()).unwrap();
        let pulled = rep_q.pullback(cur.clone(), &proj).unwrap();
        for v in ideal.space.basis_vectors() {
            assert!(pulled.apply(&v).is_zero());
        }
    }

    #[test]
    fn structure_table_round_trip() {
        let f = CycField::new(4).unwrap();
        let sl2 = build_sl(&f, 2).unwrap();
        let table = sl2.to_structure_table();
        let back = LieAlgebra::from_structure_table(&f, &table).unwrap();
        assert_eq!(back, sl2);
    }

    #[test]
    fn characters_must_vanish_on_derived() {
        let f = q();
        let sl2 = build_sl(&f, 2).unwrap();
        let bad = character_rep(&sl2, &[f.one(), f.zero(), f.zero()]);
        assert!(matches!(bad, Err(Error::InvalidCharacter)));
        let a = LieAlgebra::from_structure(&f, 1, vec![vec![vec![f.zero()]]], "k").unwrap();
        let chi = character_rep(&a, &[f.integer(5)]).unwrap();
        assert_eq!(chi.matrices[0].get(0, 0), &f.integer(5));
    }
}
