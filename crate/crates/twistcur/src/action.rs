//! Finite group actions on g (x) S and everything they induce.
//!
//! This is the core of the library. A [`TwistedAction`] is a finite group of
//! k-Lie automorphisms of the current algebra g (x) k^n, stored as explicit
//! matrices on the basis x_i (x) e_j (ordered i-major) together with its
//! multiplication table. From it we compute:
//!
//! * the induced permutation of the points (every ideal g (x) M_j must be
//!   carried to another one, or the input is rejected),
//! * the induced scalar action on S and the S-linear twist u with
//!   u_{gh} = u_g . ^g u_h splitting the action as ^g(x (x) s) = u_g(x (x) ^g s),
//! * the fixed-point algebra L with its R = S^Gamma module structure,
//! * the evaluated automorphisms g(M) : x -> (g(x (x) 1))(M), which compose
//!   by the twisted law ev_M(gh) = ev_M(g) . ev_M(^g h),
//! * the isotropy algebras g^M (always reductive) and the exact identity
//!   suite tying all of the above together.
//!
//! Points are indexed 0-based throughout the library; the CLI layer converts
//! to the 1-based labels used in reports.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lie::{basis_vec, LieAlgebra, LieIdeal, StructureKind};
use crate::matrix::ExactMatrix;
use crate::scalar::{CycField, CycScalar};
use crate::site::{
    invariants, orbit_stabilizer, InvariantSubalgebra, PointAction, SiteAlgebra,
};
use crate::subspace::{kernel, Subspace};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

pub struct TwistedAction {
    g: LieAlgebra,
    sites: SiteAlgebra,
    elements: Vec<ExactMatrix>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    point_action: PointAction,
}

impl TwistedAction {
    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }
    pub fn sites(&self) -> &SiteAlgebra {
        &self.sites
    }
    pub fn field(&self) -> &CycField {
        self.g.field()
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }
    pub fn points(&self) -> usize {
        self.sites.points()
    }
    pub fn ambient_dim(&self) -> usize {
        self.dim_g() * self.points()
    }
    pub fn identity_index(&self) -> usize {
        self.identity
    }
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }
    pub fn element(&self, t: usize) -> &ExactMatrix {
        &self.elements[t]
    }
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inverse_of(&self, t: usize) -> usize {
        self.inverse[t]
    }
    pub fn point_action(&self) -> &PointAction {
        &self.point_action
    }
    pub fn point_image(&self, t: usize, point: usize) -> usize {
        self.point_action.image(t, point)
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * self.points() + j
    }

    /// Bracket on g (x) S: slicewise bracket of g, since e_j e_l = delta e_j.
    pub fn big_bracket(&self, u: &[CycScalar], v: &[CycScalar]) -> Vec<CycScalar> {
        let d = self.dim_g();
        let n = self.points();
        let field = self.field();
        let mut out = vec![field.zero(); d * n];
        for j in 0..n {
            let us: Vec<CycScalar> = (0..d).map(|i| u[self.index(i, j)].clone()).collect();
            if us.iter().all(|x| x.is_zero()) {
                continue;
            }
            let vs: Vec<CycScalar> = (0..d).map(|i| v[self.index(i, j)].clone()).collect();
            if vs.iter().all(|x| x.is_zero()) {
                continue;
            }
            let br = self.g.bracket(&us, &vs);
            for (i, val) in br.into_iter().enumerate() {
                out[self.index(i, j)] = val;
            }
        }
        out
    }

    /// The operator 1 (x) gamma acting only on the scalar factor:
    /// x_i (x) e_j -> x_i (x) e_{sigma(j)}.
    pub fn scalar_operator(&self, t: usize) -> ExactMatrix {
        let d = self.dim_g();
        let n = self.points();
        let field = self.field();
        let mut m = ExactMatrix::zero(field, d * n, d * n);
        for i in 0..d {
            for j in 0..n {
                m.set(
                    self.index(i, self.point_image(t, j)),
                    self.index(i, j),
                    field.one(),
                );
            }
        }
        m
    }

    /// The induced action of a group element on S itself: coordinates are
    /// pulled back along the inverse point map, so ^g s (M) = s(^{g^-1} M).
    pub fn induced_scalar_action(&self, t: usize, s: &[CycScalar]) -> Vec<CycScalar> {
        let n = self.points();
        assert_eq!(s.len(), n);
        let mut out = vec![self.field().zero(); n];
        for j in 0..n {
            out[self.point_image(t, j)] = s[j].clone();
        }
        out
    }

    /// Multiplication by a scalar vector s on g (x) S (a diagonal operator).
    pub fn multiplication_operator(&self, s: &[CycScalar]) -> ExactMatrix {
        let d = self.dim_g();
        let n = self.points();
        let field = self.field();
        let mut m = ExactMatrix::zero(field, d * n, d * n);
        for i in 0..d {
            for j in 0..n {
                m.set(self.index(i, j), self.index(i, j), s[j].clone());
            }
        }
        m
    }

    /// Scale an ambient vector slicewise by s.
    pub fn scalar_multiply(&self, s: &[CycScalar], v: &[CycScalar]) -> Vec<CycScalar> {
        let d = self.dim_g();
        let n = self.points();
        let mut out = v.to_vec();
        for i in 0..d {
            for j in 0..n {
                let idx = self.index(i, j);
                out[idx] = out[idx].mul(&s[j]);
            }
        }
        out
    }

    /// Conjugation by the scalar operator: ^g phi = (1 (x) g) phi (1 (x) g^-1),
    /// realized as an index permutation of the matrix of phi.
    pub fn twisted_conjugate(&self, t: usize, m: &ExactMatrix) -> ExactMatrix {
        let d = self.dim_g();
        let n = self.points();
        let inv = self.inverse_of(t);
        ExactMatrix::from_fn(self.field(), d * n, d * n, |r, c| {
            let (ri, rj) = (r / n, r % n);
            let (ci, cj) = (c / n, c % n);
            m.get(
                self.index(ri, self.point_image(inv, rj)),
                self.index(ci, self.point_image(inv, cj)),
            )
            .clone()
        })
    }

    /// The evaluated automorphism gamma(M) of g: column i is the M-slice of
    /// gamma(x_i (x) 1).
    pub fn local_automorphism(&self, t: usize, point: usize) -> ExactMatrix {
        self.local_of_matrix(&self.elements[t], point)
    }

    /// Same evaluation for an arbitrary operator on g (x) S.
    pub fn local_of_matrix(&self, m: &ExactMatrix, point: usize) -> ExactMatrix {
        let d = self.dim_g();
        let n = self.points();
        ExactMatrix::from_fn(self.field(), d, d, |r, c| {
            let mut acc = self.field().zero();
            for l in 0..n {
                acc = acc.add(m.get(self.index(r, point), self.index(c, l)));
            }
            acc
        })
    }

    /// Evaluate an ambient vector at a point: sum of s_i(M) x_i.
    pub fn evaluate_vector(&self, v: &[CycScalar], point: usize) -> Vec<CycScalar> {
        (0..self.dim_g())
            .map(|i| v[self.index(i, point)].clone())
            .collect()
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.points() {
            return Err(Error::BadPoint {
                point: point + 1,
                count: self.points(),
            });
        }
        Ok(())
    }

    /// The Reynolds projector onto the fixed subspace.
    pub fn reynolds(&self) -> ExactMatrix {
        let dn = self.ambient_dim();
        let mut acc = ExactMatrix::zero(self.field(), dn, dn);
        for e in &self.elements {
            acc = acc.add(e);
        }
        let order = self
            .field()
            .rational(1, self.order() as i64)
            .expect("order nonzero");
        acc.scale(&order)
    }

    /// L = (g (x) S)^Gamma with its bracket and R-module structure.
    pub fn fixed_point_algebra(&self) -> Result<FixedAlgebra> {
        let dn = self.ambient_dim();
        let field = self.field();
        let mut stacked: Option<ExactMatrix> = None;
        for (t, e) in self.elements.iter().enumerate() {
            if t == self.identity {
                continue;
            }
            let diff = e.sub(&ExactMatrix::identity(field, dn));
            stacked = Some(match stacked {
                None => diff,
                Some(s) => s.vstack(&diff),
            });
        }
        let basis = match stacked {
            None => Subspace::full(field, dn),
            Some(s) => kernel(&s),
        };
        let l_dim = basis.dim();
        let vectors = basis.basis_vectors();
        let mut structure = vec![vec![vec![field.zero(); l_dim]; l_dim]; l_dim];
        for s in 0..l_dim {
            for t in 0..l_dim {
                let br = self.big_bracket(&vectors[s], &vectors[t]);
                let coords = basis.coordinates(&br).ok_or_else(|| Error::IdentityViolation {
                    context: "fixed subspace is not bracket-closed".into(),
                })?;
                structure[s][t] = coords;
            }
        }
        let mut algebra = LieAlgebra::from_structure(field, l_dim, structure, "L")?;
        algebra.basis_labels = (1..=l_dim).map(|i| format!("u{}", i)).collect();
        let inv = invariants(&self.sites, &self.point_action);
        let mut r_mult = Vec::new();
        for r in inv.basis.basis_vectors() {
            let mut m = ExactMatrix::zero(field, l_dim, l_dim);
            for (col, b) in vectors.iter().enumerate() {
                let scaled = self.scalar_multiply(&r, b);
                let coords = basis.coordinates(&scaled).ok_or_else(|| Error::IdentityViolation {
                    context: "R does not stabilize the fixed algebra".into(),
                })?;
                for (row, c) in coords.into_iter().enumerate() {
                    m.set(row, col, c);
                }
            }
            r_mult.push(m);
        }
        Ok(FixedAlgebra {
            basis,
            algebra,
            invariants: inv,
            r_mult,
        })
    }

    /// The S-linear twist u_g = g . (1 (x) g^-1), verified to be an S-linear
    /// Lie automorphism satisfying the crossed-homomorphism law. A violation
    /// here means an internal bug and aborts with `IdentityViolation`.
    pub fn cocycle(&self) -> Result<Cocycle> {
        let matrices: Vec<ExactMatrix> = (0..self.order())
            .map(|t| self.elements[t].mul(&self.scalar_operator(self.inverse_of(t))))
            .collect();
        let cocycle = Cocycle { matrices };
        let violations = self.verify_cocycle(&cocycle);
        if let Some(v) = violations.first() {
            return Err(Error::IdentityViolation { context: v.clone() });
        }
        Ok(cocycle)
    }

    fn verify_cocycle(&self, cocycle: &Cocycle) -> Vec<String> {
        let mut violations = Vec::new();
        let d = self.dim_g();
        let n = self.points();
        // S-linearity: u commutes with multiplication by each idempotent
        for t in 0..self.order() {
            for j in 0..n {
                let mj = self.multiplication_operator(&self.sites.idempotent(j));
                if cocycle.matrices[t].mul(&mj) != mj.mul(&cocycle.matrices[t]) {
                    violations.push(format!(
                        "twist of element {t} is not S-linear at idempotent {}",
                        j + 1
                    ));
                }
            }
        }
        // Lie automorphism on basis pairs
        for (t, u) in cocycle.matrices.iter().enumerate() {
            'outer: for p in 0..d * n {
                for q in 0..d * n {
                    let ep = basis_vec(self.field(), d * n, p);
                    let eq = basis_vec(self.field(), d * n, q);
                    let lhs = u.apply(&self.big_bracket(&ep, &eq));
                    let rhs = self.big_bracket(&u.col(p), &u.col(q));
                    if lhs != rhs {
                        violations.push(format!(
                            "twist of element {t} is not a Lie automorphism at pair ({p},{q})"
                        ));
                        break 'outer;
                    }
                }
            }
        }
        // crossed homomorphism: u_{ab} = u_a . ^a u_b
        for a in 0..self.order() {
            for b in 0..self.order() {
                let lhs = &cocycle.matrices[self.product(a, b)];
                let rhs = cocycle.matrices[a].mul(&self.twisted_conjugate(a, &cocycle.matrices[b]));
                if *lhs != rhs {
                    violations.push(format!(
                        "crossed homomorphism law fails at pair ({a},{b})"
                    ));
                }
            }
        }
        violations
    }

    /// The isotropy algebra g^M: fixed points of the evaluated automorphisms
    /// of the stabilizer, with its induced bracket. Also verifies that the
    /// evaluation image of L equals g^M and that g^M is reductive.
    pub fn isotropy_algebra(&self, fa: &FixedAlgebra, point: usize) -> Result<IsotropyAlgebra> {
        self.check_point(point)?;
        let iso = self.isotropy_unchecked(point)?;
        let image = self.evaluation_image(fa, point);
        if !image.equals(&iso.space)? {
            return Err(Error::IdentityViolation {
                context: format!(
                    "evaluation image of L at point {} differs from the isotropy algebra",
                    point + 1
                ),
            });
        }
        let report = iso.algebra.structure_report();
        if report.kind == StructureKind::Neither {
            return Err(Error::IdentityViolation {
                context: format!("isotropy algebra at point {} is not reductive", point + 1),
            });
        }
        Ok(iso)
    }

    pub(crate) fn isotropy_unchecked(&self, point: usize) -> Result<IsotropyAlgebra> {
        let d = self.dim_g();
        let field = self.field();
        let (_, stabilizer) = orbit_stabilizer(&self.point_action, point)?;
        let mut stacked: Option<ExactMatrix> = None;
        for &t in &stabilizer {
            if t == self.identity {
                continue;
            }
            let diff = self
                .local_automorphism(t, point)
                .sub(&ExactMatrix::identity(field, d));
            stacked = Some(match stacked {
                None => diff,
                Some(s) => s.vstack(&diff),
            });
        }
        let space = match stacked {
            None => Subspace::full(field, d),
            Some(s) => kernel(&s),
        };
        let algebra = self
            .g
            .subalgebra(&space, format!("g^M{}", point + 1))
            .map_err(|_| Error::IdentityViolation {
                context: format!("isotropy space at point {} is not bracket-closed", point + 1),
            })?;
        Ok(IsotropyAlgebra {
            point,
            subgroup: stabilizer,
            space,
            algebra,
        })
    }

    /// ev_M restricted to L, as a d x dim(L) matrix in L-coordinates.
    pub fn evaluation_matrix(&self, fa: &FixedAlgebra, point: usize) -> ExactMatrix {
        let d = self.dim_g();
        let vectors = fa.basis.basis_vectors();
        ExactMatrix::from_fn(self.field(), d, fa.dim(), |r, c| {
            vectors[c][self.index(r, point)].clone()
        })
    }

    /// The image ev_M(L) as a subspace of g.
    pub fn evaluation_image(&self, fa: &FixedAlgebra, point: usize) -> Subspace {
        let rows: Vec<Vec<CycScalar>> = fa
            .basis
            .basis_vectors()
            .iter()
            .map(|v| self.evaluate_vector(v, point))
            .collect();
        Subspace::from_vectors(self.field(), self.dim_g(), &rows)
    }

    /// Joint evaluation L -> g^{M_1} + ... + g^{M_r} for points in pairwise
    /// distinct orbits; returns the stacked matrix and whether it is onto.
    pub fn joint_evaluation(
        &self,
        fa: &FixedAlgebra,
        points: &[usize],
    ) -> Result<(ExactMatrix, bool)> {
        let mut rows = 0usize;
        let mut blocks = Vec::new();
        for &p in points {
            let iso = self.isotropy_unchecked(p)?;
            let ev = self.evaluation_matrix(fa, p);
            // rewrite in isotropy coordinates
            let q = iso.space.dim();
            let mut block = ExactMatrix::zero(self.field(), q, fa.dim());
            for c in 0..fa.dim() {
                let col = ev.col(c);
                let coords = iso.space.coordinates(&col).ok_or_else(|| Error::IdentityViolation {
                    context: "evaluation image leaves the isotropy algebra".into(),
                })?;
                for (r, v) in coords.into_iter().enumerate() {
                    block.set(r, c, v);
                }
            }
            rows += q;
            blocks.push(block);
        }
        let mut stacked = ExactMatrix::zero(self.field(), 0, fa.dim());
        for b in blocks {
            stacked = stacked.vstack(&b);
        }
        let onto = stacked.rank() == rows;
        Ok((stacked, onto))
    }

    /// Does g^M = gamma^-1(M) g^{^gamma M} hold? Returns both sides.
    pub fn isotropy_transport_check(
        &self,
        t: usize,
        point: usize,
    ) -> Result<TransportCheck> {
        self.check_point(point)?;
        let lhs = self.isotropy_unchecked(point)?.space;
        let moved = self.point_image(t, point);
        let right_space = self.isotropy_unchecked(moved)?.space;
        let map = self.local_automorphism(self.inverse_of(t), point);
        let rows: Vec<Vec<CycScalar>> = right_space
            .basis_vectors()
            .iter()
            .map(|v| map.apply(v))
            .collect();
        let rhs = Subspace::from_vectors(self.field(), self.dim_g(), &rows);
        let holds = lhs.equals(&rhs)?;
        Ok(TransportCheck { holds, lhs, rhs })
    }

    /// I(m) = {r in S : r L <= m}, reported as the full solution set in S and
    /// its contraction to R. When L/m is simple the contraction is verified
    /// maximal in R.
    pub fn ideal_contraction(
        &self,
        fa: &FixedAlgebra,
        ideal: &LieIdeal,
    ) -> Result<ContractionReport> {
        // the ideal must be R-stable
        for rm in &fa.r_mult {
            for v in ideal.space.basis_vectors() {
                if !ideal.space.contains_vector(&rm.apply(&v)) {
                    return Err(Error::NotAnIdeal {
                        context: "ideal is not stable under multiplication by R".into(),
                    });
                }
            }
        }
        let field = self.field();
        let n = self.points();
        let d = self.dim_g();
        let lifted_rows: Vec<Vec<CycScalar>> = ideal
            .space
            .basis_vectors()
            .iter()
            .map(|v| fa.embed(v))
            .collect();
        let lifted = Subspace::from_vectors(field, d * n, &lifted_rows);
        let conditions = lifted.membership_conditions();
        // unknown r in k^n; for each L-basis vector b, the map r -> r.b is
        // linear with column j carrying the j-slice of b.
        let mut stacked: Option<ExactMatrix> = None;
        for b in fa.basis.basis_vectors() {
            let mut t_b = ExactMatrix::zero(field, d * n, n);
            for i in 0..d {
                for j in 0..n {
                    t_b.set(self.index(i, j), j, b[self.index(i, j)].clone());
                }
            }
            let block = conditions.mul(&t_b);
            stacked = Some(match stacked {
                None => block,
                Some(s) => s.vstack(&block),
            });
        }
        let s_solutions = match stacked {
            None => Subspace::full(field, n),
            Some(s) => kernel(&s),
        };
        let r_contraction = s_solutions.intersect(&fa.invariants.basis)?;
        let (quotient, _) = fa.algebra.quotient(ideal)?;
        let quotient_simple = quotient.is_simple()?;
        let maximal = if quotient_simple {
            let ok = fa.invariants.is_maximal_ideal(&r_contraction)?;
            if !ok {
                return Err(Error::IdentityViolation {
                    context: "contraction of a maximal ideal of L is not maximal in R".into(),
                });
            }
            Some(true)
        } else {
            None
        };
        Ok(ContractionReport {
            s_solutions,
            r_contraction,
            quotient_simple,
            maximal,
        })
    }

    /// The product span j.L inside g (x) S, for an ideal j of R.
    pub fn ideal_times_fixed(&self, fa: &FixedAlgebra, j: &Subspace) -> Result<Subspace> {
        if !fa.invariants.is_ideal(j)? {
            return Err(Error::NotAnIdeal {
                context: "input is not an ideal of R".into(),
            });
        }
        let mut vectors = Vec::new();
        for r in j.basis_vectors() {
            for b in fa.basis.basis_vectors() {
                vectors.push(self.scalar_multiply(&r, &b));
            }
        }
        Ok(Subspace::from_vectors(
            self.field(),
            self.ambient_dim(),
            &vectors,
        ))
    }

    /// Does j.L = L? This is the obstruction that can make the contraction
    /// map miss a maximal ideal of R.
    pub fn ideal_covers_fixed(&self, fa: &FixedAlgebra, j: &Subspace) -> Result<bool> {
        let span = self.ideal_times_fixed(fa, j)?;
        span.equals(&fa.basis)
    }

    /// Construct the natural surjection g^M -> L/m_1 x ... x L/m_s for ideals
    /// with common contraction I and simple quotients, M lying over I. The
    /// joint projection is checked to factor through ev_M, the factored map
    /// is built explicitly, and its surjectivity is an exact rank check.
    pub fn epimorphism_check(
        &self,
        fa: &FixedAlgebra,
        contraction: &Subspace,
        ideals: &[LieIdeal],
    ) -> Result<EpimorphismReport> {
        if ideals.is_empty() {
            return Ok(EpimorphismReport {
                point: None,
                map: None,
                surjective: true,
            });
        }
        let mut projections = Vec::new();
        let mut total_rows = 0usize;
        for (idx, ideal) in ideals.iter().enumerate() {
            let report = self.ideal_contraction(fa, ideal)?;
            if !report.r_contraction.equals(contraction)? {
                return Err(Error::ContractionMismatch { index: idx });
            }
            if !report.quotient_simple {
                return Err(Error::NotSimpleQuotient { index: idx });
            }
            let (quotient, proj) = fa.algebra.quotient(ideal)?;
            total_rows += quotient.dim();
            projections.push(proj);
        }
        // a point over the contraction
        let over = crate::site::ideal_over(contraction, &self.sites, &fa.invariants)?;
        let point = *over.points.first().ok_or_else(|| Error::Spec {
            path: "epimorphism".into(),
            reason: "no point lies over the given ideal".into(),
        })?;
        let iso = self.isotropy_unchecked(point)?;
        // joint projection L -> prod L/m_i
        let mut joint = ExactMatrix::zero(self.field(), 0, fa.dim());
        for p in &projections {
            joint = joint.vstack(p);
        }
        // evaluation in isotropy coordinates
        let ev = self.evaluation_matrix(fa, point);
        let q = iso.space.dim();
        let mut ev_iso = ExactMatrix::zero(self.field(), q, fa.dim());
        for c in 0..fa.dim() {
            let coords = iso
                .space
                .coordinates(&ev.col(c))
                .ok_or_else(|| Error::IdentityViolation {
                    context: "evaluation image leaves the isotropy algebra".into(),
                })?;
            for (r, v) in coords.into_iter().enumerate() {
                ev_iso.set(r, c, v);
            }
        }
        // factorization: ker(ev_M|L) must sit inside ker(joint)
        let ker_ev = kernel(&ev_iso);
        let ker_joint = kernel(&joint);
        if !ker_joint.contains(&ker_ev)? {
            return Err(Error::IdentityViolation {
                context: "joint projection does not factor through the evaluation map".into(),
            });
        }
        // build the factored map on g^M: preimages exist because ev is onto g^M
        let mut map = ExactMatrix::zero(self.field(), total_rows, q);
        for t in 0..q {
            let target = basis_vec(self.field(), q, t);
            let z = ev_iso.solve(&target).ok_or_else(|| Error::IdentityViolation {
                context: "evaluation map is not onto the isotropy algebra".into(),
            })?;
            let image = joint.apply(&z);
            for (r, v) in image.into_iter().enumerate() {
                map.set(r, t, v);
            }
        }
        let surjective = map.rank() == total_rows;
        Ok(EpimorphismReport {
            point: Some(point),
            map: Some(map),
            surjective,
        })
    }

    /// The kernel of ev_M on L as an ideal, together with whether the
    /// quotient (isomorphic to g^M) is simple, i.e. whether the kernel
    /// belongs to Max L.
    pub fn point_kernel_ideal(
        &self,
        fa: &FixedAlgebra,
        point: usize,
    ) -> Result<(LieIdeal, bool)> {
        self.check_point(point)?;
        let ev = self.evaluation_matrix(fa, point);
        let ker = kernel(&ev);
        let ideal = LieIdeal::new(&fa.algebra, ker)?;
        let (quotient, _) = fa.algebra.quotient(&ideal)?;
        Ok((ideal, quotient.is_simple()?))
    }

    /// Run the whole exact identity suite. Returns per-family instance counts
    /// and a list of violations (empty when everything holds).
    pub fn identity_suite(&self, fa: &FixedAlgebra) -> Result<SuiteReport> {
        let mut families: Vec<(String, usize)> = Vec::new();
        let mut violations: Vec<String> = Vec::new();
        let d = self.dim_g();
        let n = self.points();
        let order = self.order();
        let field = self.field();

        // scalar action respects the group table
        let mut count = 0;
        for a in 0..order {
            for b in 0..order {
                count += 1;
                let ab = self.product(a, b);
                for j in 0..n {
                    if self.point_image(ab, j) != self.point_image(a, self.point_image(b, j)) {
                        violations.push(format!(
                            "scalar action table: elements ({a},{b}) disagree at point {}",
                            j + 1
                        ));
                    }
                }
            }
        }
        families.push(("scalar action respects the group table".into(), count));

        // every element is an automorphism
        count = 0;
        for (t, e) in self.elements.iter().enumerate() {
            for p in 0..d * n {
                for q in (p + 1)..d * n {
                    count += 1;
                    let ep = basis_vec(field, d * n, p);
                    let eq = basis_vec(field, d * n, q);
                    let lhs = e.apply(&self.big_bracket(&ep, &eq));
                    let rhs = self.big_bracket(&e.col(p), &e.col(q));
                    if lhs != rhs {
                        violations.push(format!(
                            "element {t} fails the automorphism law at basis pair ({p},{q})"
                        ));
                    }
                }
            }
        }
        families.push(("group elements are Lie automorphisms".into(), count));

        // semilinearity: ^g(x (x) r s) = ^g s . ^g(x (x) r)
        count = 0;
        for t in 0..order {
            for i in 0..d {
                for j in 0..n {
                    let col = self.elements[t].col(self.index(i, j));
                    for l in 0..n {
                        count += 1;
                        let lhs = if j == l {
                            col.clone()
                        } else {
                            vec![field.zero(); d * n]
                        };
                        let moved = self.induced_scalar_action(t, &self.sites.idempotent(l));
                        let rhs = self.scalar_multiply(&moved, &col);
                        if lhs != rhs {
                            violations.push(format!(
                                "semilinearity fails for element {t} at (x{}, e{}, e{})",
                                i + 1,
                                j + 1,
                                l + 1
                            ));
                        }
                    }
                }
            }
        }
        families.push(("semilinearity over S".into(), count));

        let cocycle = self.cocycle()?;

        // reconstruction: ^g(x (x) s) = u_g(x (x) ^g s)
        count = 0;
        for t in 0..order {
            for i in 0..d {
                for j in 0..n {
                    count += 1;
                    let lhs = self.elements[t].col(self.index(i, j));
                    let rhs = cocycle.matrices[t].col(self.index(i, self.point_image(t, j)));
                    if lhs != rhs {
                        violations.push(format!(
                            "action reconstruction fails for element {t} at (x{}, e{})",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
        families.push(("action reconstruction through the twist".into(), count));

        // S-linearity and the crossed homomorphism law were verified while
        // building the twist; count them as explicit families.
        families.push(("twist is S-linear".into(), order * n));
        families.push(("crossed homomorphism law".into(), order * order));

        // local twisted actions
        count = 0;
        for a in 0..order {
            for b in 0..order {
                let conj = self.twisted_conjugate(a, &self.elements[b]);
                for m in 0..n {
                    count += 1;
                    let lhs = self.local_automorphism(self.product(a, b), m);
                    let rhs = self
                        .local_automorphism(a, m)
                        .mul(&self.local_of_matrix(&conj, m));
                    if lhs != rhs {
                        violations.push(format!(
                            "twisted composition law fails at (gamma={a}, eta={b}, M={})",
                            m + 1
                        ));
                    }
                }
            }
        }
        families.push(("twisted composition of evaluations".into(), count));

        // inverse evaluations, both forms
        count = 0;
        for t in 0..order {
            let ti = self.inverse_of(t);
            for m in 0..n {
                count += 2;
                let gm = self.local_automorphism(t, m);
                let gm_inv = gm.inverse().map_err(|_| Error::IdentityViolation {
                    context: format!("evaluated automorphism (gamma={t}, M={}) is singular", m + 1),
                })?;
                let preimage = self.point_image(ti, m);
                if gm_inv != self.local_automorphism(ti, preimage) {
                    violations.push(format!(
                        "inverse evaluation (preimage form) fails at (gamma={t}, M={})",
                        m + 1
                    ));
                }
                let moved = self.point_image(t, m);
                let gmoved_inv = self
                    .local_automorphism(t, moved)
                    .inverse()
                    .map_err(|_| Error::IdentityViolation {
                        context: format!(
                            "evaluated automorphism (gamma={t}, M={}) is singular",
                            moved + 1
                        ),
                    })?;
                if self.local_automorphism(ti, m) != gmoved_inv {
                    violations.push(format!(
                        "inverse evaluation (image form) fails at (gamma={t}, M={})",
                        m + 1
                    ));
                }
            }
        }
        families.push(("inverse evaluations".into(), count));

        // conjugation covariance: (^g h)(^g M) = h(M)
        count = 0;
        for a in 0..order {
            for b in 0..order {
                let conj = self.twisted_conjugate(a, &self.elements[b]);
                for m in 0..n {
                    count += 1;
                    let lhs = self.local_of_matrix(&conj, self.point_image(a, m));
                    let rhs = self.local_automorphism(b, m);
                    if lhs != rhs {
                        violations.push(format!(
                            "conjugation covariance fails at (gamma={a}, eta={b}, M={})",
                            m + 1
                        ));
                    }
                }
            }
        }
        families.push(("conjugation covariance of evaluations".into(), count));

        // isotropy transport
        count = 0;
        for t in 0..order {
            for m in 0..n {
                count += 1;
                let check = self.isotropy_transport_check(t, m)?;
                if !check.holds {
                    violations.push(format!(
                        "isotropy transport fails at (gamma={t}, M={})",
                        m + 1
                    ));
                }
            }
        }
        families.push(("isotropy transport across points".into(), count));

        // evaluation image and reductivity per point
        count = 0;
        for m in 0..n {
            count += 1;
            let iso = self.isotropy_unchecked(m)?;
            let image = self.evaluation_image(fa, m);
            if !image.equals(&iso.space)? {
                violations.push(format!(
                    "evaluation image differs from the isotropy algebra at M={}",
                    m + 1
                ));
            }
            if iso.algebra.structure_report().kind == StructureKind::Neither {
                violations.push(format!("isotropy algebra at M={} is not reductive", m + 1));
            }
        }
        families.push(("evaluation image equals the isotropy algebra".into(), count));

        // stabilizer elements evaluate to automorphisms of g
        count = 0;
        for m in 0..n {
            let iso = self.isotropy_unchecked(m)?;
            for &t in &iso.subgroup {
                let local = self.local_automorphism(t, m);
                for p in 0..d {
                    for q in (p + 1)..d {
                        count += 1;
                        let lhs = local.apply(self.g.bracket_basis(p, q));
                        let rhs = self.g.bracket(&local.col(p), &local.col(q));
                        if lhs != rhs {
                            violations.push(format!(
                                "evaluated stabilizer element {t} at M={} is not an automorphism of g",
                                m + 1
                            ));
                        }
                    }
                }
            }
        }
        families.push((
            "evaluated stabilizer elements are automorphisms of g".into(),
            count,
        ));

        Ok(SuiteReport {
            families,
            violations,
        })
    }
}

/// The fixed-point algebra L with its induced bracket, the invariant
/// subalgebra R, and the multiplication operators of R on L.
pub struct FixedAlgebra {
    pub basis: Subspace,
    pub algebra: LieAlgebra,
    pub invariants: InvariantSubalgebra,
    /// One dim(L) x dim(L) operator per basis vector of R.
    pub r_mult: Vec<ExactMatrix>,
}

impl FixedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Ambient vector of an element given in L-coordinates.
    pub fn embed(&self, coords: &[CycScalar]) -> Vec<CycScalar> {
        let vectors = self.basis.basis_vectors();
        let mut out = vec![self.basis.field().zero(); self.basis.ambient_dim()];
        for (t, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (idx, v) in vectors[t].iter().enumerate() {
                if !v.is_zero() {
                    out[idx] = out[idx].add(&c.mul(v));
                }
            }
        }
        out
    }
}

#[derive(Clone)]
pub struct Cocycle {
    /// One operator on g (x) S per group element, indexed like the group.
    pub matrices: Vec<ExactMatrix>,
}

pub struct IsotropyAlgebra {
    pub point: usize,
    /// Indices of the stabilizer elements.
    pub subgroup: Vec<usize>,
    pub space: Subspace,
    pub algebra: LieAlgebra,
}

pub struct TransportCheck {
    pub holds: bool,
    pub lhs: Subspace,
    pub rhs: Subspace,
}

pub struct ContractionReport {
    /// All r in S with r L <= m.
    pub s_solutions: Subspace,
    /// The contraction to R.
    pub r_contraction: Subspace,
    pub quotient_simple: bool,
    /// Set when the quotient is simple (then always true, or the call fails).
    pub maximal: Option<bool>,
}

pub struct EpimorphismReport {
    pub point: Option<usize>,
    pub map: Option<ExactMatrix>,
    pub surjective: bool,
}

pub struct SuiteReport {
    pub families: Vec<(String, usize)>,
    pub violations: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total_instances(&self) -> usize {
        self.families.iter().map(|(_, c)| c).sum()
    }
}

/// Build a twisted action from generator matrices on g (x) k^n.
///
/// The group closure is computed by breadth-first multiplication up to `cap`
/// elements. Each generator must be invertible, must satisfy the automorphism
/// law on every basis pair, and must carry each ideal g (x) M_j onto another
/// one; the induced point permutations are extracted from those images.
pub fn build_action(
    g: LieAlgebra,
    sites: SiteAlgebra,
    generator_matrices: &[ExactMatrix],
    cap: usize,
) -> Result<TwistedAction> {
    let d = g.dim();
    let n = sites.points();
    let dn = d * n;
    let field = g.field().clone();
    if g.field() != sites.field() {
        return Err(Error::ConductorMismatch {
            left: g.field().conductor(),
            right: sites.field().conductor(),
        });
    }

    // provisional action used for bracket helpers during validation
    let mut proto = TwistedAction {
        g,
        sites,
        elements: Vec::new(),
        table: Vec::new(),
        inverse: Vec::new(),
        identity: 0,
        generators: Vec::new(),
        point_action: PointAction::new(vec![(0..n).collect()])?,
    };

    for (idx, m) in generator_matrices.iter().enumerate() {
        if m.rows() != dn || m.cols() != dn {
            return Err(Error::DimensionMismatch {
                context: format!("generator {idx} must be {dn}x{dn}, found {}x{}", m.rows(), m.cols()),
            });
        }
        if m.rank() != dn {
            return Err(Error::SingularGenerator { index: idx });
        }
        for p in 0..dn {
            for q in (p + 1)..dn {
                let ep = basis_vec(&field, dn, p);
                let eq = basis_vec(&field, dn, q);
                let lhs = m.apply(&proto.big_bracket(&ep, &eq));
                let rhs = proto.big_bracket(&m.col(p), &m.col(q));
                if lhs != rhs {
                    return Err(Error::NotAutomorphism { index: idx, i: p, j: q });
                }
            }
        }
    }

    // breadth-first closure
    let id = ExactMatrix::identity(&field, dn);
    let mut elements: Vec<ExactMatrix> = vec![id.clone()];
    let mut lookup: HashMap<ExactMatrix, usize> = HashMap::new();
    lookup.insert(id, 0);
    let mut frontier: std::collections::VecDeque<ExactMatrix> =
        generator_matrices.iter().cloned().collect();
    while let Some(m) = frontier.pop_front() {
        if lookup.contains_key(&m) {
            continue;
        }
        if elements.len() + 1 > cap {
            return Err(Error::GroupCapExceeded { cap });
        }
        let idx = elements.len();
        lookup.insert(m.clone(), idx);
        elements.push(m.clone());
        for t in 0..elements.len() {
            frontier.push_back(m.mul(&elements[t]));
            if t != idx {
                frontier.push_back(elements[t].mul(&m));
            }
        }
    }
    let order = elements.len();
    let mut table = vec![vec![0usize; order]; order];
    for a in 0..order {
        for b in 0..order {
            let prod = elements[a].mul(&elements[b]);
            let idx = lookup.get(&prod).ok_or(Error::GroupCapExceeded { cap })?;
            table[a][b] = *idx;
        }
    }
    let mut inverse = vec![usize::MAX; order];
    for a in 0..order {
        for b in 0..order {
            if table[a][b] == 0 {
                inverse[a] = b;
            }
        }
    }
    if inverse.iter().any(|&v| v == usize::MAX) {
        return Err(Error::GroupCapExceeded { cap });
    }
    let generators: Vec<usize> = generator_matrices
        .iter()
        .map(|m| lookup[m])
        .collect();

    // induced point permutations: the image of g (x) M_j is spanned by the
    // columns at indices (i, l), l != j; it equals g (x) M_m exactly when
    // every such column vanishes on slice m.
    let mut perms = Vec::with_capacity(order);
    for (t, e) in elements.iter().enumerate() {
        let mut perm = vec![usize::MAX; n];
        if n == 1 {
            perm[0] = 0;
        } else {
            for j in 0..n {
                let mut candidate = None;
                'slices: for m in 0..n {
                    for l in 0..n {
                        if l == j {
                            continue;
                        }
                        for i in 0..d {
                            let col = i * n + l;
                            for k in 0..d {
                                if !e.get(k * n + m, col).is_zero() {
                                    continue 'slices;
                                }
                            }
                        }
                    }
                    if candidate.is_some() {
                        return Err(Error::IncoherentPointAction { index: t });
                    }
                    candidate = Some(m);
                }
                perm[j] = candidate.ok_or(Error::IncoherentPointAction { index: t })?;
            }
            let mut seen = vec![false; n];
            for &v in &perm {
                if seen[v] {
                    return Err(Error::IncoherentPointAction { index: t });
                }
                seen[v] = true;
            }
        }
        perms.push(perm);
    }
    let point_action = PointAction::new(perms)?;
    // the permutations must respect the table
    for a in 0..order {
        for b in 0..order {
            let ab = table[a][b];
            for j in 0..n {
                if point_action.image(ab, j)
                    != point_action.image(a, point_action.image(b, j))
                {
                    return Err(Error::IncoherentPointAction { index: ab });
                }
            }
        }
    }

    proto.elements = elements;
    proto.table = table;
    proto.inverse = inverse;
    proto.identity = 0;
    proto.generators = generators;
    proto.point_action = point_action;
    Ok(proto)
}
