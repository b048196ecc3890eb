//! Shared helpers for the integration suites: a sampler for random twisted
//! actions over Q(zeta_12) and a brute-force invariant-subspace oracle that
//! decides irreducibility independently of the closure-dimension test.

#![allow(dead_code)]

use rand::prelude::*;

use twistcur::action::{build_action, TwistedAction};
use twistcur::builtin::{chevalley_involution, flip_involution, pointwise_generator};
use twistcur::lie::build_sl;
use twistcur::matrix::ExactMatrix;
use twistcur::scalar::CycField;
use twistcur::site::SiteAlgebra;
use twistcur::subspace::Subspace;

/// A pool of finite-order automorphisms of sl2 with entries in Q(zeta_12):
/// the identity, two involutions, and the torus automorphisms
/// e -> w e, f -> w^-1 f, h -> h for w a 6th, 3rd, or 2nd root of unity,
/// together with their twists by the Chevalley involution.
pub fn automorphism_pool(field: &CycField) -> Vec<ExactMatrix> {
    let omega = chevalley_involution(field);
    let flip = flip_involution(field);
    let mut pool = vec![ExactMatrix::identity(field, 3), omega.clone(), flip];
    for order in [2u64, 3, 6] {
        let w = field.root_of_unity(order).expect("divides 12");
        let winv = w.inverse().expect("root of unity");
        let mut torus = ExactMatrix::zero(field, 3, 3);
        torus.set(0, 0, w);
        torus.set(1, 1, winv);
        torus.set(2, 2, field.one());
        pool.push(omega.mul(&torus));
        pool.push(torus);
    }
    pool
}

/// One random twisted action: a random point permutation composed with
/// random finite-order automorphism blocks of sl2 over Q(zeta_12). Resampled
/// until the generated group is small enough to keep the exact identity
/// suite fast.
pub fn random_action(rng: &mut impl Rng, max_order: usize) -> TwistedAction {
    let field = CycField::new(12).expect("conductor 12");
    let pool = automorphism_pool(&field);
    loop {
        let n = *[2usize, 2, 2, 3].choose(rng).expect("nonempty");
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let blocks: Vec<ExactMatrix> = (0..n)
            .map(|_| pool.choose(rng).expect("nonempty").clone())
            .collect();
        let g = build_sl(&field, 2).expect("sl2");
        let gen = pointwise_generator(&g, &blocks, &perm);
        let sites = SiteAlgebra::new(&field, n);
        match build_action(g, sites, &[gen], 4 * max_order) {
            Ok(act) if act.order() <= max_order => return act,
            _ => continue,
        }
    }
}

/// The cyclic submodule generated by `v` under the given operators.
fn cyclic_span(matrices: &[ExactMatrix], field: &CycField, dv: usize, v: &[twistcur::scalar::CycScalar]) -> Subspace {
    let mut span = Subspace::from_vectors(field, dv, &[v.to_vec()]);
    loop {
        let mut vectors = span.basis_vectors();
        let before = span.dim();
        for b in span.basis_vectors() {
            for m in matrices {
                vectors.push(m.apply(&b));
            }
        }
        span = Subspace::from_vectors(field, dv, &vectors);
        if span.dim() == before {
            return span;
        }
    }
}

fn candidate_vectors(
    matrices: &[ExactMatrix],
    field: &CycField,
    dv: usize,
) -> Vec<Vec<twistcur::scalar::CycScalar>> {
    let mut out = Vec::new();
    for i in 0..dv {
        let mut v = vec![field.zero(); dv];
        v[i] = field.one();
        out.push(v);
    }
    let mut operators: Vec<ExactMatrix> = matrices.to_vec();
    for a in matrices {
        for b in matrices {
            operators.push(a.mul(b));
            operators.push(a.add(b));
            operators.push(a.sub(b));
        }
    }
    for op in &operators {
        // kernels of singular operators meet every submodule they annihilate
        let ker = twistcur::subspace::kernel(op);
        for v in ker.basis_vectors() {
            out.push(v);
        }
        // shifted kernels catch diagonalizable candidates with small
        // rational eigenvalues (the corpus uses integer weights)
        for ev in [-2i64, -1, 1, 2] {
            let shifted = op.sub(&ExactMatrix::identity(field, dv).scale(&field.integer(ev)));
            for v in twistcur::subspace::kernel(&shifted).basis_vectors() {
                out.push(v);
            }
        }
    }
    out
}

/// Search for a proper nonzero invariant subspace by sweeping cyclic spans
/// of candidate vectors in the module and in its dual. Finding one proves
/// reducibility; the sweep is exhaustive over the candidate family.
pub fn oracle_invariant_subspace(
    matrices: &[ExactMatrix],
    dv: usize,
) -> Option<Subspace> {
    let field = matrices
        .first()
        .map(|m| m.field().clone())
        .unwrap_or_else(|| CycField::new(1).expect("conductor 1"));
    if dv <= 1 {
        return None;
    }
    for v in candidate_vectors(matrices, &field, dv) {
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        let span = cyclic_span(matrices, &field, dv, &v);
        if span.dim() > 0 && span.dim() < dv {
            return Some(span);
        }
    }
    // dual module: x acts by -transpose; invariant subspaces there
    // annihilate invariant subspaces of the original
    let duals: Vec<ExactMatrix> = matrices.iter().map(|m| m.transpose().neg()).collect();
    for v in candidate_vectors(&duals, &field, dv) {
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        let span = cyclic_span(&duals, &field, dv, &v);
        if span.dim() > 0 && span.dim() < dv {
            let annihilator = twistcur::subspace::kernel(span.basis());
            let invariant = annihilator.basis_vectors().iter().all(|w| {
                matrices
                    .iter()
                    .all(|m| annihilator.contains_vector(&m.apply(w)))
            });
            if invariant && annihilator.dim() > 0 && annihilator.dim() < dv {
                return Some(annihilator);
            }
        }
    }
    None
}

pub fn oracle_irreducible(rep: &twistcur::lie::LieRep) -> bool {
    oracle_invariant_subspace(&rep.matrices, rep.dim_v()).is_none()
}
