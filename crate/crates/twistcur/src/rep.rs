//! Evaluation modules and the classification machinery.
//!
//! A finite-dimensional simple module of the fixed-point algebra L is, up to
//! isomorphism, a pair: a character lambda of L (vanishing on [L,L]) and a
//! finitely supported invariant section psi assigning to each point an
//! isomorphism class of irreducible modules of its isotropy algebra. The
//! functions here build the evaluation module attached to such data, decide
//! irreducibility by exact associative closure, transport sections along the
//! group action, and search a catalog to classify a given module back into a
//! pair.

use std::collections::BTreeMap;

use crate::action::{FixedAlgebra, IsotropyAlgebra, TwistedAction};
use crate::error::{Error, Result};
use crate::lie::{basis_vec, LieAlgebra, LieIdeal, LieRep};
use crate::matrix::ExactMatrix;
use crate::scalar::CycScalar;
use crate::subspace::{algebra_closure, kernel, Subspace};

/// A linear functional on L vanishing on the derived subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    coords: Vec<CycScalar>,
}

impl Character {
    pub fn new(algebra: &LieAlgebra, coords: Vec<CycScalar>) -> Result<Character> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "character needs one coordinate per basis element".into(),
            });
        }
        for v in algebra.derived().basis_vectors() {
            let mut acc = algebra.field().zero();
            for (i, c) in v.iter().enumerate() {
                acc = acc.add(&c.mul(&coords[i]));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidCharacter);
            }
        }
        Ok(Character { coords })
    }

    pub fn zero(algebra: &LieAlgebra) -> Character {
        Character {
            coords: vec![algebra.field().zero(); algebra.dim()],
        }
    }

    pub fn coords(&self) -> &[CycScalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn value(&self, element: &[CycScalar]) -> CycScalar {
        let field = self.coords.first().map(|c| c.field().clone());
        let mut acc = field.expect("nonempty character").zero();
        for (i, c) in element.iter().enumerate() {
            acc = acc.add(&c.mul(&self.coords[i]));
        }
        acc
    }
}

/// [L,L] and the dual basis of the quotient: the characters supported on the
/// echelon complement of the derived subalgebra.
pub fn abelianization(fa: &FixedAlgebra) -> (Subspace, Vec<Character>) {
    let derived = fa.algebra.derived();
    let ann = if derived.dim() == 0 {
        Subspace::full(fa.algebra.field(), fa.algebra.dim())
    } else {
        kernel(derived.basis())
    };
    let characters = ann
        .basis_vectors()
        .into_iter()
        .map(|coords| Character { coords })
        .collect();
    (derived, characters)
}

/// An evaluation module: points in pairwise distinct orbits, one component
/// representation of each isotropy algebra, a character, and the assembled
/// action of L on the tensor product.
pub struct EvalModule {
    pub points: Vec<usize>,
    pub component_labels: Vec<String>,
    pub components: Vec<LieRep>,
    pub character: Character,
    pub rep: LieRep,
}

impl EvalModule {
    pub fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }
}

/// Assemble the L-action lambda(z) id + sum_i 1 (x) .. phi_i(ev_{M_i}(z)) .. (x) 1.
pub fn build_eval_module(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    points: &[usize],
    components: &[(String, LieRep)],
    character: Character,
) -> Result<EvalModule> {
    if points.len() != components.len() {
        return Err(Error::DimensionMismatch {
            context: "one component per point required".into(),
        });
    }
    // pairwise distinct orbits
    for (a, &pa) in points.iter().enumerate() {
        for &pb in points.iter().skip(a + 1) {
            if fa.invariants.orbits.same_orbit(pa, pb) {
                return Err(Error::SameOrbit { a: pa + 1, b: pb + 1 });
            }
        }
    }
    let field = act.field();
    let mut isotropies = Vec::new();
    for (&p, (_, rep)) in points.iter().zip(components) {
        let iso = act.isotropy_algebra(fa, p)?;
        if rep.algebra != iso.algebra {
            return Err(Error::WrongIsotropyAlgebra { point: p + 1 });
        }
        isotropies.push(iso);
    }
    // validate the character against L
    let character = Character::new(&fa.algebra, character.coords.clone())?;
    let dims: Vec<usize> = components.iter().map(|(_, r)| r.dim_v()).collect();
    let total: usize = dims.iter().product::<usize>().max(1);
    let mut matrices = Vec::with_capacity(fa.dim());
    for t in 0..fa.dim() {
        let mut acc = ExactMatrix::identity(field, total).scale(&character.coords[t]);
        for (i, (_, rep)) in components.iter().enumerate() {
            let ev = act.evaluation_matrix(fa, points[i]);
            let col = ev.col(t);
            let coords = isotropies[i]
                .space
                .coordinates(&col)
                .ok_or_else(|| Error::IdentityViolation {
                    context: "evaluation leaves the isotropy algebra".into(),
                })?;
            let local = rep.apply(&coords);
            // 1 (x) ... local ... (x) 1
            let pre: usize = dims[..i].iter().product::<usize>().max(1);
            let post: usize = dims[i + 1..].iter().product::<usize>().max(1);
            let placed = ExactMatrix::identity(field, pre)
                .kron(&local)
                .kron(&ExactMatrix::identity(field, post));
            acc = acc.add(&placed);
        }
        matrices.push(acc);
    }
    let rep = LieRep::new(fa.algebra.clone(), matrices)?;
    Ok(EvalModule {
        points: points.to_vec(),
        component_labels: components.iter().map(|(l, _)| l.clone()).collect(),
        components: components.iter().map(|(_, r)| r.clone()).collect(),
        character,
        rep,
    })
}

pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub closure_dim: usize,
    pub commutant_dim: usize,
}

/// Density test: the module is irreducible (over the conceptual algebraic
/// closure) exactly when the unital associative algebra generated by the
/// acting operators is the full matrix algebra. The commutant dimension is
/// reported alongside as a cheap consistency check.
pub fn burnside_irreducible(rep: &LieRep) -> Result<IrreducibilityReport> {
    let dv = rep.dim_v();
    let field = rep.algebra.field();
    let mut gens: Vec<ExactMatrix> = rep.matrices.clone();
    if gens.is_empty() {
        gens.push(ExactMatrix::identity(field, dv));
    }
    let closure = algebra_closure(&gens, true)?;
    let commutant = intertwiners(rep, rep)?;
    let irreducible = closure.dim() == dv * dv;
    if irreducible && commutant.dim() != 1 {
        return Err(Error::IdentityViolation {
            context: "full closure with a commutant larger than the scalars".into(),
        });
    }
    Ok(IrreducibilityReport {
        irreducible,
        closure_dim: closure.dim(),
        commutant_dim: commutant.dim(),
    })
}

/// All T with T a(z) = b(z) T, as a subspace of the dv_b x dv_a matrices.
pub fn intertwiners(a: &LieRep, b: &LieRep) -> Result<Subspace> {
    if a.algebra != b.algebra {
        return Err(Error::DimensionMismatch {
            context: "intertwiners need representations of the same algebra".into(),
        });
    }
    let field = a.algebra.field();
    let da = a.dim_v();
    let db = b.dim_v();
    let unknowns = da * db;
    let mut stacked: Option<ExactMatrix> = None;
    for z in 0..a.algebra.dim() {
        // column-major vectorization: vec(T a) = (a^T kron I) vec T,
        // vec(b T) = (I kron b) vec T
        let lhs = a.matrices[z]
            .transpose()
            .kron(&ExactMatrix::identity(field, db));
        let rhs = ExactMatrix::identity(field, da).kron(&b.matrices[z]);
        let block = lhs.sub(&rhs);
        stacked = Some(match stacked {
            None => block,
            Some(s) => s.vstack(&block),
        });
    }
    Ok(match stacked {
        None => Subspace::full(field, unknowns),
        Some(s) => kernel(&s),
    })
}

/// Schur test: verified-irreducible modules are isomorphic exactly when a
/// nonzero intertwiner exists. Unverified inputs are refused.
pub fn iso_test(a: &LieRep, b: &LieRep) -> Result<bool> {
    if !burnside_irreducible(a)?.irreducible || !burnside_irreducible(b)?.irreducible {
        return Err(Error::NotIrreducible);
    }
    if a.dim_v() != b.dim_v() {
        return Ok(false);
    }
    Ok(intertwiners(a, b)?.dim() > 0)
}

/// A finitely supported section of the bundle of irreducible isotropy
/// modules: off-support points implicitly carry the trivial class.
#[derive(Clone)]
pub struct InvariantSection {
    support: BTreeMap<usize, (String, LieRep)>,
}

impl InvariantSection {
    pub fn empty() -> InvariantSection {
        InvariantSection {
            support: BTreeMap::new(),
        }
    }

    /// Build from explicit per-point assignments; every assigned module must
    /// live over the isotropy algebra of its point and be irreducible.
    pub fn new(
        act: &TwistedAction,
        fa: &FixedAlgebra,
        support: BTreeMap<usize, (String, LieRep)>,
    ) -> Result<InvariantSection> {
        for (&p, (_, rep)) in &support {
            let iso = act.isotropy_algebra(fa, p)?;
            if rep.algebra != iso.algebra {
                return Err(Error::WrongIsotropyAlgebra { point: p + 1 });
            }
            if !burnside_irreducible(rep)?.irreducible {
                return Err(Error::NotIrreducible);
            }
            if rep.is_trivial() {
                return Err(Error::DimensionMismatch {
                    context: format!(
                        "point {} assigns the trivial class; leave it off the support",
                        p + 1
                    ),
                });
            }
        }
        Ok(InvariantSection { support })
    }

    pub fn support_points(&self) -> Vec<usize> {
        self.support.keys().copied().collect()
    }

    pub fn component(&self, point: usize) -> Option<&(String, LieRep)> {
        self.support.get(&point)
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Orbit representatives (minimal point of each support orbit), sorted.
    pub fn orbit_representatives(&self, fa: &FixedAlgebra) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        for &p in self.support.keys() {
            let orbit = fa.invariants.orbits.point_to_orbit[p];
            let rep = fa.invariants.orbits.representative(orbit);
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
        reps.sort_unstable();
        reps
    }
}

/// Transport a component assigned at `from` to the point `to = gamma(from)`:
/// the class of psi(from) composed with the inverse evaluated automorphism,
/// realized exactly as rho'(w) = rho(gamma^-1(from) w).
fn transport_component(
    act: &TwistedAction,
    from_iso: &IsotropyAlgebra,
    to_iso: &IsotropyAlgebra,
    gamma: usize,
    rep: &LieRep,
) -> Result<LieRep> {
    let map = act.local_automorphism(act.inverse_of(gamma), from_iso.point);
    let mut matrices = Vec::with_capacity(to_iso.algebra.dim());
    for w in to_iso.space.basis_vectors() {
        let moved = map.apply(&w);
        let coords = from_iso
            .space
            .coordinates(&moved)
            .ok_or_else(|| Error::IdentityViolation {
                context: "isotropy transport left the target algebra".into(),
            })?;
        matrices.push(rep.apply(&coords));
    }
    LieRep::new(to_iso.algebra.clone(), matrices)
}

/// The action of a group element on sections:
/// (gamma . psi)(M) = psi(gamma^-1 M) composed with (gamma(M))^-1.
pub fn section_action(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    gamma: usize,
    section: &InvariantSection,
) -> Result<InvariantSection> {
    let mut support = BTreeMap::new();
    for (&p, (label, rep)) in &section.support {
        let to = act.point_image(gamma, p);
        let from_iso = act.isotropy_algebra(fa, p)?;
        let to_iso = act.isotropy_algebra(fa, to)?;
        let transported = transport_component(act, &from_iso, &to_iso, gamma, rep)?;
        support.insert(to, (label.clone(), transported));
    }
    InvariantSection::new(act, fa, support)
}

/// Invariance under the generators (hence under the group, at the level of
/// isomorphism classes): the moved section must match pointwise up to
/// isomorphism, support included.
pub fn invariance_test(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    section: &InvariantSection,
) -> Result<bool> {
    for &g in act.generator_indices() {
        let moved = section_action(act, fa, g, section)?;
        if moved.support_points() != section.support_points() {
            return Ok(false);
        }
        for (&p, (_, transported)) in &moved.support {
            let (_, original) = section.component(p).expect("same support");
            if !iso_test(transported, original)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complete assignments at orbit representatives to a full invariant
/// section, transporting along the group. Returns Ok(None) when an
/// assignment is incompatible with its stabilizer (then no invariant section
/// extends it).
pub fn equivariant_completion(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    assignments: &BTreeMap<usize, (String, LieRep)>,
) -> Result<Option<InvariantSection>> {
    let mut support = BTreeMap::new();
    for (&rep_point, (label, rep)) in assignments {
        let iso = act.isotropy_algebra(fa, rep_point)?;
        if rep.algebra != iso.algebra {
            return Err(Error::WrongIsotropyAlgebra { point: rep_point + 1 });
        }
        if !burnside_irreducible(rep)?.irreducible {
            return Err(Error::NotIrreducible);
        }
        // stabilizer compatibility: the class must be fixed by every element
        // fixing the point
        for &mu in &iso.subgroup {
            if mu == act.identity_index() {
                continue;
            }
            let transported = transport_component(act, &iso, &iso, mu, rep)?;
            if !iso_test(&transported, rep)? {
                return Ok(None);
            }
        }
        // transport along the orbit, lowest group index first
        let orbit_idx = fa.invariants.orbits.point_to_orbit[rep_point];
        for &target in &fa.invariants.orbits.orbits[orbit_idx] {
            if target == rep_point {
                support.insert(rep_point, (label.clone(), rep.clone()));
                continue;
            }
            let gamma = (0..act.order())
                .find(|&t| act.point_image(t, rep_point) == target)
                .ok_or_else(|| Error::IdentityViolation {
                    context: "orbit member unreachable from its representative".into(),
                })?;
            let to_iso = act.isotropy_algebra(fa, target)?;
            let transported = transport_component(act, &iso, &to_iso, gamma, rep)?;
            support.insert(target, (label.clone(), transported));
        }
    }
    let section = InvariantSection::new(act, fa, support)?;
    if !invariance_test(act, fa, &section)? {
        return Err(Error::IdentityViolation {
            context: "equivariant completion produced a non-invariant section".into(),
        });
    }
    Ok(Some(section))
}

/// The evaluation module attached to an invariant section: minimal-index
/// orbit representatives, stored components, zero character.
pub fn section_module(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    section: &InvariantSection,
) -> Result<EvalModule> {
    if !invariance_test(act, fa, section)? {
        return Err(Error::SectionNotInvariant);
    }
    let reps = section.orbit_representatives(fa);
    let components: Vec<(String, LieRep)> = reps
        .iter()
        .map(|p| section.component(*p).expect("support covers orbits").clone())
        .collect();
    build_eval_module(act, fa, &reps, &components, Character::zero(&fa.algebra))
}

/// Rebuild the section module from alternate orbit representatives, with the
/// canonically transported components, and demand byte-identical matrices.
pub fn representative_independence_check(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    section: &InvariantSection,
) -> Result<bool> {
    let base = section_module(act, fa, section)?;
    let reps = section.orbit_representatives(fa);
    for (slot, &rep_point) in reps.iter().enumerate() {
        let orbit_idx = fa.invariants.orbits.point_to_orbit[rep_point];
        for &alt in &fa.invariants.orbits.orbits[orbit_idx] {
            if alt == rep_point {
                continue;
            }
            let gamma = (0..act.order())
                .find(|&t| act.point_image(t, rep_point) == alt)
                .expect("orbit reachable");
            let from_iso = act.isotropy_algebra(fa, rep_point)?;
            let to_iso = act.isotropy_algebra(fa, alt)?;
            let (label, rep) = section.component(rep_point).expect("support");
            let transported = transport_component(act, &from_iso, &to_iso, gamma, rep)?;
            let mut points = reps.clone();
            points[slot] = alt;
            let mut components: Vec<(String, LieRep)> = reps
                .iter()
                .map(|p| section.component(*p).expect("support").clone())
                .collect();
            components[slot] = (label.clone(), transported);
            let rebuilt = build_eval_module(
                act,
                fa,
                &points,
                &components,
                Character::zero(&fa.algebra),
            )?;
            if rebuilt.rep.matrices != base.rep.matrices {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A catalog of candidate component modules, matched to isotropy algebras by
/// structural equality.
#[derive(Clone, Default)]
pub struct Catalog {
    pub entries: Vec<(String, LieRep)>,
}

impl Catalog {
    pub fn push(&mut self, label: impl Into<String>, rep: LieRep) {
        self.entries.push((label.into(), rep));
    }

    pub fn entries_for(&self, algebra: &LieAlgebra) -> Vec<&(String, LieRep)> {
        self.entries
            .iter()
            .filter(|(_, r)| &r.algebra == algebra)
            .collect()
    }
}

/// The default catalog: irreducible sl(2)-modules up to the given highest
/// weight for isotropy algebras structurally equal to sl(2), and characters
/// with the given values for one-dimensional (abelian) isotropy algebras.
pub fn builtin_catalog(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    max_weight: usize,
    character_values: &[CycScalar],
) -> Result<Catalog> {
    let field = act.field();
    let sl2 = crate::lie::build_sl(field, 2)?;
    let mut catalog = Catalog::default();
    let mut seen: Vec<LieAlgebra> = Vec::new();
    for orbit in &fa.invariants.orbits.orbits {
        let iso = act.isotropy_algebra(fa, orbit[0])?;
        if seen.iter().any(|a| *a == iso.algebra) {
            continue;
        }
        if iso.algebra == sl2 {
            for m in 0..=max_weight {
                let rep = crate::lie::sl2_irrep(field, m)?;
                catalog.push(format!("V({m})"), LieRep::new(iso.algebra.clone(), rep.matrices)?);
            }
        } else if iso.algebra.dim() == 1 {
            for v in character_values {
                if v.is_zero() {
                    continue;
                }
                let rep = crate::lie::character_rep(&iso.algebra, std::slice::from_ref(v))?;
                catalog.push(format!("chi({v})"), rep);
            }
        }
        seen.push(iso.algebra.clone());
    }
    Ok(catalog)
}

pub enum Classification {
    Found(ClassifiedPair),
    NotFound,
}

pub struct ClassifiedPair {
    pub character: Character,
    pub section: InvariantSection,
    pub module: EvalModule,
    pub kernel_conditions: KernelConditions,
}

pub struct KernelConditions {
    pub character_vanishes_on_derived: bool,
    pub quotient_semisimple: bool,
    pub kernel_intersection_matches: bool,
}

impl KernelConditions {
    pub fn all_hold(&self) -> bool {
        self.character_vanishes_on_derived
            && self.quotient_semisimple
            && self.kernel_intersection_matches
    }
}

/// Kernel of a representation as a subspace of L.
pub fn representation_kernel(rep: &LieRep) -> Subspace {
    let field = rep.algebra.field();
    let dv = rep.dim_v();
    let ell = rep.algebra.dim();
    let mut stacked = ExactMatrix::zero(field, dv * dv, ell);
    for (i, m) in rep.matrices.iter().enumerate() {
        for (k, v) in m.vectorize().into_iter().enumerate() {
            stacked.set(k, i, v);
        }
    }
    kernel(&stacked)
}

/// Check the three pair conditions for (lambda, psi) against a built module.
pub fn verify_pair_conditions(
    fa: &FixedAlgebra,
    module: &EvalModule,
) -> Result<KernelConditions> {
    let character_ok = Character::new(&fa.algebra, module.character.coords.clone()).is_ok();
    // the evaluation part alone (lambda removed)
    let field = fa.algebra.field();
    let eval_matrices: Vec<ExactMatrix> = module
        .rep
        .matrices
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.sub(&ExactMatrix::identity(field, module.dim_v()).scale(&module.character.coords[i]))
        })
        .collect();
    let eval_rep = LieRep::new(fa.algebra.clone(), eval_matrices)?;
    let ker_eval = representation_kernel(&eval_rep);
    let ker_full = representation_kernel(&module.rep);
    let ker_lambda = kernel(&ExactMatrix::from_rows(
        field,
        vec![module.character.coords.to_vec()],
    ));
    let meet = ker_lambda.intersect(&ker_eval)?;
    let kernel_ok = ker_full.equals(&meet)?;
    let ideal = LieIdeal::new(&fa.algebra, ker_eval)?;
    let (quotient, _) = fa.algebra.quotient(&ideal)?;
    let quotient_ok = quotient.is_semisimple();
    Ok(KernelConditions {
        character_vanishes_on_derived: character_ok,
        quotient_semisimple: quotient_ok,
        kernel_intersection_matches: kernel_ok,
    })
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        if items.len() - i < size {
            break;
        }
        for mut rest in subsets_of_size(&items[i + 1..], size - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Search supports (subsets of orbit representatives up to the bound) and
/// catalog assignments for the unique pair (lambda, psi) whose module is
/// isomorphic to `rep` and satisfies the pair conditions. The character is
/// read off traces: for any matching pair, trace(rep(z)) = lambda(z) dim V +
/// trace(rho_psi(z)). Deterministic: smallest support in lexicographic order
/// wins, catalog order breaks ties.
pub fn classify(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    rep: &LieRep,
    catalog: &Catalog,
    support_bound: usize,
) -> Result<Classification> {
    if !burnside_irreducible(rep)?.irreducible {
        return Err(Error::NotIrreducible);
    }
    let field = act.field();
    let ell = fa.dim();
    // candidate points: orbit representatives with catalog entries
    let mut candidate_points = Vec::new();
    let mut candidate_entries: BTreeMap<usize, Vec<(String, LieRep)>> = BTreeMap::new();
    for orbit in &fa.invariants.orbits.orbits {
        let p = orbit[0];
        let iso = act.isotropy_algebra(fa, p)?;
        if iso.algebra.dim() == 0 {
            continue;
        }
        let entries: Vec<(String, LieRep)> = catalog
            .entries_for(&iso.algebra)
            .into_iter()
            .filter(|(_, r)| !r.is_trivial())
            .cloned()
            .collect();
        if !entries.is_empty() {
            candidate_points.push(p);
            candidate_entries.insert(p, entries);
        }
    }
    // the character solve: basis change sending (derived coords, complement
    // values) to functional coordinates
    let derived = fa.algebra.derived();
    let derived_rows = derived.basis_vectors();
    let pivots: Vec<usize> = derived_rows
        .iter()
        .map(|r| r.iter().position(|v| !v.is_zero()).expect("no zero rows"))
        .collect();
    let complement: Vec<usize> = (0..ell).filter(|i| !pivots.contains(i)).collect();
    let mut constraint_rows = derived_rows.clone();
    for &c in &complement {
        constraint_rows.push(basis_vec(field, ell, c));
    }
    let constraints = if ell > 0 {
        Some(ExactMatrix::from_rows(field, constraint_rows))
    } else {
        None
    };

    for size in 0..=support_bound.min(candidate_points.len()) {
        for support in subsets_of_size(&candidate_points, size) {
            // odometer over catalog entries per point
            let options: Vec<usize> = support
                .iter()
                .map(|p| candidate_entries[p].len())
                .collect();
            let mut pick = vec![0usize; size];
            loop {
                let assignments: BTreeMap<usize, (String, LieRep)> = support
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, candidate_entries[&p][pick[i]].clone()))
                    .collect();
                if let Some(result) =
                    try_candidate(act, fa, rep, &assignments, constraints.as_ref(), &complement)?
                {
                    return Ok(Classification::Found(result));
                }
                // advance the odometer
                let mut carry = true;
                for i in (0..size).rev() {
                    if !carry {
                        break;
                    }
                    pick[i] += 1;
                    if pick[i] < options[i] {
                        carry = false;
                    } else {
                        pick[i] = 0;
                    }
                }
                if carry {
                    break;
                }
            }
        }
    }
    Ok(Classification::NotFound)
}

fn try_candidate(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    rep: &LieRep,
    assignments: &BTreeMap<usize, (String, LieRep)>,
    constraints: Option<&ExactMatrix>,
    complement: &[usize],
) -> Result<Option<ClassifiedPair>> {
    let field = act.field();
    // dimension prefilter
    let dim_product: usize = assignments
        .values()
        .map(|(_, r)| r.dim_v())
        .product::<usize>()
        .max(1);
    if dim_product != rep.dim_v() {
        return Ok(None);
    }
    let Some(section) = equivariant_completion(act, fa, assignments)? else {
        return Ok(None);
    };
    let base = section_module(act, fa, &section)?;
    // character from traces on the complement of [L,L]
    let dv = field.integer(rep.dim_v() as i64);
    let mut rhs = vec![field.zero(); fa.dim()];
    for (slot, &c) in complement.iter().enumerate() {
        let diff = rep.matrices[c].trace().sub(&base.rep.matrices[c].trace());
        rhs[fa.dim() - complement.len() + slot] = diff.checked_div(&dv)?;
    }
    let lambda_coords = match constraints {
        None => Vec::new(),
        Some(m) => match m.solve(&rhs) {
            Some(x) => x,
            None => return Ok(None),
        },
    };
    let character = match Character::new(&fa.algebra, lambda_coords) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    let with_character = build_eval_module(
        act,
        fa,
        &base.points,
        &base
            .component_labels
            .iter()
            .cloned()
            .zip(base.components.iter().cloned())
            .collect::<Vec<_>>(),
        character.clone(),
    )?;
    if !burnside_irreducible(&with_character.rep)?.irreducible {
        return Ok(None);
    }
    if !iso_test(&with_character.rep, rep)? {
        return Ok(None);
    }
    let conditions = verify_pair_conditions(fa, &with_character)?;
    if !conditions.all_hold() {
        return Ok(None);
    }
    Ok(Some(ClassifiedPair {
        character,
        section,
        module: with_character,
        kernel_conditions: conditions,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{klein_spec, onsager_spec, swap_spec, trivial_spec};
    use crate::lie::sl2_irrep;
    use crate::specfile::BuiltSpec;

    fn build(doc: crate::specfile::SpecDocument) -> (BuiltSpec, FixedAlgebra) {
        let built = doc.build(None).unwrap();
        let fa = built.action.fixed_point_algebra().unwrap();
        (built, fa)
    }

    fn catalog(built: &BuiltSpec, fa: &FixedAlgebra) -> Catalog {
        let values = [
            built.field.one(),
            built.field.integer(-1),
            built.field.integer(2),
        ];
        builtin_catalog(&built.action, fa, 4, &values).unwrap()
    }

    #[test]
    fn abelianization_of_the_builtins() {
        // klein: L is a line, so characters form a 1-parameter family
        let (built, fa) = build(klein_spec());
        let _ = &built;
        let (derived, characters) = abelianization(&fa);
        assert!(derived.is_zero());
        assert_eq!(characters.len(), 1);
        // swap: L is a copy of sl2, hence perfect
        let (_, fa) = build(swap_spec());
        let (derived, characters) = abelianization(&fa);
        assert_eq!(derived.dim(), 3);
        assert_eq!(characters.len(), 0);
    }

    #[test]
    fn eval_module_of_the_natural_component_in_the_swap_example() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        assert_eq!(iso.space.dim(), 3);
        let v1 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 1).unwrap().matrices)
            .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0],
            &[("V(1)".into(), v1.clone())],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        assert_eq!(module.dim_v(), 2);
        // the action of each L-basis vector is the component applied to its
        // evaluation: matrices agree with V(1) under ev_{M1}
        let ev = act.evaluation_matrix(&fa, 0);
        for t in 0..fa.dim() {
            let coords = iso.space.coordinates(&ev.col(t)).unwrap();
            assert_eq!(module.rep.matrices[t], v1.apply(&coords));
        }
        assert!(burnside_irreducible(&module.rep).unwrap().irreducible);
    }

    #[test]
    fn empty_support_gives_the_trivial_module() {
        let (built, fa) = build(klein_spec());
        let module = build_eval_module(
            &built.action,
            &fa,
            &[],
            &[],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        assert_eq!(module.dim_v(), 1);
        assert!(module.rep.is_trivial());
        assert!(burnside_irreducible(&module.rep).unwrap().irreducible);
    }

    #[test]
    fn same_orbit_points_are_rejected() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso0 = act.isotropy_algebra(&fa, 0).unwrap();
        let iso1 = act.isotropy_algebra(&fa, 1).unwrap();
        let mk = |iso: &crate::action::IsotropyAlgebra| {
            LieRep::new(
                iso.algebra.clone(),
                sl2_irrep(act.field(), 1).unwrap().matrices,
            )
            .unwrap()
        };
        let err = build_eval_module(
            act,
            &fa,
            &[0, 1],
            &[("V(1)".into(), mk(&iso0)), ("V(1)".into(), mk(&iso1))],
            Character::zero(&fa.algebra),
        );
        assert!(matches!(err, Err(Error::SameOrbit { a: 1, b: 2 })));
    }

    #[test]
    fn two_orbit_module_in_the_onsager_truncation() {
        let (built, fa) = build(onsager_spec(2).unwrap());
        let act = &built.action;
        assert_eq!(fa.dim(), 5);
        // point 1 is fixed with a 1-dim abelian isotropy algebra; point 2
        // lies in a free orbit with the whole of sl2
        let iso1 = act.isotropy_algebra(&fa, 0).unwrap();
        assert_eq!(iso1.algebra.dim(), 1);
        let iso2 = act.isotropy_algebra(&fa, 1).unwrap();
        assert_eq!(iso2.algebra.dim(), 3);
        let chi = crate::lie::character_rep(&iso1.algebra, &[act.field().one()]).unwrap();
        let v2 = LieRep::new(iso2.algebra.clone(), sl2_irrep(act.field(), 2).unwrap().matrices)
            .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0, 1],
            &[("chi(1)".into(), chi), ("V(2)".into(), v2)],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        assert_eq!(module.dim_v(), 3);
        let irr = burnside_irreducible(&module.rep).unwrap();
        assert!(irr.irreducible);
        assert_eq!(irr.closure_dim, 9);
        let (_, onto) = act.joint_evaluation(&fa, &[0, 1]).unwrap();
        assert!(onto);
    }

    #[test]
    fn direct_sums_are_reducible() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        let v1 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 1).unwrap().matrices)
            .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0],
            &[("V(1)".into(), v1)],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        let doubled = module.rep.direct_sum(&module.rep).unwrap();
        let report = burnside_irreducible(&doubled).unwrap();
        assert!(!report.irreducible);
        assert!(report.closure_dim < 16);
        assert!(report.commutant_dim > 1);
    }

    #[test]
    fn schur_intertwiners() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        let mk = |m: usize| {
            let rep = LieRep::new(
                iso.algebra.clone(),
                sl2_irrep(act.field(), m).unwrap().matrices,
            )
            .unwrap();
            build_eval_module(
                act,
                &fa,
                &[0],
                &[(format!("V({m})"), rep)],
                Character::zero(&fa.algebra),
            )
            .unwrap()
        };
        let a = mk(1);
        let b = mk(2);
        // an irreducible module only intertwines itself through scalars
        assert_eq!(intertwiners(&a.rep, &a.rep).unwrap().dim(), 1);
        assert!(iso_test(&a.rep, &a.rep).unwrap());
        assert_eq!(intertwiners(&a.rep, &b.rep).unwrap().dim(), 0);
        assert!(!iso_test(&a.rep, &b.rep).unwrap());
    }

    #[test]
    fn iso_test_refuses_reducible_modules() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        let v1 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 1).unwrap().matrices)
            .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0],
            &[("V(1)".into(), v1)],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        let doubled = module.rep.direct_sum(&module.rep).unwrap();
        assert!(matches!(
            iso_test(&doubled, &doubled),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn identity_element_fixes_sections() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        let v1 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 1).unwrap().matrices)
            .unwrap();
        let mut assignments = BTreeMap::new();
        assignments.insert(0usize, ("V(1)".to_string(), v1));
        let section = equivariant_completion(act, &fa, &assignments)
            .unwrap()
            .unwrap();
        let moved = section_action(act, &fa, act.identity_index(), &section).unwrap();
        assert_eq!(moved.support_points(), section.support_points());
        for &p in &section.support_points() {
            let (_, a) = moved.component(p).unwrap();
            let (_, b) = section.component(p).unwrap();
            assert_eq!(a.matrices, b.matrices);
        }
    }

    #[test]
    fn completion_fills_the_swap_orbit_and_is_invariant() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        let v1 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 1).unwrap().matrices)
            .unwrap();
        let mut assignments = BTreeMap::new();
        assignments.insert(0usize, ("V(1)".to_string(), v1));
        let section = equivariant_completion(act, &fa, &assignments)
            .unwrap()
            .unwrap();
        assert_eq!(section.support_points(), vec![0, 1]);
        assert!(invariance_test(act, &fa, &section).unwrap());
    }

    #[test]
    fn klein_character_section_is_invariant() {
        let (built, fa) = build(klein_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        assert_eq!(iso.algebra.dim(), 1);
        let chi = crate::lie::character_rep(&iso.algebra, &[act.field().integer(2)]).unwrap();
        let mut assignments = BTreeMap::new();
        assignments.insert(0usize, ("chi(2)".to_string(), chi));
        let section = equivariant_completion(act, &fa, &assignments)
            .unwrap()
            .unwrap();
        assert_eq!(section.support_points(), vec![0, 1]);
        assert!(invariance_test(act, &fa, &section).unwrap());
        // the transported value at point 2 is the negated character
        let (_, at_two) = section.component(1).unwrap();
        assert_eq!(
            at_two.matrices[0].get(0, 0),
            &act.field().integer(-2)
        );
    }

    #[test]
    fn section_modules_rebuild_identically_from_any_representative() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        for m in 1..=2usize {
            let rep = LieRep::new(
                iso.algebra.clone(),
                sl2_irrep(act.field(), m).unwrap().matrices,
            )
            .unwrap();
            let mut assignments = BTreeMap::new();
            assignments.insert(0usize, (format!("V({m})"), rep));
            let section = equivariant_completion(act, &fa, &assignments)
                .unwrap()
                .unwrap();
            assert!(representative_independence_check(act, &fa, &section).unwrap());
        }
    }

    #[test]
    fn empty_section_gives_the_trivial_module() {
        let (built, fa) = build(klein_spec());
        let module = section_module(&built.action, &fa, &InvariantSection::empty()).unwrap();
        assert_eq!(module.dim_v(), 1);
        assert!(module.rep.is_trivial());
    }

    #[test]
    fn different_supports_do_not_intertwine() {
        // two free orbits in the m = 3 truncation carry V(1) sections whose
        // modules have equal dimension but no nonzero intertwiner
        let (built, fa) = build(onsager_spec(3).unwrap());
        let act = &built.action;
        // orbits of points: {1}, {2,6}, {3,5}, {4}
        let isoa = act.isotropy_algebra(&fa, 1).unwrap();
        let isob = act.isotropy_algebra(&fa, 2).unwrap();
        assert_eq!(isoa.algebra.dim(), 3);
        assert_eq!(isob.algebra.dim(), 3);
        let mk = |iso: &crate::action::IsotropyAlgebra, p: usize| {
            let rep = LieRep::new(
                iso.algebra.clone(),
                sl2_irrep(act.field(), 1).unwrap().matrices,
            )
            .unwrap();
            let mut assignments = BTreeMap::new();
            assignments.insert(p, ("V(1)".to_string(), rep));
            equivariant_completion(act, &fa, &assignments)
                .unwrap()
                .unwrap()
        };
        let sa = mk(&isoa, 1);
        let sb = mk(&isob, 2);
        let ma = section_module(act, &fa, &sa).unwrap();
        let mb = section_module(act, &fa, &sb).unwrap();
        assert_eq!(ma.dim_v(), mb.dim_v());
        assert_eq!(intertwiners(&ma.rep, &mb.rep).unwrap().dim(), 0);
        assert!(!iso_test(&ma.rep, &mb.rep).unwrap());
    }

    #[test]
    fn classify_the_klein_line_action() {
        let (built, fa) = build(klein_spec());
        let act = &built.action;
        let f = act.field();
        // L acts on a 1-dim space by the scalar 5
        let mut m = crate::matrix::ExactMatrix::zero(f, 1, 1);
        m.set(0, 0, f.integer(5));
        let rep = LieRep::new(fa.algebra.clone(), vec![m]).unwrap();
        let cat = catalog(&built, &fa);
        match classify(act, &fa, &rep, &cat, 2).unwrap() {
            Classification::Found(pair) => {
                assert!(pair.section.is_empty());
                assert_eq!(pair.character.coords()[0], f.integer(5));
                assert!(pair.kernel_conditions.all_hold());
            }
            Classification::NotFound => panic!("klein line action must classify"),
        }
    }

    #[test]
    fn classify_the_swap_pullback_of_the_three_dimensional_module() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        let v2 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 2).unwrap().matrices)
            .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0],
            &[("V(2)".into(), v2)],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        let cat = catalog(&built, &fa);
        match classify(act, &fa, &module.rep, &cat, 2).unwrap() {
            Classification::Found(pair) => {
                assert!(pair.character.is_zero());
                assert_eq!(pair.section.support_points(), vec![0, 1]);
                let (label, _) = pair.section.component(0).unwrap();
                assert_eq!(label, "V(2)");
                assert!(pair.kernel_conditions.all_hold());
            }
            Classification::NotFound => panic!("swap pullback must classify"),
        }
    }

    #[test]
    fn classify_the_trivial_module() {
        let (built, fa) = build(trivial_spec(2));
        let act = &built.action;
        let module = build_eval_module(act, &fa, &[], &[], Character::zero(&fa.algebra)).unwrap();
        let cat = catalog(&built, &fa);
        match classify(act, &fa, &module.rep, &cat, 1).unwrap() {
            Classification::Found(pair) => {
                assert!(pair.section.is_empty());
                assert!(pair.character.is_zero());
            }
            Classification::NotFound => panic!("trivial module must classify"),
        }
    }

    #[test]
    fn classify_refuses_reducible_input() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let module = build_eval_module(act, &fa, &[], &[], Character::zero(&fa.algebra)).unwrap();
        let doubled = module.rep.direct_sum(&module.rep).unwrap();
        let cat = catalog(&built, &fa);
        assert!(matches!(
            classify(act, &fa, &doubled, &cat, 1),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn the_zero_fixed_algebra_is_legal_everywhere() {
        // two involutions on a single point with trivially intersecting
        // fixed spaces: L = 0
        use crate::builtin::{chevalley_involution, flip_involution, uniform_generator};
        let f = crate::scalar::CycField::new(1).unwrap();
        let g = crate::lie::build_sl(&f, 2).unwrap();
        let sites = crate::site::SiteAlgebra::new(&f, 1);
        let g1 = uniform_generator(&g, &chevalley_involution(&f), &[0]);
        let g2 = uniform_generator(&g, &flip_involution(&f), &[0]);
        let act = crate::action::build_action(g, sites, &[g1, g2], 100).unwrap();
        let fa = act.fixed_point_algebra().unwrap();
        assert_eq!(fa.dim(), 0);
        let (derived, characters) = abelianization(&fa);
        assert!(derived.is_zero());
        assert!(characters.is_empty());
        let module =
            build_eval_module(&act, &fa, &[], &[], Character::zero(&fa.algebra)).unwrap();
        assert_eq!(module.dim_v(), 1);
        assert!(burnside_irreducible(&module.rep).unwrap().irreducible);
        let catalog = builtin_catalog(&act, &fa, 2, &[]).unwrap();
        match classify(&act, &fa, &module.rep, &catalog, 1).unwrap() {
            Classification::Found(pair) => {
                assert!(pair.section.is_empty());
            }
            Classification::NotFound => panic!("the trivial module over L = 0 must classify"),
        }
    }

    #[test]
    fn classify_reports_catalog_exhaustion_honestly() {
        let (built, fa) = build(swap_spec());
        let act = &built.action;
        let iso = act.isotropy_algebra(&fa, 0).unwrap();
        // build with V(4) but search a catalog capped at weight 2
        let v4 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 4).unwrap().matrices)
            .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0],
            &[("V(4)".into(), v4)],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        let small = builtin_catalog(act, &fa, 2, &[]).unwrap();
        assert!(matches!(
            classify(act, &fa, &module.rep, &small, 2).unwrap(),
            Classification::NotFound
        ));
    }
}
