//! Split coordinate algebras S = k^n: functions on a finite point set.
//!
//! Elements are coordinate vectors with componentwise product; the maximal
//! ideals are M_j = {s : s_j = 0}, one per point. A finite group acting on
//! the points induces the invariant subalgebra R = S^Gamma spanned by orbit
//! indicator functions, and every ideal-theoretic statement (lying over,
//! generated ideals, radicals) becomes an exact coordinate computation.

use crate::error::{Error, Result};
use crate::scalar::{CycField, CycScalar};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteAlgebra {
    field: CycField,
    n: usize,
}

impl SiteAlgebra {
    pub fn new(field: &CycField, n: usize) -> SiteAlgebra {
        SiteAlgebra {
            field: field.clone(),
            n,
        }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> Vec<CycScalar> {
        vec![self.field.one(); self.n]
    }

    /// The idempotent supported at `point` (0-based).
    pub fn idempotent(&self, point: usize) -> Vec<CycScalar> {
        let mut v = vec![self.field.zero(); self.n];
        v[point] = self.field.one();
        v
    }

    pub fn product(&self, a: &[CycScalar], b: &[CycScalar]) -> Vec<CycScalar> {
        a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
    }

    /// Evaluation s(M_j): just the j-th coordinate.
    pub fn evaluate(&self, s: &[CycScalar], point: usize) -> CycScalar {
        s[point].clone()
    }
}

/// The action of a finite group on the point set, one permutation per group
/// element (0-based points; element order matches the owning group's table).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAction {
    perms: Vec<Vec<usize>>,
}

impl PointAction {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<PointAction> {
        let n = perms.first().map(|p| p.len()).unwrap_or(0);
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    context: format!("permutation {i} has wrong length"),
                });
            }
            let mut seen = vec![false; n];
            for &v in p {
                if v >= n || seen[v] {
                    return Err(Error::IncoherentPointAction { index: i });
                }
                seen[v] = true;
            }
        }
        Ok(PointAction { perms })
    }

    pub fn group_order(&self) -> usize {
        self.perms.len()
    }

    pub fn points(&self) -> usize {
        self.perms.first().map(|p| p.len()).unwrap_or(0)
    }

    pub fn image(&self, element: usize, point: usize) -> usize {
        self.perms[element][point]
    }

    pub fn perm(&self, element: usize) -> &[usize] {
        &self.perms[element]
    }
}

/// Orbits sorted by minimal element; points carry their orbit index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub orbits: Vec<Vec<usize>>,
    pub point_to_orbit: Vec<usize>,
}

impl Orbits {
    pub fn representative(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.point_to_orbit[a] == self.point_to_orbit[b]
    }

    pub fn count(&self) -> usize {
        self.orbits.len()
    }
}

pub fn orbits(action: &PointAction) -> Orbits {
    let n = action.points();
    let mut point_to_orbit = vec![usize::MAX; n];
    let mut orbit_list = Vec::new();
    for start in 0..n {
        if point_to_orbit[start] != usize::MAX {
            continue;
        }
        let idx = orbit_list.len();
        let mut members: Vec<usize> = action
            .perms
            .iter()
            .map(|p| p[start])
            .collect();
        members.push(start);
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            point_to_orbit[m] = idx;
        }
        orbit_list.push(members);
    }
    Orbits {
        orbits: orbit_list,
        point_to_orbit,
    }
}

/// The orbit of a point and the indices of the group elements fixing it.
pub fn orbit_stabilizer(action: &PointAction, point: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if point >= action.points() {
        return Err(Error::BadPoint {
            point: point + 1,
            count: action.points(),
        });
    }
    let mut orbit: Vec<usize> = action.perms.iter().map(|p| p[point]).collect();
    orbit.sort_unstable();
    orbit.dedup();
    let stabilizer: Vec<usize> = (0..action.group_order())
        .filter(|&g| action.image(g, point) == point)
        .collect();
    Ok((orbit, stabilizer))
}

/// R = S^Gamma, spanned by orbit indicator functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubalgebra {
    pub site: SiteAlgebra,
    pub orbits: Orbits,
    pub basis: Subspace,
}

pub fn invariants(site: &SiteAlgebra, action: &PointAction) -> InvariantSubalgebra {
    let orbs = orbits(action);
    let field = site.field();
    let vectors: Vec<Vec<CycScalar>> = orbs
        .orbits
        .iter()
        .map(|orbit| {
            let mut v = vec![field.zero(); site.points()];
            for &p in orbit {
                v[p] = field.one();
            }
            v
        })
        .collect();
    let basis = Subspace::from_vectors(field, site.points(), &vectors);
    InvariantSubalgebra {
        site: site.clone(),
        orbits: orbs,
        basis,
    }
}

impl InvariantSubalgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Indicator of the orbit through `point`.
    pub fn orbit_indicator(&self, point: usize) -> Vec<CycScalar> {
        let field = self.site.field();
        let orbit = &self.orbits.orbits[self.orbits.point_to_orbit[point]];
        let mut v = vec![field.zero(); self.site.points()];
        for &p in orbit {
            v[p] = field.one();
        }
        v
    }

    /// The maximal ideal of R attached to the orbit of `point`: invariants
    /// vanishing on that orbit.
    pub fn maximal_ideal_at(&self, point: usize) -> Subspace {
        let field = self.site.field();
        let vectors: Vec<Vec<CycScalar>> = self
            .orbits
            .orbits
            .iter()
            .enumerate()
            .filter(|(idx, _)| *idx != self.orbits.point_to_orbit[point])
            .map(|(_, orbit)| {
                let mut v = vec![field.zero(); self.site.points()];
                for &p in orbit {
                    v[p] = field.one();
                }
                v
            })
            .collect();
        Subspace::from_vectors(field, self.site.points(), &vectors)
    }

    /// An ideal of R: a subspace contained in R and stable under
    /// multiplication by R.
    pub fn is_ideal(&self, space: &Subspace) -> Result<bool> {
        if space.ambient_dim() != self.site.points() {
            return Err(Error::AmbientMismatch {
                left: space.ambient_dim(),
                right: self.site.points(),
            });
        }
        if !self.basis.contains(space)? {
            return Ok(false);
        }
        for r in self.basis.basis_vectors() {
            for v in space.basis_vectors() {
                let prod = self.site.product(&r, &v);
                if !space.contains_vector(&prod) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Maximal ideals of R correspond to orbits; a subspace is one exactly
    /// when it is an ideal of codimension one in R.
    pub fn is_maximal_ideal(&self, space: &Subspace) -> Result<bool> {
        Ok(self.is_ideal(space)? && space.dim() + 1 == self.dim())
    }
}

/// Everything the lying-over geometry of an ideal I of R gives in the split
/// case: the points whose maximal ideal contracts to I, the generated ideal
/// IS, and its radical (the intersection of those point ideals).
#[derive(Clone, Debug)]
pub struct IdealOverReport {
    /// 0-based point indices lying over the ideal.
    pub points: Vec<usize>,
    pub generated: Subspace,
    pub radical: Subspace,
}

pub fn ideal_over(
    ideal: &Subspace,
    site: &SiteAlgebra,
    inv: &InvariantSubalgebra,
) -> Result<IdealOverReport> {
    if !inv.is_ideal(ideal)? {
        return Err(Error::NotAnIdeal {
            context: "input is not an ideal of the invariant subalgebra".into(),
        });
    }
    let field = site.field();
    let n = site.points();
    // support of the ideal: coordinates where some element is nonzero
    let mut in_support = vec![false; n];
    for v in ideal.basis_vectors() {
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                in_support[j] = true;
            }
        }
    }
    // points lying over: where every element of the ideal vanishes
    let points: Vec<usize> = (0..n).filter(|&j| !in_support[j]).collect();
    // IS = span of the idempotents on the support (every ideal of k^n is a
    // coordinate subspace), and such ideals are radical, so the radical is
    // the same coordinate subspace = intersection of the point ideals.
    let vectors: Vec<Vec<CycScalar>> = (0..n)
        .filter(|&j| in_support[j])
        .map(|j| site.idempotent(j))
        .collect();
    let generated = Subspace::from_vectors(field, n, &vectors);
    let radical = generated.clone();
    Ok(IdealOverReport {
        points,
        generated,
        radical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CycField {
        CycField::new(1).unwrap()
    }

    fn klein_point_action() -> PointAction {
        // elements (0,0), (1,0), (0,1), (1,1); the swap acts for odd a+b
        let id = vec![0, 1, 2];
        let swap = vec![1, 0, 2];
        PointAction::new(vec![id.clone(), swap.clone(), swap, id]).unwrap()
    }

    #[test]
    fn klein_invariants() {
        let f = q();
        let site = SiteAlgebra::new(&f, 3);
        let act = klein_point_action();
        let inv = invariants(&site, &act);
        assert_eq!(inv.dim(), 2);
        // R = {(a,a,b)}
        assert!(inv.basis.contains_vector(&[f.one(), f.one(), f.zero()]));
        assert!(inv.basis.contains_vector(&[f.zero(), f.zero(), f.one()]));
        assert!(!inv.basis.contains_vector(&[f.one(), f.zero(), f.zero()]));
    }

    #[test]
    fn trivial_action_invariants_are_everything() {
        let f = q();
        let site = SiteAlgebra::new(&f, 4);
        let act = PointAction::new(vec![vec![0, 1, 2, 3]]).unwrap();
        let inv = invariants(&site, &act);
        assert_eq!(inv.dim(), 4);
    }

    #[test]
    fn inversion_action_on_fourth_roots() {
        // t -> 1/t on the 4th roots of unity: permutation (1)(3)(2 4)
        let f = q();
        let site = SiteAlgebra::new(&f, 4);
        let act = PointAction::new(vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap();
        let inv = invariants(&site, &act);
        assert_eq!(inv.dim(), 3);
    }

    #[test]
    fn orbit_stabilizer_accounting() {
        let act = klein_point_action();
        let (orbit, stab) = orbit_stabilizer(&act, 0).unwrap();
        assert_eq!(orbit, vec![0, 1]);
        assert_eq!(stab, vec![0, 3]);
        assert_eq!(orbit.len() * stab.len(), act.group_order());

        let (orbit3, stab3) = orbit_stabilizer(&act, 2).unwrap();
        assert_eq!(orbit3, vec![2]);
        assert_eq!(stab3.len(), 4);

        assert!(orbit_stabilizer(&act, 7).is_err());
    }

    #[test]
    fn lying_over_in_the_klein_example() {
        // J = {(a,a,0)} is the maximal ideal of R at the fixed point; the
        // point lying over it is point 3, JS = {(s1,s2,0)}, and JS is radical.
        let f = q();
        let site = SiteAlgebra::new(&f, 3);
        let inv = invariants(&site, &klein_point_action());
        let j = Subspace::from_vectors(&f, 3, &[vec![f.one(), f.one(), f.zero()]]);
        let report = ideal_over(&j, &site, &inv).unwrap();
        assert_eq!(report.points, vec![2]);
        let js = Subspace::from_vectors(
            &f,
            3,
            &[vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()]],
        );
        assert_eq!(report.generated, js);
        assert_eq!(report.radical, js);
        // the points over a maximal ideal form one orbit
        assert_eq!(report.points, inv.orbits.orbits[1]);
    }

    #[test]
    fn zero_ideal_in_a_field_has_all_points_over_it() {
        let f = q();
        let site = SiteAlgebra::new(&f, 2);
        // full swap: R = k
        let act = PointAction::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let inv = invariants(&site, &act);
        assert_eq!(inv.dim(), 1);
        let zero = Subspace::zero(&f, 2);
        let report = ideal_over(&zero, &site, &inv).unwrap();
        assert_eq!(report.points, vec![0, 1]);
        assert!(report.generated.is_zero());
    }

    #[test]
    fn trivial_action_point_ideals() {
        let f = q();
        let site = SiteAlgebra::new(&f, 3);
        let act = PointAction::new(vec![vec![0, 1, 2]]).unwrap();
        let inv = invariants(&site, &act);
        let mj = inv.maximal_ideal_at(1);
        let report = ideal_over(&mj, &site, &inv).unwrap();
        assert_eq!(report.points, vec![1]);
    }

    #[test]
    fn distinct_maximal_ideals_are_comaximal() {
        let f = q();
        let site = SiteAlgebra::new(&f, 4);
        let act = PointAction::new(vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap();
        let inv = invariants(&site, &act);
        let i1 = inv.maximal_ideal_at(0);
        let i2 = inv.maximal_ideal_at(1);
        assert!(inv.is_maximal_ideal(&i1).unwrap());
        assert!(inv.is_maximal_ideal(&i2).unwrap());
        let sum = i1.sum(&i2).unwrap();
        assert_eq!(sum, inv.basis);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let f = q();
        let site = SiteAlgebra::new(&f, 3);
        let inv = invariants(&site, &klein_point_action());
        // not contained in R
        let bad = Subspace::from_vectors(&f, 3, &[vec![f.one(), f.zero(), f.zero()]]);
        assert!(matches!(
            ideal_over(&bad, &site, &inv),
            Err(Error::NotAnIdeal { .. })
        ));
    }
}
