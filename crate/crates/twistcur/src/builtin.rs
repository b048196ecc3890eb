//! Built-in example actions.
//!
//! * `klein`: sl2 over three points with the Klein four-group acting through
//!   two involutions of sl2 coupled to the swap of the first two points. The
//!   fixed algebra is the line spanned by h (x) (1,-1,0), and the maximal
//!   ideal J = {(a,a,0)} of R satisfies J.L = L, so the contraction map
//!   misses it.
//! * `swap`: sl2 over two points with the Chevalley involution coupled to
//!   the point swap; the fixed algebra is a copy of sl2.
//! * `onsager --m`: sl2 over the 2m-th roots of unity with the Chevalley
//!   involution coupled to t -> 1/t; a finite truncation of the Onsager
//!   presentation with dim L = 3m - 1.

use crate::error::Result;
use crate::lie::LieAlgebra;
use crate::matrix::ExactMatrix;
use crate::scalar::CycField;
use crate::specfile::{FieldSpec, GroupSpec, LieAlgebraSpec, SpecDocument};

/// Generator of the form x_i (x) e_j -> B_j(x_i) (x) e_{perm(j)} with one
/// d x d block per point. Any choice of automorphism blocks yields a Lie
/// automorphism of g (x) k^n.
pub fn pointwise_generator(
    g: &LieAlgebra,
    blocks: &[ExactMatrix],
    perm: &[usize],
) -> ExactMatrix {
    let d = g.dim();
    let n = perm.len();
    assert_eq!(blocks.len(), n);
    let field = g.field();
    let mut m = ExactMatrix::zero(field, d * n, d * n);
    for j in 0..n {
        let b = &blocks[j];
        for i in 0..d {
            for k in 0..d {
                let v = b.get(k, i);
                if !v.is_zero() {
                    m.set(k * n + perm[j], i * n + j, v.clone());
                }
            }
        }
    }
    m
}

/// Generator with the same block at every point.
pub fn uniform_generator(g: &LieAlgebra, block: &ExactMatrix, perm: &[usize]) -> ExactMatrix {
    let blocks: Vec<ExactMatrix> = perm.iter().map(|_| block.clone()).collect();
    pointwise_generator(g, &blocks, perm)
}

/// sigma_1: e -> -f, f -> -e, h -> -h (the Chevalley involution of sl2).
pub fn chevalley_involution(field: &CycField) -> ExactMatrix {
    ExactMatrix::parse(
        field,
        &[&["0", "-1", "0"], &["-1", "0", "0"], &["0", "0", "-1"]],
    )
    .expect("constant matrix")
}

/// sigma_2: e -> f, f -> e, h -> -h.
pub fn flip_involution(field: &CycField) -> ExactMatrix {
    ExactMatrix::parse(
        field,
        &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "-1"]],
    )
    .expect("constant matrix")
}

use crate::specfile::matrix_strings as matrix_to_strings;

pub fn klein_spec() -> SpecDocument {
    let field = CycField::new(1).expect("conductor 1");
    let g = crate::lie::build_sl(&field, 2).expect("sl2");
    let perm = vec![1usize, 0, 2];
    let g1 = uniform_generator(&g, &chevalley_involution(&field), &perm);
    let g2 = uniform_generator(&g, &flip_involution(&field), &perm);
    SpecDocument {
        name: Some("klein".into()),
        field: FieldSpec { cyclotomic_order: Some(1) },
        lie_algebra: LieAlgebraSpec::Sl { rank: 2 },
        points: 3,
        group: GroupSpec {
            generators: vec![matrix_to_strings(&g1), matrix_to_strings(&g2)],
            cap: None,
        },
        catalog: None,
        commands: None,
        point_labels: None,
    }
}

pub fn swap_spec() -> SpecDocument {
    let field = CycField::new(1).expect("conductor 1");
    let g = crate::lie::build_sl(&field, 2).expect("sl2");
    let gen = uniform_generator(&g, &chevalley_involution(&field), &[1, 0]);
    SpecDocument {
        name: Some("swap".into()),
        field: FieldSpec { cyclotomic_order: Some(1) },
        lie_algebra: LieAlgebraSpec::Sl { rank: 2 },
        points: 2,
        group: GroupSpec {
            generators: vec![matrix_to_strings(&gen)],
            cap: None,
        },
        catalog: None,
        commands: None,
        point_labels: None,
    }
}

/// Truncation at the 2m-th roots of unity; point j+1 carries the root z^j
/// and the involution couples the Chevalley involution with t -> 1/t.
pub fn onsager_spec(m: usize) -> Result<SpecDocument> {
    let m = m.max(1);
    let n = 2 * m;
    let field = CycField::new(n as u64)?;
    let g = crate::lie::build_sl(&field, 2)?;
    let perm: Vec<usize> = (0..n).map(|j| if j == 0 { 0 } else { n - j }).collect();
    let gen = uniform_generator(&g, &chevalley_involution(&field), &perm);
    let labels: Vec<String> = (0..n)
        .map(|j| format!("t=z^{j}"))
        .collect();
    Ok(SpecDocument {
        name: Some(format!("onsager m={m}")),
        field: FieldSpec {
            cyclotomic_order: Some(n as u64),
        },
        lie_algebra: LieAlgebraSpec::Sl { rank: 2 },
        points: n,
        group: GroupSpec {
            generators: vec![matrix_to_strings(&gen)],
            cap: None,
        },
        catalog: None,
        commands: None,
        point_labels: Some(labels),
    })
}

/// The trivial action of the one-element group on sl2 over n points.
pub fn trivial_spec(n: usize) -> SpecDocument {
    let field = CycField::new(1).expect("conductor 1");
    let id = ExactMatrix::identity(&field, 3 * n);
    SpecDocument {
        name: Some(format!("trivial n={n}")),
        field: FieldSpec { cyclotomic_order: Some(1) },
        lie_algebra: LieAlgebraSpec::Sl { rank: 2 },
        points: n,
        group: GroupSpec {
            generators: vec![matrix_to_strings(&id)],
            cap: None,
        },
        catalog: None,
        commands: None,
        point_labels: None,
    }
}

/// Look up a builtin by name; `m` only applies to the truncated Onsager
/// family (default 2).
pub fn builtin_spec(name: &str, m: Option<usize>) -> Result<SpecDocument> {
    match name {
        "klein" => Ok(klein_spec()),
        "swap" => Ok(swap_spec()),
        "onsager" => onsager_spec(m.unwrap_or(2)),
        other => Err(crate::error::Error::Usage(format!(
            "unknown builtin example {other:?}; available: klein, swap, onsager"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs_build() {
        for doc in [klein_spec(), swap_spec(), onsager_spec(2).unwrap(), trivial_spec(3)] {
            let built = doc.build(None).unwrap();
            assert!(built.action.order() >= 1);
        }
        assert!(builtin_spec("nope", None).is_err());
    }

    #[test]
    fn klein_group_has_order_four() {
        let built = klein_spec().build(None).unwrap();
        assert_eq!(built.action.order(), 4);
    }

    #[test]
    fn swap_group_has_order_two() {
        let built = swap_spec().build(None).unwrap();
        assert_eq!(built.action.order(), 2);
    }

    #[test]
    fn onsager_permutation_matches_inversion() {
        let built = onsager_spec(2).unwrap().build(None).unwrap();
        let act = built.action;
        assert_eq!(act.order(), 2);
        let gen = act.generator_indices()[0];
        // 0-based (1)(3)(2 4): fixes roots 1 and -1, swaps z and z^3
        assert_eq!(act.point_action().perm(gen), &[0, 3, 2, 1]);
    }
}
