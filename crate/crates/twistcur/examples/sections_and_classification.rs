//! The classifying data of a simple module: an invariant section psi
//! assigning isotropy-module classes to points, plus a character lambda.
//! Sections transport along the group, their modules do not depend on the
//! chosen orbit representatives, and the classifier recovers the pair.
//!
//! Run with: cargo run -p twistcur --example sections_and_classification

use std::collections::BTreeMap;

use twistcur::builtin::swap_spec;
use twistcur::lie::{sl2_irrep, LieRep};
use twistcur::rep::{
    builtin_catalog, classify, equivariant_completion, invariance_test,
    representative_independence_check, section_module, Classification,
};

fn main() -> twistcur::Result<()> {
    let built = swap_spec().build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;

    // assign V(2) at point 1 and complete equivariantly over the orbit {1,2}
    let iso = act.isotropy_algebra(&fa, 0)?;
    let v2 = LieRep::new(iso.algebra.clone(), sl2_irrep(act.field(), 2)?.matrices)?;
    let mut assignments = BTreeMap::new();
    assignments.insert(0usize, ("V(2)".to_string(), v2));
    let section = equivariant_completion(act, &fa, &assignments)?
        .expect("assignment is stabilizer-compatible");
    println!(
        "completed section support: {:?} (1-based: {:?})",
        section.support_points(),
        section
            .support_points()
            .iter()
            .map(|p| p + 1)
            .collect::<Vec<_>>()
    );
    println!("invariant: {}", invariance_test(act, &fa, &section)?);

    // its module, rebuilt from the other representative, is byte-identical
    let module = section_module(act, &fa, &section)?;
    println!("module dimension: {}", module.dim_v());
    println!(
        "representative independence (exact matrix equality): {}",
        representative_independence_check(act, &fa, &section)?
    );

    // classify the module back into a pair (lambda, psi)
    let values = [act.field().one(), act.field().integer(-1)];
    let catalog = builtin_catalog(act, &fa, 4, &values)?;
    match classify(act, &fa, &module.rep, &catalog, 2)? {
        Classification::Found(pair) => {
            println!(
                "classified: lambda = 0: {}, support {:?}, component {}",
                pair.character.is_zero(),
                pair.section.support_points(),
                pair.section.component(0).map(|(l, _)| l.as_str()).unwrap_or("-")
            );
            println!(
                "pair conditions (character, semisimple quotient, kernels): {}",
                pair.kernel_conditions.all_hold()
            );
        }
        Classification::NotFound => println!("not found in catalog"),
    }
    Ok(())
}
