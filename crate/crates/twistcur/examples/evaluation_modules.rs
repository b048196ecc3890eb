//! Building evaluation modules: pick points in distinct orbits, pick an
//! irreducible module of each isotropy algebra, tensor them together with a
//! character of L, and pull back along the joint evaluation. The result is
//! always irreducible, certified by the exact closure-dimension test.
//!
//! Run with: cargo run -p twistcur --example evaluation_modules

use twistcur::builtin::onsager_spec;
use twistcur::lie::{character_rep, sl2_irrep, LieRep};
use twistcur::rep::{build_eval_module, burnside_irreducible, Character};

fn main() -> twistcur::Result<()> {
    let built = onsager_spec(2)?.build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    println!("truncated Onsager action, m = 2: dim L = {}", fa.dim());

    // point 1 is fixed by the involution: its isotropy algebra is the line
    // fixed by the Chevalley involution
    let iso1 = act.isotropy_algebra(&fa, 0)?;
    // point 2 lies in a free orbit: its isotropy algebra is all of sl2
    let iso2 = act.isotropy_algebra(&fa, 1)?;
    println!(
        "isotropy dims: point 1 -> {}, point 2 -> {}",
        iso1.algebra.dim(),
        iso2.algebra.dim()
    );

    let chi = character_rep(&iso1.algebra, &[act.field().one()])?;
    let v2 = LieRep::new(iso2.algebra.clone(), sl2_irrep(act.field(), 2)?.matrices)?;
    let module = build_eval_module(
        act,
        &fa,
        &[0, 1],
        &[("chi(1)".into(), chi), ("V(2)".into(), v2)],
        Character::zero(&fa.algebra),
    )?;
    println!(
        "module over points {{1, 2}} with components chi(1), V(2): dim {}",
        module.dim_v()
    );

    let report = burnside_irreducible(&module.rep)?;
    println!(
        "closure dimension {} of {} => irreducible: {}",
        report.closure_dim,
        module.dim_v() * module.dim_v(),
        report.irreducible
    );

    let (_, onto) = act.joint_evaluation(&fa, &[0, 1])?;
    println!("joint evaluation L -> g^M1 + g^M2 onto: {onto}");

    // tensoring in a nonzero character of L keeps irreducibility
    let f = act.field();
    let lambda = Character::new(
        &fa.algebra,
        vec![f.integer(2), f.zero(), f.zero(), f.zero(), f.zero()],
    )?;
    let twisted = build_eval_module(
        act,
        &fa,
        &module.points,
        &[("chi(1)".into(), module.components[0].clone()), ("V(2)".into(), module.components[1].clone())],
        lambda,
    )?;
    let report = burnside_irreducible(&twisted.rep)?;
    println!(
        "after twisting by a character: still irreducible: {}",
        report.irreducible
    );
    Ok(())
}
