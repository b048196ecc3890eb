//! The Klein four-group acting on sl2 over three points: the fixed-point
//! algebra collapses to a line, and a maximal ideal J of the invariant
//! subalgebra satisfies J.L = L, so no maximal ideal of L contracts to it.
//!
//! Run with: cargo run -p twistcur --example klein_counterexample

use twistcur::builtin::klein_spec;
use twistcur::commands::fmt_ambient;
use twistcur::subspace::Subspace;

fn main() -> twistcur::Result<()> {
    let built = klein_spec().build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;

    println!("group order: {}", act.order());
    println!("dim L = {}", fa.dim());
    for v in fa.basis.basis_vectors() {
        println!("  L basis: {}", fmt_ambient(act, &v));
    }

    println!("dim R = {} (one coordinate per orbit)", fa.invariants.dim());

    // J = {(a, a, 0)}: the maximal ideal of R at the fixed point
    let f = act.field();
    let j = Subspace::from_vectors(f, 3, &[vec![f.one(), f.one(), f.zero()]]);
    println!(
        "J = span{{(1,1,0)}} is a maximal ideal of R: {}",
        fa.invariants.is_maximal_ideal(&j)?
    );
    println!("J.L = L: {}", act.ideal_covers_fixed(&fa, &j)?);
    println!("hence no maximal ideal of L contracts onto J");

    // and indeed no point of the space produces one: every evaluation kernel
    // has a non-simple quotient here
    for point in 0..act.points() {
        let (_, simple) = act.point_kernel_ideal(&fa, point)?;
        println!(
            "point {}: evaluation kernel has simple quotient: {}",
            point + 1,
            simple
        );
    }
    Ok(())
}
