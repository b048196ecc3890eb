//! Fixed-point algebras of the builtin actions: dimensions, bases, and the
//! Reynolds projector cross-check.
//!
//! Run with: cargo run -p twistcur --example fixed_point_algebras

use twistcur::builtin::{onsager_spec, swap_spec, trivial_spec};
use twistcur::commands::fmt_ambient;
use twistcur::subspace::Subspace;

fn main() -> twistcur::Result<()> {
    let built = swap_spec().build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    println!("swap example: dim L = {}", fa.dim());
    for v in fa.basis.basis_vectors() {
        println!("  {}", fmt_ambient(act, &v));
    }
    println!(
        "  L is semisimple: {}",
        fa.algebra.is_semisimple()
    );

    // averaging over the group projects onto L
    let reynolds = act.reynolds();
    let image = Subspace::row_space(&reynolds.transpose());
    println!(
        "  Reynolds projector image equals L: {}",
        image.equals(&fa.basis)?
    );

    for m in 2..=4 {
        let built = onsager_spec(m)?.build(None)?;
        let fa = built.action.fixed_point_algebra()?;
        println!(
            "onsager truncation m = {m}: dim L = {} (= 3m - 1 = {})",
            fa.dim(),
            3 * m - 1
        );
    }

    for n in [2, 4] {
        let built = trivial_spec(n).build(None)?;
        let fa = built.action.fixed_point_algebra()?;
        println!("trivial group over {n} points: dim L = {}", fa.dim());
    }
    Ok(())
}
