//! Orbits, stabilizers, the invariant subalgebra R, and the lying-over
//! geometry of its ideals in the split case.
//!
//! Run with: cargo run -p twistcur --example orbits_and_invariants

use twistcur::builtin::onsager_spec;
use twistcur::site::{ideal_over, orbit_stabilizer};

fn main() -> twistcur::Result<()> {
    let built = onsager_spec(3)?.build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let inv = &fa.invariants;

    println!("points: {} (the 6th roots of unity)", act.points());
    println!("dim R = {} = number of orbits", inv.dim());
    for orbit in &inv.orbits.orbits {
        let rep = orbit[0];
        let (members, stabilizer) = orbit_stabilizer(act.point_action(), rep)?;
        let shown: Vec<String> = members.iter().map(|p| (p + 1).to_string()).collect();
        println!(
            "orbit {{{}}}: |orbit| x |stabilizer| = {} x {} = {}",
            shown.join(", "),
            members.len(),
            stabilizer.len(),
            members.len() * stabilizer.len()
        );
    }

    // the maximal ideal of R at a free orbit, and everything over it
    let ideal = inv.maximal_ideal_at(1);
    let report = ideal_over(&ideal, act.sites(), inv)?;
    let points: Vec<String> = report.points.iter().map(|p| (p + 1).to_string()).collect();
    println!(
        "over the orbit ideal of point 2: points {{{}}}, dim IS = {}, radical = IS: {}",
        points.join(", "),
        report.generated.dim(),
        report.generated.equals(&report.radical)?
    );

    // distinct maximal ideals of R are comaximal
    let i1 = inv.maximal_ideal_at(0);
    let i2 = inv.maximal_ideal_at(1);
    let sum = i1.sum(&i2)?;
    println!(
        "I1 + I2 = R for distinct maximal ideals: {}",
        sum.equals(&inv.basis)?
    );
    Ok(())
}
