//! Isotropy algebras, contraction of maximal ideals of L to maximal ideals
//! of R, and the natural surjection g^M -> L/m_1 x ... x L/m_s for ideals
//! sharing a contraction.
//!
//! Run with: cargo run -p twistcur --example isotropy_and_epimorphisms

use twistcur::builtin::{klein_spec, swap_spec};
use twistcur::commands::fmt_combo;
use twistcur::lie::StructureKind;

fn main() -> twistcur::Result<()> {
    let built = klein_spec().build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    for point in 0..act.points() {
        let iso = act.isotropy_algebra(&fa, point)?;
        let report = iso.algebra.structure_report();
        let kind = match report.kind {
            StructureKind::Semisimple => "semisimple",
            StructureKind::Reductive => "reductive",
            StructureKind::Neither => "neither",
        };
        let basis: Vec<String> = iso
            .space
            .basis_vectors()
            .iter()
            .map(|v| fmt_combo(v, &act.g().basis_labels))
            .collect();
        println!(
            "klein point {}: stabilizer order {}, g^M = span{{{}}} ({kind})",
            point + 1,
            iso.subgroup.len(),
            basis.join(", ")
        );
    }

    // the swap example: L is a copy of sl2, the zero ideal is maximal with
    // simple quotient, and its contraction is the (unique) maximal ideal of
    // R = k; the epimorphism of the proof is a bijection g^M -> L
    let built = swap_spec().build(None)?;
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let (zero_ideal, simple) = act.point_kernel_ideal(&fa, 0)?;
    println!("swap: evaluation kernel at point 1 is zero: {}", zero_ideal.space.is_zero());
    println!("swap: L / ker is simple: {simple}");
    let contraction = act.ideal_contraction(&fa, &zero_ideal)?;
    println!(
        "swap: I(0) = 0 in R, maximal: {}",
        contraction.maximal == Some(true)
    );
    let epi = act.epimorphism_check(&fa, &contraction.r_contraction, &[zero_ideal])?;
    let map = epi.map.expect("nonempty ideal list");
    println!(
        "swap: g^M -> L/0 is onto: {} (rank {} of {}x{})",
        epi.surjective,
        map.rank(),
        map.rows(),
        map.cols()
    );
    Ok(())
}
