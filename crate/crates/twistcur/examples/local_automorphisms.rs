//! Evaluating automorphisms of g (x) S at points gives a local twisted
//! action on g: the composition law picks up a conjugated factor,
//! ev_M(gh) = ev_M(g) . ev_M(^g h), and the isotropy algebras transport
//! along g^M = g^-1(M) g^{gM}.
//!
//! Run with: cargo run -p twistcur --example local_automorphisms

use twistcur::builtin::klein_spec;

fn main() -> twistcur::Result<()> {
    let built = klein_spec().build(None)?;
    let act = &built.action;

    // the evaluated matrices of the product of the two generators at point 1
    let g1 = act.generator_indices()[0];
    let g2 = act.generator_indices()[1];
    let prod = act.product(g1, g2);
    let at_one = act.local_automorphism(prod, 0);
    println!("(g1 g2)(M1) on the basis (e, f, h):");
    for r in 0..3 {
        let row: Vec<String> = (0..3).map(|c| at_one.get(r, c).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }

    // the twisted composition law, checked for every pair and point
    let mut checked = 0;
    for a in 0..act.order() {
        for b in 0..act.order() {
            let conj = act.twisted_conjugate(a, act.element(b));
            for m in 0..act.points() {
                let lhs = act.local_automorphism(act.product(a, b), m);
                let rhs = act
                    .local_automorphism(a, m)
                    .mul(&act.local_of_matrix(&conj, m));
                assert_eq!(lhs, rhs);
                checked += 1;
            }
        }
    }
    println!("twisted composition law holds on {checked} instances");

    // transport of isotropy algebras across an orbit
    let check = act.isotropy_transport_check(g1, 0)?;
    println!(
        "g^M1 = g1^-1(M1) g^M2 as subspaces: {} (dim {})",
        check.holds,
        check.lhs.dim()
    );

    // the full identity suite bundles these families with the rest
    let fa = act.fixed_point_algebra()?;
    let suite = act.identity_suite(&fa)?;
    println!(
        "full identity suite: {} instances, {} violations",
        suite.total_instances(),
        suite.violations.len()
    );
    Ok(())
}
