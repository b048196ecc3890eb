//! Acceptance suite: one test per exit criterion, every comparison exact
//! (zero tolerance). Each test prints a single PASS line on success so the
//! suite doubles as a checklist.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistcur::action::FixedAlgebra;
use twistcur::builtin::{klein_spec, onsager_spec, swap_spec, trivial_spec};
use twistcur::lie::{character_rep, sl2_irrep, LieRep};
use twistcur::rep::{
    build_eval_module, builtin_catalog, burnside_irreducible, classify, equivariant_completion,
    intertwiners, invariance_test, iso_test, representative_independence_check, section_module,
    verify_pair_conditions, Character, Classification,
};
use twistcur::specfile::BuiltSpec;
use twistcur::subspace::Subspace;
use twistcur::TwistedAction;

fn build(doc: twistcur::specfile::SpecDocument) -> (BuiltSpec, FixedAlgebra) {
    let built = doc.build(None).expect("builtin builds");
    let fa = built.action.fixed_point_algebra().expect("fixed algebra");
    (built, fa)
}

fn default_catalog(built: &BuiltSpec, fa: &FixedAlgebra) -> twistcur::rep::Catalog {
    let values = [
        built.field.one(),
        built.field.integer(-1),
        built.field.integer(2),
    ];
    builtin_catalog(&built.action, fa, 4, &values).expect("catalog")
}

/// Criterion 1: the Klein example has dim L = 1 with basis h (x) (1,-1,0),
/// R = {(a,a,b)}, and the maximal ideal J = {(a,a,0)} satisfies J.L = L.
#[test]
fn klein_counterexample() {
    let start = Instant::now();
    let (built, fa) = build(klein_spec());
    let act = &built.action;
    let f = act.field();
    assert_eq!(fa.dim(), 1);
    let mut h_line = vec![f.zero(); 9];
    h_line[6] = f.one();
    h_line[7] = f.integer(-1);
    let expected_l = Subspace::from_vectors(f, 9, &[h_line]);
    assert!(fa.basis.equals(&expected_l).unwrap(), "L basis mismatch");
    let expected_r = Subspace::from_vectors(
        f,
        3,
        &[
            vec![f.one(), f.one(), f.zero()],
            vec![f.zero(), f.zero(), f.one()],
        ],
    );
    assert!(fa.invariants.basis.equals(&expected_r).unwrap(), "R mismatch");
    let j = Subspace::from_vectors(f, 3, &[vec![f.one(), f.one(), f.zero()]]);
    assert!(fa.invariants.is_maximal_ideal(&j).unwrap());
    assert!(act.ideal_covers_fixed(&fa, &j).unwrap(), "J.L = L must hold");
    println!(
        "ACCEPTANCE 1 (klein counterexample): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 2: the exact identity suite holds on the three builtins and on
/// at least 100 randomized actions over Q(zeta_12).
#[test]
fn identity_suite_on_builtins_and_randomized_actions() {
    let start = Instant::now();
    let mut total_instances = 0usize;
    for (name, doc) in [
        ("klein", klein_spec()),
        ("swap", swap_spec()),
        ("onsager m=2", onsager_spec(2).unwrap()),
    ] {
        let (built, fa) = build(doc);
        let suite = built.action.identity_suite(&fa).expect("suite runs");
        assert!(suite.ok(), "{name}: violations {:?}", suite.violations);
        total_instances += suite.total_instances();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let runs = 100;
    for i in 0..runs {
        let act: TwistedAction = common::random_action(&mut rng, 16);
        let fa = act.fixed_point_algebra().expect("fixed algebra");
        let suite = act.identity_suite(&fa).expect("suite runs");
        assert!(
            suite.ok(),
            "random action {i} (order {}): violations {:?}",
            act.order(),
            suite.violations
        );
        total_instances += suite.total_instances();
    }
    println!(
        "ACCEPTANCE 2 (identity suite, builtins + {runs} random actions, {total_instances} instances): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 3: evaluation modules built from irreducible components at
/// distinct-orbit points are irreducible, with closure dimension exactly
/// (dim V)^2, and the joint evaluation is onto.
#[test]
fn evaluation_modules_are_irreducible() {
    let start = Instant::now();
    let (built, fa) = build(swap_spec());
    let act = &built.action;
    let iso = act.isotropy_algebra(&fa, 0).unwrap();
    for m in 1..=4usize {
        let rep = LieRep::new(
            iso.algebra.clone(),
            sl2_irrep(act.field(), m).unwrap().matrices,
        )
        .unwrap();
        let module = build_eval_module(
            act,
            &fa,
            &[0],
            &[(format!("V({m})"), rep)],
            Character::zero(&fa.algebra),
        )
        .unwrap();
        let report = burnside_irreducible(&module.rep).unwrap();
        assert!(report.irreducible, "swap V({m}) must be irreducible");
        assert_eq!(report.closure_dim, (m + 1) * (m + 1));
    }
    let (_, onto) = act.joint_evaluation(&fa, &[0]).unwrap();
    assert!(onto);

    let (built, fa) = build(onsager_spec(2).unwrap());
    let act = &built.action;
    let iso1 = act.isotropy_algebra(&fa, 0).unwrap();
    let iso2 = act.isotropy_algebra(&fa, 1).unwrap();
    let chi = character_rep(&iso1.algebra, &[act.field().one()]).unwrap();
    let v2 = LieRep::new(
        iso2.algebra.clone(),
        sl2_irrep(act.field(), 2).unwrap().matrices,
    )
    .unwrap();
    let module = build_eval_module(
        act,
        &fa,
        &[0, 1],
        &[("chi(1)".into(), chi), ("V(2)".into(), v2)],
        Character::zero(&fa.algebra),
    )
    .unwrap();
    let report = burnside_irreducible(&module.rep).unwrap();
    assert!(report.irreducible);
    assert_eq!(report.closure_dim, 9);
    let (_, onto) = act.joint_evaluation(&fa, &[0, 1]).unwrap();
    assert!(onto, "joint evaluation must be onto for distinct orbits");
    println!(
        "ACCEPTANCE 3 (evaluation modules irreducible at desk scale): PASS in {:?}",
        start.elapsed()
    );
}

fn roundtrip_sections(name: &str, built: &BuiltSpec, fa: &FixedAlgebra) -> (usize, usize) {
    let act = &built.action;
    let catalog = default_catalog(built, fa);
    let sections =
        twistcur::commands::enumerate_sections(act, fa, &catalog, 2).expect("enumeration");
    let mut exact = 0usize;
    let mut canonical = 0usize;
    for section in &sections {
        assert!(invariance_test(act, fa, section).unwrap());
        assert!(
            representative_independence_check(act, fa, section).unwrap(),
            "{name}: rebuilding from alternate representatives must be byte-identical"
        );
        let module = section_module(act, fa, section).expect("module");
        let zero_pair_valid = verify_pair_conditions(fa, &module)
            .map(|c| c.all_hold())
            .unwrap_or(false);
        let outcome = classify(act, fa, &module.rep, &catalog, 2).expect("classify runs");
        let pair = match outcome {
            Classification::Found(pair) => pair,
            Classification::NotFound => panic!("{name}: catalog section must classify"),
        };
        // criterion 5 checks ride along: every classified pair satisfies the
        // kernel conditions, re-derived independently here
        let conditions = verify_pair_conditions(fa, &pair.module).expect("conditions");
        assert!(conditions.character_vanishes_on_derived);
        assert!(conditions.quotient_semisimple);
        assert!(conditions.kernel_intersection_matches);
        assert!(iso_test(&pair.module.rep, &module.rep).unwrap());
        if zero_pair_valid {
            // the pair (0, psi) satisfies the classification conditions, so
            // the classifier must recover it on the nose
            assert!(
                pair.character.is_zero(),
                "{name}: expected lambda = 0, got {:?}",
                pair.character.coords()
            );
            assert_eq!(pair.section.support_points(), section.support_points());
            for &p in &section.support_points() {
                let (_, a) = pair.section.component(p).unwrap();
                let (_, b) = section.component(p).unwrap();
                assert!(iso_test(a, b).unwrap(), "{name}: pointwise class mismatch");
            }
            exact += 1;
        } else {
            // the central part of psi must be folded into lambda; the
            // recovered section keeps exactly the semisimple components
            for &p in &pair.section.support_points() {
                let (_, a) = pair.section.component(p).unwrap();
                let (_, b) = section
                    .component(p)
                    .unwrap_or_else(|| panic!("{name}: canonical support must shrink"));
                assert!(iso_test(a, b).unwrap());
            }
            canonical += 1;
        }
    }
    (exact, canonical)
}

/// Criterion 4: section modules rebuild byte-identically from alternate
/// orbit representatives; classify composed with the section-module map
/// recovers (0, psi) for every catalog section whose zero-character pair is
/// admissible (central characters fold into lambda otherwise); sections with
/// different supports have zero intertwiner space.
#[test]
fn section_transport_and_classification_roundtrip() {
    let start = Instant::now();
    let mut exact_total = 0usize;
    let mut canonical_total = 0usize;
    for (name, doc) in [
        ("klein", klein_spec()),
        ("swap", swap_spec()),
        ("onsager m=2", onsager_spec(2).unwrap()),
    ] {
        let (built, fa) = build(doc);
        let (exact, canonical) = roundtrip_sections(name, &built, &fa);
        exact_total += exact;
        canonical_total += canonical;
    }
    assert!(exact_total > 0 && canonical_total > 0);

    // distinct supports: V(1) sections over two different free orbits of the
    // m = 3 truncation have no nonzero intertwiner
    let (built, fa) = build(onsager_spec(3).unwrap());
    let act = &built.action;
    let mk = |p: usize| {
        let iso = act.isotropy_algebra(&fa, p).unwrap();
        let rep = LieRep::new(
            iso.algebra.clone(),
            sl2_irrep(act.field(), 1).unwrap().matrices,
        )
        .unwrap();
        let mut assignments = BTreeMap::new();
        assignments.insert(p, ("V(1)".to_string(), rep));
        let section = equivariant_completion(act, &fa, &assignments)
            .unwrap()
            .unwrap();
        section_module(act, &fa, &section).unwrap()
    };
    let ma = mk(1);
    let mb = mk(2);
    assert_eq!(intertwiners(&ma.rep, &mb.rep).unwrap().dim(), 0);
    println!(
        "ACCEPTANCE 4 (transport + roundtrip: {exact_total} exact, {canonical_total} canonicalized): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 5: every classified pair satisfies the kernel conditions
/// exactly: lambda vanishes on [L,L], L/ker(rho_psi) is semisimple (Killing
/// nondegenerate), and ker(lambda + rho_psi) = ker lambda meet ker rho_psi.
#[test]
fn classified_pairs_satisfy_kernel_conditions() {
    let start = Instant::now();
    let mut pairs = 0usize;
    for doc in [klein_spec(), swap_spec(), onsager_spec(2).unwrap()] {
        let (built, fa) = build(doc);
        let act = &built.action;
        let catalog = default_catalog(&built, &fa);
        let sections =
            twistcur::commands::enumerate_sections(act, &fa, &catalog, 2).expect("enumeration");
        for section in &sections {
            let module = section_module(act, &fa, section).unwrap();
            if let Classification::Found(pair) =
                classify(act, &fa, &module.rep, &catalog, 2).unwrap()
            {
                let conditions = verify_pair_conditions(&fa, &pair.module).unwrap();
                assert!(conditions.all_hold(), "kernel conditions must hold exactly");
                pairs += 1;
            } else {
                panic!("catalog section must classify");
            }
        }
    }
    assert!(pairs >= 10);
    println!(
        "ACCEPTANCE 5 (kernel conditions on {pairs} classified pairs): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 6: dim L = 3m - 1 for the truncations m = 2, 3, 4 and
/// dim L = 3n under the trivial group for n <= 6.
#[test]
fn truncation_dimension_formulas() {
    let start = Instant::now();
    for m in 2..=4usize {
        let (_, fa) = build(onsager_spec(m).unwrap());
        assert_eq!(fa.dim(), 3 * m - 1, "onsager m={m}");
    }
    for n in 1..=6usize {
        let (_, fa) = build(trivial_spec(n));
        assert_eq!(fa.dim(), 3 * n, "trivial group, n={n}");
    }
    println!(
        "ACCEPTANCE 6 (dimension formulas 3m-1 and 3n): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 7: the closure-dimension test agrees with the exhaustive
/// invariant-subspace oracle on every corpus module of dimension <= 4.
#[test]
fn irreducibility_oracle_agreement() {
    let start = Instant::now();
    let mut checked = 0usize;
    for doc in [klein_spec(), swap_spec(), onsager_spec(2).unwrap()] {
        let (built, fa) = build(doc);
        let act = &built.action;
        let catalog = default_catalog(&built, &fa);
        let sections =
            twistcur::commands::enumerate_sections(act, &fa, &catalog, 2).expect("enumeration");
        let mut small_modules: Vec<LieRep> = Vec::new();
        for section in &sections {
            let module = section_module(act, &fa, section).unwrap();
            if module.dim_v() <= 4 {
                small_modules.push(module.rep.clone());
            }
        }
        // direct sums of small modules are the reducible side of the corpus
        let mut sums = Vec::new();
        for a in &small_modules {
            for b in &small_modules {
                if a.dim_v() + b.dim_v() <= 4 {
                    sums.push(a.direct_sum(b).unwrap());
                }
            }
        }
        small_modules.extend(sums);
        for rep in &small_modules {
            let burnside = burnside_irreducible(rep).unwrap().irreducible;
            let oracle = common::oracle_irreducible(rep);
            assert_eq!(
                burnside,
                oracle,
                "oracle disagreement on a dim {} module",
                rep.dim_v()
            );
            checked += 1;
        }
    }
    assert!(checked >= 20);
    println!(
        "ACCEPTANCE 7 (oracle agreement on {checked} modules): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 8: for every builtin and every constructed maximal ideal of L
/// (kernel of evaluation with simple quotient), the contraction is a maximal
/// ideal of R, namely the one attached to the orbit of the point.
#[test]
fn contractions_of_maximal_ideals_are_maximal() {
    let start = Instant::now();
    let mut checked = 0usize;
    for doc in [
        klein_spec(),
        swap_spec(),
        onsager_spec(2).unwrap(),
        onsager_spec(3).unwrap(),
        trivial_spec(2),
    ] {
        let (built, fa) = build(doc);
        let act = &built.action;
        for point in 0..act.points() {
            let (ideal, simple) = act.point_kernel_ideal(&fa, point).unwrap();
            if !simple {
                continue;
            }
            let report = act.ideal_contraction(&fa, &ideal).unwrap();
            assert_eq!(report.maximal, Some(true));
            let expected = fa.invariants.maximal_ideal_at(point);
            assert!(
                report.r_contraction.equals(&expected).unwrap(),
                "contraction must be the orbit ideal of the point"
            );
            checked += 1;
        }
    }
    assert!(checked >= 5);
    println!(
        "ACCEPTANCE 8 (contractions maximal, {checked} ideals): PASS in {:?}",
        start.elapsed()
    );
}
