//! Command implementations shared by the CLI binary, the examples, and the
//! golden tests. Every command takes a built spec and produces a
//! deterministic [`Report`].

use std::collections::BTreeMap;

use crate::action::{FixedAlgebra, TwistedAction};
use crate::error::{Error, Result};
use crate::rep::{
    abelianization, build_eval_module, builtin_catalog, burnside_irreducible, classify,
    equivariant_completion, iso_test, section_module, Catalog, Character, Classification,
    InvariantSection,
};
use crate::report::Report;
use crate::scalar::{parse_scalar, CycScalar};
use crate::specfile::{BuiltSpec, ModuleDescription};
use crate::subspace::Subspace;

#[derive(Debug, Clone)]
pub enum Command {
    Verify,
    Fixed,
    Orbits,
    Isotropy { point: usize },
    Cocycle,
    Identities,
    Evaluate { support: Option<String>, lambda: Option<String> },
    Classify { support_bound: usize, module: Option<String> },
}

pub fn run(command: &Command, built: &BuiltSpec) -> Result<Report> {
    match command {
        Command::Verify => verify(built),
        Command::Fixed => fixed(built),
        Command::Orbits => orbits(built),
        Command::Isotropy { point } => isotropy(built, *point),
        Command::Cocycle => cocycle(built),
        Command::Identities => identities(built),
        Command::Evaluate { support, lambda } => {
            evaluate(built, support.as_deref(), lambda.as_deref())
        }
        Command::Classify {
            support_bound,
            module,
        } => classify_command(built, *support_bound, module.as_deref()),
    }
}

// ---------------------------------------------------------------------------
// formatting helpers
// ---------------------------------------------------------------------------

fn fmt_tuple(coords: &[CycScalar]) -> String {
    let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join(", "))
}

/// Linear combination over labelled basis vectors, e.g. "e - f" or
/// "(1/2)*h".
pub fn fmt_combo(coords: &[CycScalar], labels: &[String]) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let label = &labels[i];
        if c.is_one() {
            terms.push((false, label.clone()));
        } else if c.neg().is_one() {
            terms.push((true, label.clone()));
        } else {
            let s = c.to_string();
            if let Some(rest) = s.strip_prefix('-') {
                if !rest.contains(' ') {
                    terms.push((true, format!("{rest}*{label}")));
                    continue;
                }
            }
            if s.contains(' ') {
                terms.push((false, format!("({s})*{label}")));
            } else {
                terms.push((false, format!("{s}*{label}")));
            }
        }
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in terms.iter().enumerate() {
        if idx == 0 {
            if *neg {
                out.push('-');
            }
        } else if *neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(body);
    }
    out
}

/// An element of g (x) S printed slicewise: "h⊗(1, -1, 0)".
pub fn fmt_ambient(act: &TwistedAction, v: &[CycScalar]) -> String {
    let d = act.dim_g();
    let n = act.points();
    let mut parts = Vec::new();
    for i in 0..d {
        let slice: Vec<CycScalar> = (0..n).map(|j| v[i * n + j].clone()).collect();
        if slice.iter().all(|c| c.is_zero()) {
            continue;
        }
        parts.push(format!(
            "{}⊗{}",
            act.g().basis_labels[i],
            fmt_tuple(&slice)
        ));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn ambient_basis_lines(act: &TwistedAction, space: &Subspace) -> Vec<String> {
    if space.dim() == 0 {
        return vec!["(zero subspace)".into()];
    }
    space
        .basis_vectors()
        .iter()
        .map(|v| fmt_ambient(act, v))
        .collect()
}

fn g_basis_lines(act: &TwistedAction, space: &Subspace) -> Vec<String> {
    if space.dim() == 0 {
        return vec!["(zero subspace)".into()];
    }
    space
        .basis_vectors()
        .iter()
        .map(|v| fmt_combo(v, &act.g().basis_labels))
        .collect()
}

fn tuple_lines(space: &Subspace) -> Vec<String> {
    if space.dim() == 0 {
        return vec!["(zero subspace)".into()];
    }
    space.basis_vectors().iter().map(|v| fmt_tuple(v)).collect()
}

fn orbit_display(orbit: &[usize]) -> String {
    let inner: Vec<String> = orbit.iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn perm_display(perm: &[usize]) -> String {
    perm.iter()
        .enumerate()
        .map(|(j, &img)| format!("{}->{}", j + 1, img + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_point_arg(built: &BuiltSpec, point_one_based: usize) -> Result<usize> {
    let n = built.action.points();
    if point_one_based == 0 || point_one_based > n {
        return Err(Error::BadPoint {
            point: point_one_based,
            count: n,
        });
    }
    Ok(point_one_based - 1)
}

fn catalog_for(built: &BuiltSpec, fa: &FixedAlgebra) -> Result<Catalog> {
    builtin_catalog(
        &built.action,
        fa,
        built.catalog_max_weight,
        &built.catalog_character_values,
    )
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

fn verify(built: &BuiltSpec) -> Result<Report> {
    let act = &built.action;
    let mut report = Report::new("verify");
    let s = report.section("action");
    s.field("conductor", built.field.conductor().to_string())
        .field("dim g", act.dim_g().to_string())
        .field("points", act.points().to_string())
        .field("group order", act.order().to_string())
        .field("generators", act.generator_indices().len().to_string())
        .field("automorphism check", "passed")
        .field("point-ideal coherence", "passed");
    let rows: Vec<Vec<String>> = (0..act.order())
        .map(|t| {
            vec![
                t.to_string(),
                perm_display(act.point_action().perm(t)),
            ]
        })
        .collect();
    report
        .section("induced point permutations")
        .table(vec!["element".into(), "permutation".into()], rows);
    Ok(report)
}

fn fixed(built: &BuiltSpec) -> Result<Report> {
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let mut report = Report::new("fixed");
    report
        .section("fixed-point algebra")
        .field("dim L", fa.dim().to_string())
        .lines(ambient_basis_lines(act, &fa.basis));
    report
        .section("invariant subalgebra")
        .field("dim R", fa.invariants.dim().to_string())
        .lines(tuple_lines(&fa.invariants.basis));
    Ok(report)
}

fn orbits(built: &BuiltSpec) -> Result<Report> {
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let mut report = Report::new("orbits");
    report
        .section("invariant subalgebra")
        .field("dim R", fa.invariants.dim().to_string())
        .lines(tuple_lines(&fa.invariants.basis));
    let mut rows = Vec::new();
    for orbit in &fa.invariants.orbits.orbits {
        let p = orbit[0];
        let (_, stabilizer) = crate::site::orbit_stabilizer(act.point_action(), p)?;
        rows.push(vec![
            orbit_display(orbit),
            built.point_labels[p].clone(),
            stabilizer.len().to_string(),
            format!(
                "{{{}}}",
                stabilizer
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ]);
    }
    report.section("orbits").table(
        vec![
            "orbit".into(),
            "representative".into(),
            "stabilizer order".into(),
            "stabilizer elements".into(),
        ],
        rows,
    );
    Ok(report)
}

fn isotropy(built: &BuiltSpec, point_one_based: usize) -> Result<Report> {
    let act = &built.action;
    let point = check_point_arg(built, point_one_based)?;
    let fa = act.fixed_point_algebra()?;
    let iso = act.isotropy_algebra(&fa, point)?;
    let structure = iso.algebra.structure_report();
    let mut report = Report::new("isotropy");
    report
        .section("point")
        .field("point", point_one_based.to_string())
        .field("label", built.point_labels[point].clone())
        .field(
            "stabilizer",
            format!(
                "{{{}}} (order {})",
                iso.subgroup
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                iso.subgroup.len()
            ),
        );
    report
        .section("isotropy algebra")
        .field("dim", iso.space.dim().to_string())
        .lines(g_basis_lines(act, &iso.space))
        .field(
            "structure",
            match structure.kind {
                crate::lie::StructureKind::Semisimple => "semisimple",
                crate::lie::StructureKind::Reductive => "reductive",
                crate::lie::StructureKind::Neither => "neither",
            }
            .to_string(),
        )
        .field("center dim", structure.center.dim().to_string())
        .field("derived dim", structure.derived.dim().to_string())
        .field("evaluation image equals isotropy algebra", "yes".to_string());
    Ok(report)
}

fn cocycle(built: &BuiltSpec) -> Result<Report> {
    let act = &built.action;
    let cocycle = act.cocycle()?;
    let mut report = Report::new("cocycle");
    report
        .section("verification")
        .field("S-linearity", "verified")
        .field("Lie automorphism", "verified")
        .field(
            "crossed homomorphism law",
            format!("verified ({} pairs)", act.order() * act.order()),
        );
    for (t, u) in cocycle.matrices.iter().enumerate() {
        let lines: Vec<String> = (0..u.rows())
            .map(|r| {
                let row: Vec<String> = (0..u.cols()).map(|c| u.get(r, c).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        report.section(format!("twist of element {t}")).lines(lines);
    }
    Ok(report)
}

fn identities(built: &BuiltSpec) -> Result<Report> {
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let suite = act.identity_suite(&fa)?;
    let mut report = Report::new("identities");
    report.ok = suite.ok();
    let rows: Vec<Vec<String>> = suite
        .families
        .iter()
        .map(|(name, count)| vec![name.clone(), count.to_string()])
        .collect();
    report
        .section("identity families")
        .table(vec!["family".into(), "instances".into()], rows);
    let s = report.section("summary");
    s.field("total instances", suite.total_instances().to_string());
    s.field("violations", suite.violations.len().to_string());
    if !suite.violations.is_empty() {
        report
            .section("violations")
            .lines(suite.violations.clone());
    }
    Ok(report)
}

fn parse_support_arg(
    built: &BuiltSpec,
    fa: &FixedAlgebra,
    catalog: &Catalog,
    text: &str,
) -> Result<Vec<(usize, (String, crate::lie::LieRep))>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (point_str, label) = part.split_once(':').ok_or_else(|| {
            Error::Usage(format!("support entry {part:?} must look like POINT:LABEL"))
        })?;
        let point_one: usize = point_str
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad point index {point_str:?}")))?;
        let point = check_point_arg(built, point_one)?;
        let iso = built.action.isotropy_algebra(fa, point)?;
        let entry = catalog
            .entries_for(&iso.algebra)
            .into_iter()
            .find(|(l, _)| l == label.trim())
            .ok_or_else(|| {
                Error::Usage(format!(
                    "no catalog entry {:?} over the isotropy algebra at point {}",
                    label.trim(),
                    point_one
                ))
            })?
            .clone();
        out.push((point, entry));
    }
    Ok(out)
}

fn evaluate(built: &BuiltSpec, support: Option<&str>, lambda: Option<&str>) -> Result<Report> {
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let catalog = catalog_for(built, &fa)?;
    let assignments = match support {
        Some(text) => parse_support_arg(built, &fa, &catalog, text)?,
        None => Vec::new(),
    };
    let character = match lambda {
        None => Character::zero(&fa.algebra),
        Some(text) => {
            let coords: Vec<CycScalar> = text
                .split(',')
                .map(|s| parse_scalar(built.action.field(), s.trim()))
                .collect::<Result<_>>()?;
            Character::new(&fa.algebra, coords)?
        }
    };
    let points: Vec<usize> = assignments.iter().map(|(p, _)| *p).collect();
    let components: Vec<(String, crate::lie::LieRep)> =
        assignments.iter().map(|(_, c)| c.clone()).collect();
    let module = build_eval_module(act, &fa, &points, &components, character)?;
    let irr = burnside_irreducible(&module.rep)?;
    let mut report = Report::new("evaluate");
    let s = report.section("evaluation module");
    s.field(
        "support",
        if points.is_empty() {
            "(empty)".into()
        } else {
            points
                .iter()
                .zip(&module.component_labels)
                .map(|(p, l)| format!("{}:{}", p + 1, l))
                .collect::<Vec<_>>()
                .join(", ")
        },
    )
    .field("dim V", module.dim_v().to_string())
    .field(
        "lambda",
        fmt_tuple(module.character.coords()),
    )
    .field("homomorphism property", "verified")
    .field("closure dim", irr.closure_dim.to_string())
    .field("irreducible", if irr.irreducible { "yes" } else { "no" }.to_string());
    if !points.is_empty() {
        let (_, onto) = act.joint_evaluation(&fa, &points)?;
        report
            .section("joint evaluation")
            .field("surjective", if onto { "yes" } else { "no" }.to_string());
    }
    report.ok = irr.irreducible;
    Ok(report)
}

/// Enumerate the invariant sections over the catalog with support bound
/// `bound`: stabilizer-compatible assignments at orbit representatives.
pub fn enumerate_sections(
    act: &TwistedAction,
    fa: &FixedAlgebra,
    catalog: &Catalog,
    bound: usize,
) -> Result<Vec<InvariantSection>> {
    let mut candidate_points = Vec::new();
    let mut per_point: BTreeMap<usize, Vec<(String, crate::lie::LieRep)>> = BTreeMap::new();
    for orbit in &fa.invariants.orbits.orbits {
        let p = orbit[0];
        let iso = act.isotropy_algebra(fa, p)?;
        if iso.algebra.dim() == 0 {
            continue;
        }
        let entries: Vec<(String, crate::lie::LieRep)> = catalog
            .entries_for(&iso.algebra)
            .into_iter()
            .filter(|(_, r)| !r.is_trivial())
            .cloned()
            .collect();
        if !entries.is_empty() {
            candidate_points.push(p);
            per_point.insert(p, entries);
        }
    }
    let mut sections = vec![InvariantSection::empty()];
    // sizes ascending, supports in lexicographic order, entries in catalog order
    for size in 1..=bound.min(candidate_points.len()) {
        for support in subsets(&candidate_points, size) {
            let options: Vec<usize> = support.iter().map(|p| per_point[p].len()).collect();
            let mut pick = vec![0usize; size];
            loop {
                let assignments: BTreeMap<usize, (String, crate::lie::LieRep)> = support
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, per_point[&p][pick[i]].clone()))
                    .collect();
                if let Some(section) = equivariant_completion(act, fa, &assignments)? {
                    sections.push(section);
                }
                let mut carry = true;
                for i in (0..size).rev() {
                    if !carry {
                        break;
                    }
                    pick[i] += 1;
                    if pick[i] < options[i] {
                        carry = false;
                    } else {
                        pick[i] = 0;
                    }
                }
                if carry {
                    break;
                }
            }
        }
    }
    Ok(sections)
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        if items.len() - i < size {
            break;
        }
        for mut rest in subsets(&items[i + 1..], size - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn section_support_display(fa: &FixedAlgebra, section: &InvariantSection) -> (String, String) {
    if section.is_empty() {
        return ("(empty)".into(), "-".into());
    }
    let reps = section.orbit_representatives(fa);
    let orbits: Vec<String> = reps
        .iter()
        .map(|&p| {
            orbit_display(&fa.invariants.orbits.orbits[fa.invariants.orbits.point_to_orbit[p]])
        })
        .collect();
    let labels: Vec<String> = reps
        .iter()
        .map(|&p| section.component(p).expect("support").0.clone())
        .collect();
    (orbits.join(" "), labels.join(", "))
}

fn classify_command(
    built: &BuiltSpec,
    support_bound: usize,
    module_text: Option<&str>,
) -> Result<Report> {
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let catalog = catalog_for(built, &fa)?;
    let mut report = Report::new("classify");

    if let Some(text) = module_text {
        let description = ModuleDescription::parse(text)?;
        let rep = description.to_rep(act.field(), &fa.algebra)?;
        let outcome = classify(act, &fa, &rep, &catalog, support_bound)?;
        let s = report.section("imported module");
        s.field("dim V", rep.dim_v().to_string());
        match outcome {
            Classification::Found(pair) => {
                let (orbits, labels) = section_support_display(&fa, &pair.section);
                s.field("lambda", fmt_tuple(pair.character.coords()))
                    .field("support", orbits)
                    .field("components", labels)
                    .field(
                        "pair conditions",
                        if pair.kernel_conditions.all_hold() {
                            "hold"
                        } else {
                            "violated"
                        }
                        .to_string(),
                    );
            }
            Classification::NotFound => {
                s.field("result", "not found in catalog".to_string());
                report.ok = false;
            }
        }
        return Ok(report);
    }

    let sections = enumerate_sections(act, &fa, &catalog, support_bound)?;
    let (_, characters) = abelianization(&fa);
    report
        .section("setup")
        .field("dim L", fa.dim().to_string())
        .field("character family dimension", characters.len().to_string())
        .field("catalog entries", catalog.entries.len().to_string())
        .field("invariant sections", sections.len().to_string());
    let mut rows = Vec::new();
    for section in &sections {
        let module = section_module(act, &fa, section)?;
        let irr = burnside_irreducible(&module.rep)?;
        let outcome = classify(act, &fa, &module.rep, &catalog, support_bound)?;
        let (orbit_str, label_str) = section_support_display(&fa, section);
        let (lambda_str, recovered, conditions) = match &outcome {
            Classification::Found(pair) => {
                let same_support = pair.section.support_points() == section.support_points();
                let pointwise = same_support
                    && pair
                        .section
                        .support_points()
                        .iter()
                        .all(|&p| {
                            let (_, a) = pair.section.component(p).expect("support");
                            let (_, b) = section.component(p).expect("support");
                            iso_test(a, b).unwrap_or(false)
                        });
                (
                    fmt_tuple(pair.character.coords()),
                    if pair.character.is_zero() && pointwise {
                        "recovered".to_string()
                    } else {
                        "canonicalized".to_string()
                    },
                    if pair.kernel_conditions.all_hold() {
                        "hold".to_string()
                    } else {
                        "violated".to_string()
                    },
                )
            }
            Classification::NotFound => ("-".into(), "not found".into(), "-".into()),
        };
        rows.push(vec![
            orbit_str,
            label_str,
            module.dim_v().to_string(),
            if irr.irreducible { "yes" } else { "no" }.into(),
            lambda_str,
            recovered,
            conditions,
        ]);
    }
    report.section("classification").table(
        vec![
            "support orbits".into(),
            "components".into(),
            "dim V".into(),
            "irreducible".into(),
            "lambda".into(),
            "roundtrip".into(),
            "pair conditions".into(),
        ],
        rows,
    );
    Ok(report)
}

/// Build the evaluation-module description for export from a section over
/// the builtin catalog (used by the CLI and tests).
pub fn describe_section_module(
    built: &BuiltSpec,
    section: &InvariantSection,
) -> Result<ModuleDescription> {
    let act = &built.action;
    let fa = act.fixed_point_algebra()?;
    let module = section_module(act, &fa, section)?;
    Ok(ModuleDescription::from_module(&module))
}
