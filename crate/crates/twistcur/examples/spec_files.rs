//! Driving the library from a JSON spec: the same format the CLI reads.
//! Scalars are strings in the text grammar ("1/2*z^2 - 3"), matrices act on
//! the basis x_i (x) e_j with column j holding the image of basis vector j.
//!
//! Run with: cargo run -p twistcur --example spec_files

use twistcur::commands::{run, Command};
use twistcur::report::{emit_report, ReportFormat};
use twistcur::specfile::parse_spec;

// sl2 over two points at conductor 4, with the Chevalley involution coupled
// to the point swap; the -1 entries are written as z^2 to show reduction
const SPEC: &str = r#"{
  "name": "swap at conductor four",
  "field": { "cyclotomic_order": 4 },
  "lie_algebra": { "type": "sl", "rank": 2 },
  "points": 2,
  "group": {
    "generators": [
      [
        ["0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "z^2", "0", "0"],
        ["0", "0", "0", "0", "0", "0"],
        ["0", "z^2", "0", "0", "0", "0"],
        ["-1", "0", "0", "0", "0", "0"],
        ["0", "0", "z^2", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "z^2"],
        ["0", "0", "0", "0", "-1", "0"]
      ]
    ]
  }
}"#;

fn main() -> twistcur::Result<()> {
    // the matrix above is deliberately wrong in shape: 9 rows for a 6-dim
    // ambient space; watch the validator name the offending field
    let doc = parse_spec(SPEC)?;
    match doc.build(None) {
        Ok(_) => println!("unexpectedly built"),
        Err(e) => println!("rejected as expected: {e}"),
    }

    // the real swap spec, exported from the builtin and rebuilt
    let text = twistcur::specfile::spec_to_json(&twistcur::builtin::swap_spec());
    let doc = parse_spec(&text)?;
    let built = doc.build(None)?;
    println!(
        "swap spec builds: group order {}, points {}",
        built.action.order(),
        built.action.points()
    );

    // run two commands against it and print the text reports
    for command in [Command::Fixed, Command::Identities] {
        let report = run(&command, &built)?;
        print!("{}", emit_report(&report, ReportFormat::Text));
    }
    Ok(())
}
