use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use twistcur::builtin::builtin_spec;
use twistcur::commands::{run, Command};
use twistcur::error::Error;
use twistcur::report::{emit_report, ReportFormat};
use twistcur::specfile::{parse_spec, spec_to_json, SpecDocument};

/// Exact computations with twisted current algebras: fixed-point algebras,
/// cocycles, evaluation geometry, and classification of simple modules.
#[derive(Parser)]
#[command(name = "twistcur", version, about)]
struct Cli {
    /// Path to a JSON spec file describing the action.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Name of a builtin example: klein, swap, onsager.
    #[arg(long, global = true)]
    example: Option<String>,
    /// Truncation parameter for the onsager example.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Output format: text or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the action: generators, closure, induced point permutations.
    Verify,
    /// The fixed-point algebra L and the invariant subalgebra R.
    Fixed,
    /// Orbits, stabilizers, and the invariant subalgebra.
    Orbits,
    /// Stabilizer, isotropy algebra, and reductive decomposition at a point.
    Isotropy {
        /// 1-based point index.
        #[arg(long)]
        point: usize,
    },
    /// The S-linear twist of every group element and its verified laws.
    Cocycle,
    /// Run the full exact identity suite; exits 1 on any violation.
    Identities,
    /// Build an evaluation module and test irreducibility.
    Evaluate {
        /// Support as POINT:LABEL pairs, e.g. "1:V(1)" or "1:chi(1),2:V(2)".
        #[arg(long)]
        support: Option<String>,
        /// Character coordinates on the basis of L, comma separated.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Enumerate invariant sections over the builtin catalog and classify
    /// each section module back into a pair (lambda, psi).
    Classify {
        #[arg(long, default_value_t = 2)]
        support_bound: usize,
        /// Classify an exported module description instead.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Print the spec of a builtin example.
    Example {
        /// klein, swap, or onsager.
        #[arg(long)]
        name: String,
    },
}

fn load_spec(cli: &Cli) -> Result<SpecDocument, Error> {
    match (&cli.spec, &cli.example) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            parse_spec(&text)
        }
        (None, Some(name)) => builtin_spec(name, cli.m),
        (Some(_), Some(_)) => Err(Error::Usage(
            "pass either --spec or --example, not both".into(),
        )),
        (None, None) => Err(Error::Usage(
            "no input: pass --spec FILE or --example NAME".into(),
        )),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::IdentityViolation { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format.as_str() {
        "text" => ReportFormat::Text,
        "json" => ReportFormat::Structured,
        other => {
            eprintln!("error: unknown format {other:?} (use text or json)");
            return ExitCode::from(2);
        }
    };

    if let Cmd::Example { name } = &cli.command {
        return match builtin_spec(name, cli.m) {
            Ok(doc) => {
                print!("{}", spec_to_json(&doc));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }

    let doc = match load_spec(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    // the environment default is consulted only when the spec omits the field
    let default_conductor = if doc.field.cyclotomic_order.is_none() {
        std::env::var("TWISTCUR_CONDUCTOR")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
    } else {
        None
    };
    let built = match doc.build(default_conductor) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };

    let command = match &cli.command {
        Cmd::Verify => Command::Verify,
        Cmd::Fixed => Command::Fixed,
        Cmd::Orbits => Command::Orbits,
        Cmd::Isotropy { point } => Command::Isotropy { point: *point },
        Cmd::Cocycle => Command::Cocycle,
        Cmd::Identities => Command::Identities,
        Cmd::Evaluate { support, lambda } => Command::Evaluate {
            support: support.clone(),
            lambda: lambda.clone(),
        },
        Cmd::Classify {
            support_bound,
            module,
        } => {
            let module_text = match module {
                None => None,
                Some(path) => match std::fs::read_to_string(path) {
                    Ok(text) => Some(text),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
            };
            Command::Classify {
                support_bound: *support_bound,
                module: module_text,
            }
        }
        Cmd::Example { .. } => unreachable!("handled above"),
    };

    match run(&command, &built) {
        Ok(report) => {
            print!("{}", emit_report(&report, format));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
