//! `extpow`: reflection data, exterior powers and certification reports
//! from the command line.
//!
//! Exit codes: 0 success, 2 unreadable input or bad arguments, 3 a
//! hypothesis fails, 4 certification fails.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use extpow::catalog::{self, list_entries};
use extpow::repfile::{parse_rep_file, RepFile};
use extpow::repkit::{exterior_rep, hom_dim, Representation};
use extpow::report::{analysis_json, render_analysis, render_theorem, theorem_json};
use extpow::theoremlab::{check_hypotheses, verify_theorem_with, Condition4, Conclusion, VerifyOptions};

const EXIT_USAGE: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_CERTIFICATION: u8 = 4;

#[derive(Parser)]
#[command(name = "extpow", version, about = "Exact certification of simple exterior powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection data of each generator, the graph, and the fixing symmetry.
    Analyze {
        /// Representation file or catalog entry name.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Full certification report.
    Verify {
        input: String,
        #[arg(long)]
        json: bool,
        /// Include move traces between subsets of the basis.
        #[arg(long)]
        trace: bool,
        /// Degrees to certify, comma separated; all by default.
        #[arg(long = "d", value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
    },
    /// Generator matrices of an exterior power.
    Exterior {
        input: String,
        #[arg(long = "d")]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of the hom space between two exterior powers, given as
    /// `INPUT:d` (`d` defaults to 1).
    Hom {
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Built-in representations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

/// A file path if such a file exists, otherwise a catalog entry.
fn load(input: &str) -> Result<Representation> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {input}"))?;
        return parse_rep_file(&text).with_context(|| format!("parsing {input}"));
    }
    catalog::entry(input)
        .map(|e| e.representation)
        .map_err(|_| anyhow!("{input} is neither a readable file nor a catalog entry"))
}

fn load_power(spec: &str) -> Result<(Representation, usize)> {
    let (input, d) = match spec.rsplit_once(':') {
        Some((i, d)) if !d.is_empty() && d.bytes().all(|c| c.is_ascii_digit()) => {
            (i, d.parse::<usize>().context("degree")?)
        }
        _ => (spec, 1),
    };
    let r = load(input)?;
    if d > r.dim() {
        bail!("degree {d} exceeds dimension {} of {input}", r.dim());
    }
    Ok((exterior_rep(&r, d)?, d))
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, json } => {
            let r = load(&input)?;
            let h = check_hypotheses(&r);
            if json {
                emit(&analysis_json(&h).map_err(|e| anyhow!("schema check failed: {e}"))?);
            } else {
                print!("{}", render_analysis(&h));
            }
            let c4_fails = matches!(h.condition4, Some(Condition4::Violations(_)));
            Ok(if !h.all_reflections || c4_fails { EXIT_HYPOTHESIS } else { 0 })
        }
        Command::Verify {
            input,
            json,
            trace,
            degrees,
        } => {
            let r = load(&input)?;
            let opts = VerifyOptions {
                trace,
                degrees,
                ..VerifyOptions::default()
            };
            let report = verify_theorem_with(&r, &opts)?;
            if json {
                emit(&theorem_json(&report).map_err(|e| anyhow!("schema check failed: {e}"))?);
            } else {
                print!("{}", render_theorem(&report));
            }
            Ok(match report.conclusion {
                Conclusion::TheoremVerified => 0,
                Conclusion::HypothesisFailed { .. } => EXIT_HYPOTHESIS,
                Conclusion::CertificationFailed { .. } => EXIT_CERTIFICATION,
            })
        }
        Command::Exterior { input, degree, json } => {
            let r = load(&input)?;
            if degree > r.dim() {
                bail!("degree {degree} exceeds dimension {}", r.dim());
            }
            let e = exterior_rep(&r, degree)?;
            if json {
                emit(&serde_json::to_value(RepFile::from_representation(&e))?);
            } else {
                for g in e.generators() {
                    println!("{}:\n{}", g.label, g.matrix);
                }
            }
            Ok(0)
        }
        Command::Hom { left, right, json } => {
            let (l, dl) = load_power(&left)?;
            let (r, dr) = load_power(&right)?;
            let dim = hom_dim(&l, &r)?;
            if json {
                emit(&json!({"left": left, "right": right, "left_degree": dl, "right_degree": dr, "hom_dim": dim}));
            } else {
                println!("{dim}");
            }
            Ok(0)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in list_entries() {
                    println!("{name}");
                }
                Ok(0)
            }
            CatalogAction::Show { name, json } => {
                let e = catalog::entry(&name)?;
                if json {
                    emit(&json!({
                        "name": e.name,
                        "notes": e.notes,
                        "expected": e.expected,
                        "representation": RepFile::from_representation(&e.representation),
                    }));
                } else {
                    println!("{}: {}", e.name, e.notes);
                    println!(
                        "dimension {} over {}, theorem applies: {}",
                        e.representation.dim(),
                        e.representation.field(),
                        e.expected.theorem_applies
                    );
                    for g in e.representation.generators() {
                        println!("{}:\n{}", g.label, g.matrix);
                    }
                }
                Ok(0)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
