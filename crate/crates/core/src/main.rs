use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use partvar::classify::{field_iso_check, isomorphic, obfuscation_matrix, poincare, recover_partition, RecoveryParams};
use partvar::cohomring::{build_ring, NilpotentReport};
use partvar::polyring::LinearForm;
use partvar::rookcomb::{product_formula, q_rook_polynomial, FerrersBoard};
use partvar::verify::{self, Suite};
use partvar::{Error, Partition};

/// Rook polynomials, cohomology rings and classification of partition varieties.
#[derive(Debug, Parser)]
#[command(name = "partvar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient box radius for nilpotent searches.
    #[arg(long, global = true, default_value_t = 2)]
    box_radius: i64,
    /// Seed for the change of coordinates used by `recover` and `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coefficient field for `isomorphic`: 0 for the rationals, else a prime.
    #[arg(long, global = true)]
    field: Option<u64>,
    #[arg(long, global = true, default_value_t = 5)]
    max_rows: usize,
    #[arg(long, global = true, default_value_t = 7)]
    max_part: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Indecomposable components, in order of appearance.
    Decompose { partition: Partition },
    /// q-rook polynomial for n non-attacking rooks on the Ferrers board.
    RookPoly { partition: Partition },
    /// Poincaré polynomial of the cohomology ring.
    Poincare { partition: Partition },
    /// Whether two boards with the same number of rows are rook equivalent.
    Equivalent { left: Partition, right: Partition },
    /// Whether two partition varieties have isomorphic integral cohomology.
    Isomorphic { left: Partition, right: Partition },
    /// Minimal nilpotence order and its primitive witnesses in the box.
    Nilpotents {
        partition: Partition,
        /// Report forms of this order instead of the minimal one.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Recover the partition from its ring, optionally after a seeded
    /// change of coordinates.
    Recover { partition: Partition },
    /// Quotient by a primitive linear form given by its coefficients,
    /// e.g. `1,-2,0`.
    Quotient {
        partition: Partition,
        #[arg(allow_hyphen_values = true, value_parser = parse_form)]
        form: LinearForm,
    },
    /// Run a verification suite: rook, groebner, nilpotence, classify or all.
    Verify { suite: Suite },
}

fn parse_form(text: &str) -> Result<LinearForm, String> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(LinearForm::new)
}

/// Output plus whether every verification in it held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Decompose { partition } => {
            let comps = partition.decompose()?;
            Ok(Outcome::ok(comps.to_string(), json!({ "components": comps })))
        }
        Command::RookPoly { partition } => {
            partition.check_board()?;
            let q = q_rook_polynomial(&FerrersBoard::from_partition(partition), partition.len());
            let offset = q.offset_to(&product_formula(partition)?);
            Ok(Outcome::ok(
                q.to_string(),
                json!({ "coefficients": q.to_json(), "product_offset": offset }),
            ))
        }
        Command::Poincare { partition } => {
            let p = poincare(partition)?;
            Ok(Outcome::ok(p.to_string(), p.to_json()))
        }
        Command::Equivalent { left, right } => {
            let eq = left.rook_equivalent(right)?;
            let text = if eq { "rook equivalent" } else { "NOT rook equivalent" };
            Ok(Outcome::ok(
                text.into(),
                json!({
                    "equivalent": eq,
                    "invariant_left": left.gjw_invariant(),
                    "invariant_right": right.gjw_invariant(),
                }),
            ))
        }
        Command::Isomorphic { left, right } => match cli.field {
            None => {
                let v = isomorphic(left, right)?;
                let text = if v.isomorphic { "isomorphic" } else { "NOT isomorphic" };
                Ok(Outcome::ok(text.into(), serde_json::to_value(&v).expect("serializable")))
            }
            Some(p) => {
                let (a, b) = (field_iso_check(left, p)?, field_iso_check(right, p)?);
                let iso = a.splits && b.splits && a.cross_isomorphism;
                let field = if p == 0 { "Q".to_string() } else { format!("F_{p}") };
                let text = format!("{} over {field}", if iso { "isomorphic" } else { "NOT isomorphic" });
                Ok(Outcome::ok(text, json!({ "isomorphic": iso, "left": a, "right": b })))
            }
        },
        Command::Nilpotents { partition, k } => {
            let r = build_ring(partition)?;
            let (k, found) = match k {
                Some(k) => (*k, r.enumerate_k_nilpotents(*k, cli.box_radius)?),
                None => r.min_nilpotence(cli.box_radius)?,
            };
            let report = NilpotentReport::new(k, &found);
            let mut text = format!("k = {k}");
            for f in &found {
                text.push_str(&format!("\n{}", f.form));
            }
            Ok(Outcome::ok(text, serde_json::to_value(&report).expect("serializable")))
        }
        Command::Recover { partition } => {
            let mut r = build_ring(partition)?;
            if let Some(seed) = cli.seed {
                r = r.obfuscate(&obfuscation_matrix(partition.len(), seed))?;
            }
            let params = RecoveryParams { radius: cli.box_radius, norm_hint: r.norm_hint(), ..RecoveryParams::default() };
            let report = recover_partition(&r, &params)?;
            let ok = report.partition == *partition;
            let text = format!("{}{}", report.partition, if ok { "" } else { " (does not match input)" });
            Ok(Outcome { text, json: serde_json::to_value(&report).expect("serializable"), ok })
        }
        Command::Quotient { partition, form } => {
            let r = build_ring(partition)?;
            let q = r.quotient_by_linear(form)?;
            let mut text = format!("rank {}\nhilbert {}", q.rank(), q.hilbert_series());
            if let Some(p) = q.poly() {
                let gens: Vec<String> = match &p.basis {
                    Some(b) => b.polys().map(|g| g.to_string()).collect(),
                    None => p.gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_string()).collect(),
                };
                text.push_str(&format!("\nideal <{}>", gens.join(", ")));
            }
            Ok(Outcome::ok(text, q.report()))
        }
        Command::Verify { suite } => {
            let report = verify::run(*suite, cli.max_rows, cli.max_part, cli.seed.unwrap_or(0))?;
            let ok = report.all_passed();
            let text = report.table().trim_end().to_string();
            Ok(Outcome { text, json: serde_json::to_value(&report).expect("serializable"), ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
