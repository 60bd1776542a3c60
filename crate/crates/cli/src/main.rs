//! `fock`: command-line front end for the fock-core engine.
//!
//! Exit codes: 0 success, 1 parse error, 2 domain or usage error, 3 failed check.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fock_core::characters::{blowup_ratio_check, goettsche_series, render_table, BettiVector};
use fock_core::correspondence::{bosonize, fermionize, rho_state, structure_iso_check, StructureCheck};
use fock_core::dsl::{eval_fermionized, eval_on, parse_expr, parse_state, to_algebra, Space, StateLit};
use fock_core::ealgebra::normalize;
use fock_core::fermion::verma_vector;
use fock_core::modules::{BosonSpace, BosonTensor, FermionSpace};
use fock_core::suites::{run_suite, SuiteOptions};
use fock_core::{Error, Report};

const AFTER_HELP: &str = "\
Operator expressions use K1, Km1, E, F, P[i], Q[i], H[k], L[k], rational
scalars, '+', '-', '*' and '^'. Products act right to left: on a state s,
\"A*B\" is A(B(s)).

State literals: \"w(1,3) - 1/2*w(2)\" (fermion), \"y(1:2,3:1)\" (boson).";

#[derive(Parser)]
#[command(name = "fock", version, about = "Exact computations with the Boson-Fermion correspondence", after_help = AFTER_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size bound for checks and tables.
    #[arg(long, global = true, default_value_t = 6)]
    bound: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator expression to a state.
    Eval {
        /// fermion, boson or limit (the stable limit of the fermion space).
        #[arg(long, default_value = "fermion")]
        space: String,
        expr: String,
        state: String,
    },
    /// Print the normal form of an expression in the shift algebra.
    Normalize { expr: String },
    /// Run an audit suite: ealgebra, clifford, fermion, boson, correspondence, characters, all.
    Check {
        suite: String,
        /// Largest operator / wedge index (defaults to --bound).
        #[arg(long)]
        max_index: Option<u32>,
    },
    /// Print the Goettsche generating series as a q/t table.
    Character {
        /// Betti numbers b0,...,b4.
        #[arg(long, default_value = "1,0,1,0,1")]
        betti: String,
        #[arg(long, default_value_t = 4)]
        max_q: u32,
        /// Also check the blow-up ratio identity up to q^max-q.
        #[arg(long)]
        blowup_ratio: bool,
    },
    /// Map a fermion state to the boson space.
    Rho { state: String },
    /// Evaluate H[k]/L[k] on stable-limit classes, or print the structure table
    /// of a handle's stable limit when no expression is given.
    Bosonize {
        /// fermion, boson or boson-tensor:<rank>.
        #[arg(long, default_value = "fermion")]
        handle: String,
        expr: Option<String>,
        state: Option<String>,
    },
    /// Apply K1, Km1, E, F to a boson state placed at a filtration level.
    Fermionize {
        #[arg(long)]
        level: usize,
        expr: String,
        state: String,
    },
    /// The vector E_{a1} ... E_{an} |0> for comma-separated exponents.
    Verma {
        #[arg(default_value = "")]
        exponents: String,
    },
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::InvalidMonomial(_) => 1,
        _ => 2,
    }
}

fn report_json(r: &Report) -> Value {
    json!({
        "title": r.title,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

fn state_output(input: &str, result: String) -> Output {
    Output::ok(result.clone(), json!({"input": input, "result": result}))
}

fn structure_output(handle: &str, s: &StructureCheck) -> Output {
    let mut text = format!("{:>6}  {:>5}  {:>5}  {:>8}\n", "degree", "dim", "rank", "expected");
    for r in &s.rows {
        text += &format!("{:>6}  {:>5}  {:>5}  {:>8}\n", r.degree, r.dimension, r.rank, r.expected);
    }
    let verdict = if s.report.passed() { "PASS" } else { "FAIL" };
    text += &format!("structure B ⊗ W_0: {verdict}");
    let rows: Vec<Value> = s
        .rows
        .iter()
        .map(|r| json!({"degree": r.degree, "dimension": r.dimension, "rank": r.rank, "expected": r.expected}))
        .collect();
    Output {
        text,
        json: json!({"handle": handle, "rows": rows, "passed": s.report.passed()}),
        failed: !s.report.passed(),
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Eval { space, expr, state } => {
            let space: Space = space.parse()?;
            let e = parse_expr(expr)?;
            let s = parse_state(state)?;
            Ok(state_output(state, eval_on(space, &e, &s)?.to_string()))
        }
        Command::Normalize { expr } => {
            let x = to_algebra(&parse_expr(expr)?)?;
            let nf = normalize(&x).to_string();
            Ok(Output::ok(nf.clone(), json!({"input": expr, "normalForm": nf})))
        }
        Command::Check { suite, max_index } => {
            let opts = SuiteOptions { max_index: max_index.unwrap_or(cli.bound), bound: cli.bound, seed: cli.seed };
            let reports = run_suite(suite, &opts)?;
            let total: usize = reports.iter().map(|r| r.checks.len()).sum();
            let passed: usize = reports.iter().map(Report::num_passed).sum();
            let mut text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            text += &format!("{suite}: {passed}/{total} checks passed");
            Ok(Output {
                text,
                json: json!({
                    "suite": suite,
                    "passed": passed == total,
                    "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                }),
                failed: passed != total,
            })
        }
        Command::Character { betti, max_q, blowup_ratio } => {
            let b: BettiVector = betti.parse()?;
            let series = goettsche_series(b, *max_q);
            let mut text = render_table(&series);
            let terms: Vec<Value> =
                series.terms().map(|(q, t, c)| json!({"q": q, "t": t, "coeff": c.to_string()})).collect();
            let mut json = json!({"maxQ": max_q, "terms": terms});
            let mut failed = false;
            if *blowup_ratio {
                let r = blowup_ratio_check(b, *max_q);
                failed = !r.passed();
                let verdict = if failed { "FAIL" } else { "PASS" };
                if !text.ends_with('\n') {
                    text.push('\n');
                }
                text += &format!("ratio identity: {verdict}");
                json["ratioIdentity"] = json!(verdict);
            }
            Ok(Output { text: text.trim_end().to_string(), json, failed })
        }
        Command::Rho { state } => match parse_state(state)? {
            StateLit::Fermion(s) => Ok(state_output(state, rho_state(&s).to_string())),
            StateLit::Boson(_) => Err(Error::Domain("rho expects a fermion state w(..)".into())),
        },
        Command::Bosonize { handle, expr, state } => match (expr, state) {
            (Some(e), Some(s)) => {
                if handle != "fermion" {
                    return Err(Error::Domain("expressions are evaluated on the fermion handle only".into()));
                }
                let out = eval_on(Space::Limit, &parse_expr(e)?, &parse_state(s)?)?;
                Ok(state_output(s, out.to_string()))
            }
            (None, None) => {
                let d = cli.bound as u64;
                let check = match handle.as_str() {
                    "fermion" => structure_iso_check(&bosonize(FermionSpace), d)?,
                    "boson" => structure_iso_check(&bosonize(fermionize(BosonSpace)), d)?,
                    h => match h.strip_prefix("boson-tensor:").and_then(|k| k.parse::<usize>().ok()) {
                        Some(rank) if rank >= 1 => structure_iso_check(&bosonize(fermionize(BosonTensor { rank })), d)?,
                        _ => {
                            return Err(Error::Domain(format!(
                                "unknown handle '{h}' (fermion, boson, boson-tensor:<rank>)"
                            )))
                        }
                    },
                };
                Ok(structure_output(handle, &check))
            }
            _ => Err(Error::Domain("bosonize needs both an expression and a state, or neither".into())),
        },
        Command::Fermionize { level, expr, state } => {
            let out = eval_fermionized(&parse_expr(expr)?, *level, &parse_state(state)?)?;
            Ok(state_output(state, out.to_string()))
        }
        Command::Verma { exponents } => {
            let a: Vec<i64> = if exponents.trim().is_empty() {
                Vec::new()
            } else {
                exponents
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| Error::Domain(format!("bad exponent {x:?}"))))
                    .collect::<Result<_, _>>()?
            };
            Ok(state_output(exponents, verma_vector(&a)?.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::from(if out.failed { 3 } else { 0 })
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({"error": e.to_string(), "exitCode": exit_code(&e)})),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
