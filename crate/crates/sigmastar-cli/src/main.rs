//! Command-line front end: codec, counting, pair/set coding, recursion
//! certificates, formula translation and bounded evaluation, finite model
//! construction, and the named verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification run reports failures,
//! 2 on usage or parse errors.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use sigmastar::logic::{eval_bounded, parse_formula, print_formula, translate_t, translate_wt};
use sigmastar::model::{build_model, build_witnessed_model, check_axioms, parse_star_term};
use sigmastar::verify::{run_suite, SUITES};
use sigmastar::{
    build_certificate, check_min_comp, decode_pair, decode_tree, encode_pair, encode_set,
    encode_tree, graph_holds, is_almost_even, members, run_recursion, BinString, RecursionSpec,
    TreeTerm,
};

#[derive(Parser)]
#[command(name = "sigmastar", version, about = "Trees as strings: codecs, tally arithmetic, coded sets and pairs, recursion certificates, bounded model checking, and finite models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode or decode full binary trees as strings
    Tree {
        #[command(subcommand)]
        command: TreeCmd,
    },
    /// Digit counting and the almost-even predicate
    Str {
        #[command(subcommand)]
        command: StrCmd,
    },
    /// Tally-framed ordered pairs
    Pair {
        #[command(subcommand)]
        command: PairCmd,
    },
    /// Tally-framed finite sets
    Set {
        #[command(subcommand)]
        command: SetCmd,
    },
    /// String recursion and computation certificates
    Rec {
        #[command(subcommand)]
        command: RecCmd,
    },
    /// Formula translation and bounded evaluation
    Logic {
        #[command(subcommand)]
        command: LogicCmd,
    },
    /// Finite model construction
    Model {
        #[command(subcommand)]
        command: ModelCmd,
    },
    /// Run a named verification suite
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Tree syntax ("0", "(s,t)") to string code
    Encode { tree: String },
    /// String code to tree syntax
    Decode { string: String },
}

#[derive(Subcommand)]
enum StrCmd {
    /// Tally of a-digit count
    Alpha { string: String },
    /// Tally of b-digit count
    Beta { string: String },
    /// Almost-even test
    Ae { string: String },
}

#[derive(Subcommand)]
enum PairCmd {
    Encode { x: String, y: String },
    Decode { z: String },
}

#[derive(Subcommand)]
enum SetCmd {
    /// Encode the member strings as one set code
    Encode { members: Vec<String> },
    /// List the members of a set code
    Members { code: String },
}

#[derive(Subcommand)]
enum RecCmd {
    /// Run a built-in recursion ("alpha" or "beta") on an argument
    Run { spec: String, m: String },
    /// Build and verify the computation certificate for an argument
    Certify { spec: String, m: String },
}

#[derive(Subcommand)]
enum LogicCmd {
    /// Translate a tree-sorted formula file into the concatenation signature
    TranslateT { file: String },
    /// Translate a tree-sorted formula file into the extended signature
    TranslateWt { file: String },
    /// Evaluate a closed formula file over strings up to a length bound
    Eval {
        file: String,
        #[arg(long, default_value_t = 7)]
        bound: usize,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Pool terms in star syntax, e.g. "(a*b)" "(b*(a*a))"
    terms: Vec<String>,
    /// Check the generated hybrid-theory instances against the model
    #[arg(long)]
    check: bool,
    /// Use the witnessed construction (substring-closed domain, sink
    /// default) instead of the literal one
    #[arg(long)]
    witnessed: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the named suites, or "all"
    suite: String,
    /// Override the suite's default bound
    #[arg(long)]
    bound: Option<u64>,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

fn parse_bin(s: &str) -> Result<BinString, String> {
    BinString::from_str(s).map_err(|e| e.to_string())
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Tree { command } => match command {
            TreeCmd::Encode { tree } => {
                let t: TreeTerm = tree.parse().map_err(|e| format!("{e}"))?;
                println!("{}", encode_tree(&t));
            }
            TreeCmd::Decode { string } => {
                let x = parse_bin(&string)?;
                let t = decode_tree(&x).map_err(|e| format!("{e}"))?;
                println!("{t}");
            }
        },
        Command::Str { command } => match command {
            StrCmd::Alpha { string } => {
                println!("{}", sigmastar::alpha(&parse_bin(&string)?));
            }
            StrCmd::Beta { string } => {
                println!("{}", sigmastar::beta(&parse_bin(&string)?));
            }
            StrCmd::Ae { string } => {
                println!("{}", is_almost_even(&parse_bin(&string)?));
            }
        },
        Command::Pair { command } => match command {
            PairCmd::Encode { x, y } => {
                println!("{}", encode_pair(&parse_bin(&x)?, &parse_bin(&y)?));
            }
            PairCmd::Decode { z } => {
                let (x, y) = decode_pair(&parse_bin(&z)?).map_err(|e| format!("{e}"))?;
                println!("{x} {y}");
            }
        },
        Command::Set { command } => match command {
            SetCmd::Encode { members } => {
                let ws: Result<Vec<BinString>, String> =
                    members.iter().map(|m| parse_bin(m)).collect();
                println!("{}", encode_set(&ws?).raw);
            }
            SetCmd::Members { code } => {
                let ms = members(&parse_bin(&code)?).map_err(|e| format!("{e}"))?;
                let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                println!("{}", names.join(" "));
            }
        },
        Command::Rec { command } => match command {
            RecCmd::Run { spec, m } => {
                let spec = RecursionSpec::builtin(&spec)
                    .ok_or_else(|| format!("unknown spec {spec:?}; built-ins: alpha, beta"))?;
                println!("{}", run_recursion(&spec, &parse_bin(&m)?));
            }
            RecCmd::Certify { spec, m } => {
                let spec = RecursionSpec::builtin(&spec)
                    .ok_or_else(|| format!("unknown spec {spec:?}; built-ins: alpha, beta"))?;
                let m = parse_bin(&m)?;
                let cert = build_certificate(&spec, &m);
                let value = run_recursion(&spec, &m);
                let minimal = check_min_comp(&cert.code.raw, &m, &spec);
                let holds = graph_holds(&spec, &m, &value);
                println!("certificate: {}", cert.code.raw);
                println!("length: {}", cert.len());
                println!("value: {value}");
                println!("min-comp: {minimal}");
                println!("graph-holds: {holds}");
                if !(minimal && holds) {
                    return Ok(false);
                }
            }
        },
        Command::Logic { command } => match command {
            LogicCmd::TranslateT { file } => {
                let text = fs::read_to_string(&file).map_err(|e| format!("{file}: {e}"))?;
                let f = parse_formula(&text).map_err(|e| format!("{e}"))?;
                let tr = translate_t(&f).map_err(|e| format!("{e}"))?;
                println!("{}", print_formula(&tr));
            }
            LogicCmd::TranslateWt { file } => {
                let text = fs::read_to_string(&file).map_err(|e| format!("{file}: {e}"))?;
                let f = parse_formula(&text).map_err(|e| format!("{e}"))?;
                let tr = translate_wt(&f).map_err(|e| format!("{e}"))?;
                println!("{}", print_formula(&tr));
            }
            LogicCmd::Eval { file, bound } => {
                let text = fs::read_to_string(&file).map_err(|e| format!("{file}: {e}"))?;
                let f = parse_formula(&text).map_err(|e| format!("{e}"))?;
                let value = eval_bounded(&f, bound, &Default::default())
                    .map_err(|e| format!("{e}"))?;
                println!("{value}");
            }
        },
        Command::Model(args) => {
            let pool: Result<Vec<_>, String> = args
                .terms
                .iter()
                .map(|t| parse_star_term(t).map_err(|e| format!("{e}")))
                .collect();
            let pool = pool?;
            let instances = sigmastar::logic::theories::axioms_wqt_star_labeled(
                &pool,
                if args.witnessed {
                    sigmastar::logic::theories::WqtStarVariant::Repaired
                } else {
                    sigmastar::logic::theories::WqtStarVariant::Literal
                },
            );
            let model = if args.witnessed {
                let formulas: Vec<_> = instances.iter().map(|(_, f)| f.clone()).collect();
                build_witnessed_model(&pool, &formulas).map_err(|e| format!("{e}"))?
            } else {
                build_model(&pool).map_err(|e| format!("{e}"))?
            };
            print!("{}", model.export());
            if args.check {
                let report = check_axioms(&model, &instances);
                println!("{}", report.to_json());
                return Ok(report.passed());
            }
        }
        Command::Verify(args) => {
            let reports = if args.suite == "all" {
                sigmastar::verify::run_all()
            } else if SUITES.contains(&args.suite.as_str()) {
                vec![run_suite(&args.suite, args.bound).expect("known suite")]
            } else {
                return Err(format!(
                    "unknown suite {:?}; known: {} or all",
                    args.suite,
                    SUITES.join(", ")
                ));
            };
            let mut all_passed = true;
            if args.json {
                if reports.len() == 1 {
                    println!("{}", reports[0].to_json());
                } else {
                    let values: Vec<serde_json::Value> = reports
                        .iter()
                        .map(|r| serde_json::from_str(&r.to_json()).expect("valid json"))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&values).expect("json"));
                }
                all_passed = reports.iter().all(|r| r.passed());
            } else {
                for r in &reports {
                    let verdict = if r.passed() { "pass" } else { "FAIL" };
                    println!(
                        "{:<16} {verdict}  bound={} cases={} failures={} elapsed={}ms",
                        r.suite,
                        r.bound,
                        r.cases,
                        r.failures.len(),
                        r.elapsed_ms
                    );
                    for f in r.failures.iter().take(10) {
                        let parts: Vec<String> =
                            f.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        println!("    {}  {}", f.law, parts.join(" "));
                    }
                    if r.failures.len() > 10 {
                        println!("    … {} more failures", r.failures.len() - 10);
                    }
                    all_passed &= r.passed();
                }
            }
            return Ok(all_passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
