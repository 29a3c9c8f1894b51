//! `tapes`: parse, normalise, compare and evaluate tape diagrams and relation
//! expressions from the command line.
//!
//! Exit status is 0 when an inclusion holds (or a command succeeds), 1 when it
//! fails, 2 on any parse, type or model error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tape_diagrams::cr::{self, cr_signature, decide_leq, CrExpr, Verdict};
use tape_diagrams::matrix::to_matrix;
use tape_diagrams::order::{tape_equiv, tape_leq, Mode, Theory};
use tape_diagrams::parse::{parse_circuit, parse_cr, parse_signature, parse_tape};
use tape_diagrams::rel::{eval_circuit, eval_tape, FiniteRelation, Interpretation, SearchConfig};
use tape_diagrams::selftest::{self, Sizes};
use tape_diagrams::signature::ReductionTable;
use tape_diagrams::{cb_leq, circuits_equal, CircuitTerm, MonSignature, TapeTerm};

#[derive(Parser)]
#[command(name = "tapes", version, about = "Tape diagrams and the positive calculus of relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and type a term, then echo it with its type.
    Parse(TermArgs),
    /// Print the matrix normal form of a term.
    Normalize {
        #[command(flatten)]
        term: TermArgs,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Decide `LHS <= RHS`, `LHS == RHS` or `LHS >= RHS`.
    Decide(DecideArgs),
    /// Evaluate a term in a finite model.
    Eval {
        #[command(flatten)]
        term: TermArgs,
        /// The model, as a JSON file.
        #[arg(long)]
        model: PathBuf,
    },
    /// Draw a circuit's hypergraph in DOT.
    Render {
        #[command(flatten)]
        common: Common,
        circuit: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smaller case counts.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 4096)]
        budget: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Signature file.
    #[arg(long)]
    sig: Option<PathBuf>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Allow copiers, dischargers and their duals in circuits.
    #[arg(long)]
    frobenius: bool,
}

#[derive(Args)]
struct TermArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, conflicts_with_all = ["circuit", "expr"])]
    tape: Option<String>,
    #[arg(long, conflicts_with = "expr")]
    circuit: Option<String>,
    /// A relation expression.
    #[arg(required_unless_present_any = ["tape", "circuit"])]
    expr: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cr,
    Tape,
    Circuit,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    common: Common,
    /// How to read both sides.
    #[arg(long, value_enum, default_value_t = Kind::Cr)]
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Models tried per carrier size when looking for a counterexample.
    #[arg(long, default_value_t = 4096)]
    budget: u64,
    lhs: String,
    #[arg(value_parser = ["<=", "==", ">="])]
    op: String,
    rhs: String,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

type Res<T> = Result<T, String>;

fn err(e: tape_diagrams::Error) -> String {
    e.to_string()
}

struct Env {
    sig: MonSignature,
    table: Option<ReductionTable>,
}

fn load(common: &Common, cb: bool) -> Res<Option<Env>> {
    let Some(path) = &common.sig else { return Ok(None) };
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (mut sig, table) = parse_signature(&text).and_then(|p| p.into_monoidal()).map_err(err)?;
    if common.frobenius || cb {
        sig = sig.with_frobenius();
    }
    Ok(Some(Env { sig, table }))
}

fn require(env: Option<Env>) -> Res<Env> {
    env.ok_or_else(|| "this command needs a signature (--sig)".to_string())
}

fn theory(mode: Mode, sig: &MonSignature) -> Res<Theory> {
    Theory::new(mode, sig).map_err(err)
}

/// The signature for relation expressions: the given one, or one built from the symbols.
fn cr_env(env: Option<Env>, exprs: &[&str]) -> Res<(MonSignature, Vec<CrExpr>)> {
    match env {
        Some(env) => {
            let es = exprs.iter().map(|e| parse_cr(e, Some(&env.sig))).collect::<Result<Vec<_>, _>>().map_err(err)?;
            Ok((env.sig.with_frobenius(), es))
        }
        None => {
            let es = exprs.iter().map(|e| parse_cr(e, None)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            let syms: Vec<String> = es.iter().flat_map(|e| e.symbols()).map(|s| s.to_string()).collect();
            Ok((cr_signature(syms.iter().map(String::as_str)), es))
        }
    }
}

enum Term {
    Cr(CrExpr),
    Tape(TapeTerm),
    Circuit(CircuitTerm),
}

fn read_term(args: &TermArgs, cb: bool) -> Res<(MonSignature, Term)> {
    let env = load(&args.common, cb)?;
    if let Some(t) = &args.tape {
        let env = require(env)?;
        let tape = parse_tape(t, &env.sig, env.table.as_ref()).map_err(err)?;
        return Ok((env.sig, Term::Tape(tape)));
    }
    if let Some(c) = &args.circuit {
        let env = require(env)?;
        let c = parse_circuit(c, &env.sig).map_err(err)?;
        return Ok((env.sig, Term::Circuit(c)));
    }
    let (sig, mut es) = cr_env(env, &[args.expr.as_deref().unwrap_or_default()])?;
    Ok((sig, Term::Cr(es.remove(0))))
}

fn mode_for(common: &Common, cr: bool) -> Res<Mode> {
    match (common.mode, cr) {
        (Some(m), true) if m != Mode::Cb => Err(format!("relation expressions are decided in cb mode, not {m}")),
        (Some(m), _) => Ok(m),
        (None, true) => Ok(Mode::Cb),
        (None, false) => Ok(Mode::Multiset),
    }
}

fn parse_cmd(args: &TermArgs) -> Res<ExitCode> {
    let (sig, term) = read_term(args, false)?;
    match term {
        Term::Cr(e) => {
            let a = cr::cr_sort(&sig).map_err(err)?;
            println!("relation on {a}: {e}");
        }
        Term::Tape(t) => {
            let (p, q) = t.type_of().map_err(err)?;
            println!("tape {p} -> {q}: {t}");
        }
        Term::Circuit(c) => {
            let (u, v) = c.type_of().map_err(err)?;
            println!("circuit {u} -> {v}: {c}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn normalize(args: &TermArgs, as_json: bool) -> Res<ExitCode> {
    let cr = args.tape.is_none() && args.circuit.is_none();
    let mode = mode_for(&args.common, cr)?;
    let (sig, term) = read_term(args, mode == Mode::Cb)?;
    let t = match term {
        Term::Cr(e) => cr::encode(&e, &sig).map_err(err)?,
        Term::Tape(t) => t,
        Term::Circuit(c) => TapeTerm::Lift(c),
    };
    let m = to_matrix(&t, theory(mode, &sig)?).map_err(err)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&m.to_json()).expect("json"));
    } else {
        println!("{m}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict(holds: bool) -> ExitCode {
    println!("{}", if holds { "holds" } else { "fails" });
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn decide(args: &DecideArgs) -> Res<ExitCode> {
    let (l, r) = match args.op.as_str() {
        ">=" => (&args.rhs, &args.lhs),
        _ => (&args.lhs, &args.rhs),
    };
    let both = args.op == "==";
    let cfg = SearchConfig {
        budget: args.budget,
        seed: args.seed,
        ..SearchConfig::default()
    };
    match args.kind {
        Kind::Cr => {
            mode_for(&args.common, true)?;
            let env = load(&args.common, true)?;
            let (sig, es) = cr_env(env, &[l, r])?;
            let mut v = decide_leq(&es[0], &es[1], &sig, &cfg).map_err(err)?;
            if both && v.holds() {
                v = decide_leq(&es[1], &es[0], &sig, &cfg).map_err(err)?;
            }
            let code = verdict(v.holds());
            if let Verdict::Fails(Some(model)) = v {
                println!("counterexample: {}", model.to_json());
            }
            Ok(code)
        }
        Kind::Tape => {
            let mode = mode_for(&args.common, false)?;
            let env = require(load(&args.common, mode == Mode::Cb)?)?;
            let parse = |s: &str| parse_tape(s, &env.sig, env.table.as_ref()).map_err(err);
            let (t, s) = (parse(l)?, parse(r)?);
            let th = theory(mode, &env.sig)?;
            let holds = if both {
                tape_equiv(&t, &s, th)
            } else {
                tape_leq(&t, &s, th)
            };
            Ok(verdict(holds.map_err(err)?))
        }
        Kind::Circuit => {
            let mode = mode_for(&args.common, false)?;
            let env = require(load(&args.common, mode == Mode::Cb)?)?;
            let parse = |s: &str| parse_circuit(s, &env.sig).map_err(err);
            let (c, d) = (parse(l)?, parse(r)?);
            let holds = match (mode, both) {
                (_, true) => circuits_equal(&c, &d, &env.sig),
                (Mode::Cb, false) => cb_leq(&c, &d, &env.sig),
                (m, false) => Err(tape_diagrams::Error::ModeMismatch(m.name())),
            };
            Ok(verdict(holds.map_err(err)?))
        }
    }
}

fn relation_json(r: &FiniteRelation, interp: &Interpretation) -> Value {
    let single = r.dom.len() == 1 && r.cod.len() == 1;
    let pairs: Vec<Value> = r
        .pairs(interp)
        .into_iter()
        .map(|((a, x), (b, y))| if single { json!([x, y]) } else { json!([[a, x], [b, y]]) })
        .collect();
    json!({ "dom": r.dom.to_string(), "cod": r.cod.to_string(), "pairs": pairs })
}

fn eval(args: &TermArgs, model: &PathBuf) -> Res<ExitCode> {
    let (sig, term) = read_term(args, false)?;
    let text = fs::read_to_string(model).map_err(|e| format!("{}: {e}", model.display()))?;
    let interp = Interpretation::from_json(&text).map_err(err)?;
    interp.validate(&sig).map_err(err)?;
    let r = match term {
        Term::Cr(e) => cr::eval_cr(&e, &sig, &interp),
        Term::Tape(t) => eval_tape(&t, &interp),
        Term::Circuit(c) => eval_circuit(&c, &interp),
    }
    .map_err(err)?;
    println!("{}", serde_json::to_string(&relation_json(&r, &interp)).expect("json"));
    Ok(ExitCode::SUCCESS)
}

fn render(common: &Common, circuit: &str, dot: &Option<PathBuf>) -> Res<ExitCode> {
    let env = require(load(common, false)?)?;
    let c = parse_circuit(circuit, &env.sig).map_err(err)?;
    let text = c.to_hypergraph().map_err(err)?.to_dot();
    match dot {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Res<ExitCode> {
    match &cli.command {
        Command::Parse(args) => parse_cmd(args),
        Command::Normalize { term, json } => normalize(term, *json),
        Command::Decide(args) => decide(args),
        Command::Eval { term, model } => eval(term, model),
        Command::Render { common, circuit, dot } => render(common, circuit, dot),
        Command::Selftest { seed, quick, budget } => {
            let sizes = if *quick { Sizes::quick() } else { Sizes::default() };
            let cfg = SearchConfig {
                budget: *budget,
                seed: *seed,
                ..SearchConfig::default()
            };
            let report = selftest::run_all(*seed, sizes, &cfg);
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{report}");
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
