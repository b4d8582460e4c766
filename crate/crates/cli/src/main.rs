use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nomsup_core::automata::{self, reachable_orbits, validate, RegisterAutomaton};
use nomsup_core::binding::{from_debruijn, parse_debruijn, parse_named, terms_alpha_eq, to_debruijn};
use nomsup_core::freenom::ExtElem;
use nomsup_core::nomrep::{self, default_pool, AtomPool, FinPresentation, PoolQuotient};
use nomsup_core::selfcheck::{selfcheck, DEFAULT_BUDGET};
use nomsup_core::{DBTerm, NamedTerm, Symmetry};

#[derive(Parser)]
#[command(name = "nomsup", version, about = "Nominal sets, binding and register automata at desk scale")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Atom pool size.
    #[arg(long, global = true)]
    pool: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the coherence conditions of a register automaton.
    Validate { automaton: PathBuf },
    /// Run a register automaton on a word file (one atom per line).
    Run { automaton: PathBuf, word: PathBuf },
    /// Count orbits of reachable configurations per location.
    Orbits {
        automaton: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// λ-term conversions.
    #[command(subcommand)]
    Lambda(Lambda),
    /// Queries on a finitely presented nominal set.
    #[command(subcommand)]
    Quot(Quot),
    /// Run the property suites.
    Selfcheck {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum Lambda {
    /// Named term to de Bruijn form.
    ToDb { term: String },
    /// De Bruijn term to a named representative.
    FromDb { term: String },
    /// Decide α-equivalence of two named terms.
    AlphaEq { left: String, right: String },
}

#[derive(Subcommand)]
enum Quot {
    /// Decide whether two elements are identified.
    Eq { presentation: PathBuf, left: String, right: String },
    /// Number of elements with atoms in the pool.
    Count { presentation: PathBuf },
    /// Number of orbits.
    Orbits { presentation: PathBuf },
    /// Least support of an element.
    Supp { presentation: PathBuf, element: String },
}

#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

fn fail(kind: &'static str, e: impl ToString) -> Vec<Failure> {
    vec![Failure { kind, message: e.to_string() }]
}

/// What a command reports: exit code, a text rendering and a JSON value.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

impl Report {
    fn answer(yes: bool, text: impl Into<String>, json: Value) -> Report {
        Report { code: if yes { 0 } else { 1 }, text: text.into(), json }
    }

    fn ok(text: impl Into<String>, json: Value) -> Report {
        Report { code: 0, text: text.into(), json }
    }
}

fn read_json(path: &Path) -> Result<Value, Vec<Failure>> {
    let text = std::fs::read_to_string(path).map_err(|e| fail("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fail("parse", format!("{}: {e}", path.display())))
}

fn load_automaton(path: &Path) -> Result<RegisterAutomaton, Vec<Failure>> {
    RegisterAutomaton::from_json(&read_json(path)?).map_err(|e| fail("parse", e))
}

fn load_valid_automaton(path: &Path) -> Result<RegisterAutomaton, Vec<Failure>> {
    let ra = load_automaton(path)?;
    let issues = validate(&ra);
    if !issues.is_empty() {
        return Err(issues.iter().map(|i| Failure { kind: "validation", message: i.to_string() }).collect());
    }
    Ok(ra)
}

fn load_presentation(path: &Path) -> Result<FinPresentation, Vec<Failure>> {
    FinPresentation::from_json(&read_json(path)?).map_err(|e| fail("parse", e))
}

/// An element given inline as JSON or as a path to a JSON file.
fn load_element(p: &FinPresentation, arg: &str) -> Result<ExtElem, Vec<Failure>> {
    let value = match serde_json::from_str::<Value>(arg) {
        Ok(v) => v,
        Err(_) => read_json(Path::new(arg))?,
    };
    ExtElem::from_json(&value, p.sym, &p.generators).map_err(|e| fail("parse", e))
}

fn named_term(arg: &str) -> Result<NamedTerm, Vec<Failure>> {
    serde_json::from_str(arg).or_else(|_| parse_named(arg)).map_err(|e| fail("parse", e))
}

fn db_term(arg: &str) -> Result<DBTerm, Vec<Failure>> {
    serde_json::from_str(arg).or_else(|_| parse_debruijn(arg)).map_err(|e| fail("parse", e))
}

/// `--pool N` only ever enlarges the default pool.
fn enlarge_to(mut pool: AtomPool, sym: Symmetry, n: Option<usize>) -> AtomPool {
    while pool.len() < n.unwrap_or(0) {
        pool = pool.enlarged(sym);
    }
    pool
}

/// Pool for whole-set queries: exactly `{0, …, N−1}` when given.
fn counting_pool(p: &FinPresentation, n: Option<usize>) -> AtomPool {
    match n {
        Some(n) => AtomPool::first(p.sym, n),
        None => default_pool(p, &[]),
    }
}

fn atoms_json(s: &nomsup_core::Support) -> Value {
    serde_json::to_value(s).expect("supports serialize")
}

fn dispatch(g: &Global, cmd: &Command) -> Result<Report, Vec<Failure>> {
    match cmd {
        Command::Validate { automaton } => {
            let ra = load_automaton(automaton)?;
            let issues = validate(&ra);
            if issues.is_empty() {
                Ok(Report::ok("ok", json!({ "valid": true, "issues": [] })))
            } else {
                Err(issues.iter().map(|i| Failure { kind: "validation", message: i.to_string() }).collect())
            }
        }
        Command::Run { automaton, word } => {
            let ra = load_valid_automaton(automaton)?;
            let text = std::fs::read_to_string(word).map_err(|e| fail("io", format!("{}: {e}", word.display())))?;
            let w = automata::parse_word(ra.sym, &text).map_err(|e| fail("parse", e))?;
            let out = automata::run(&ra, &w).map_err(|e| fail("run", e))?;
            let verdict = if out.accepted { "accept" } else { "reject" };
            let finals: Vec<Value> = out.finals.iter().map(|c| c.to_json(&ra)).collect();
            let json = json!({
                "accepted": out.accepted,
                "frontier": out.frontier,
                "dropped": out.dropped,
                "final_configs": finals,
            });
            let mut text = verdict.to_string();
            if out.dropped > 0 {
                text.push_str(&format!("\n{} successors dropped for inadmissible valuations", out.dropped));
            }
            Ok(Report::answer(out.accepted, text, json))
        }
        Command::Orbits { automaton, depth } => {
            let ra = load_valid_automaton(automaton)?;
            let needed = ra.locations.max_support_size() + 2;
            let pool = AtomPool::first(ra.sym, needed.max(g.pool.unwrap_or(0)));
            let s = reachable_orbits(&ra, &pool, *depth).map_err(|e| fail("orbits", e))?;
            let mut text = format!("total {}", s.total);
            for (loc, n) in &s.per_location {
                text.push_str(&format!("\n{loc} {n}"));
            }
            let json = json!({ "pool": atoms_json(pool.atoms()), "depth": depth, "summary": s });
            Ok(Report::ok(text, json))
        }
        Command::Lambda(Lambda::ToDb { term }) => {
            let t = to_debruijn(&named_term(term)?);
            Ok(Report::ok(t.to_string(), json!({ "term": t, "text": t.to_string() })))
        }
        Command::Lambda(Lambda::FromDb { term }) => {
            let t = from_debruijn(&db_term(term)?);
            Ok(Report::ok(t.to_string(), json!({ "term": t, "text": t.to_string() })))
        }
        Command::Lambda(Lambda::AlphaEq { left, right }) => {
            let eq = terms_alpha_eq(&named_term(left)?, &named_term(right)?);
            let text = if eq { "alpha-equivalent" } else { "not alpha-equivalent" };
            Ok(Report::answer(eq, text, json!({ "alpha_equivalent": eq })))
        }
        Command::Quot(q) => quot(g, q),
        Command::Selfcheck { budget } => {
            let r = selfcheck(g.seed, *budget);
            let mut lines = Vec::new();
            for s in &r.suites {
                lines.push(format!("{:<28} {:>5} cases  {} failures", s.name, s.cases, s.failures.len()));
                lines.extend(s.failures.iter().map(|f| format!("  {f}")));
            }
            let json = serde_json::to_value(&r).expect("report serializes");
            Ok(Report { code: if r.passed() { 0 } else { 1 }, text: lines.join("\n"), json })
        }
    }
}

fn quot(g: &Global, q: &Quot) -> Result<Report, Vec<Failure>> {
    match q {
        Quot::Eq { presentation, left, right } => {
            let p = load_presentation(presentation)?;
            let (l, r) = (load_element(&p, left)?, load_element(&p, right)?);
            let pool = enlarge_to(default_pool(&p, &[l.clone(), r.clone()]), p.sym, g.pool);
            let eq = nomrep::quot_eq(&p, &l, &r, &pool).map_err(|e| fail("quot", e))?;
            Ok(Report::answer(eq, eq.to_string(), json!({ "equal": eq, "pool": atoms_json(pool.atoms()) })))
        }
        Quot::Count { presentation } => {
            let p = load_presentation(presentation)?;
            let pool = counting_pool(&p, g.pool);
            let n = PoolQuotient::build(&p, pool.clone()).element_count();
            Ok(Report::ok(n.to_string(), json!({ "count": n, "pool": atoms_json(pool.atoms()) })))
        }
        Quot::Orbits { presentation } => {
            let p = load_presentation(presentation)?;
            let pool = counting_pool(&p, g.pool);
            let n = nomrep::orbit_count(&p, &pool).map_err(|e| fail("quot", e))?;
            Ok(Report::ok(n.to_string(), json!({ "orbits": n, "pool": atoms_json(pool.atoms()) })))
        }
        Quot::Supp { presentation, element } => {
            let p = load_presentation(presentation)?;
            let e = load_element(&p, element)?;
            let pool = enlarge_to(default_pool(&p, std::slice::from_ref(&e)), p.sym, g.pool);
            let s = nomrep::supp_of(&p, &e, &pool).map_err(|e| fail("quot", e))?;
            Ok(Report::ok(s.to_string(), json!({ "support": atoms_json(&s), "pool": atoms_json(pool.atoms()) })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_out = cli.global.format == Format::Json;
    match dispatch(&cli.global, &cli.command) {
        Ok(r) => {
            if json_out {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("json output"));
            } else if !r.text.is_empty() {
                println!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(errors) => {
            if json_out {
                let list: Vec<Value> = errors.iter().map(|e| json!({ "kind": e.kind, "message": e.message })).collect();
                println!("{}", serde_json::to_string_pretty(&json!({ "errors": list })).expect("json output"));
            } else {
                for e in &errors {
                    eprintln!("error[{}]: {}", e.kind, e.message);
                }
            }
            ExitCode::from(2)
        }
    }
}
