use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn nomsup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nomsup")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn word_file(dir: &tempfile::TempDir, name: &str, atoms: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, atoms.join("\n")).unwrap();
    path
}

#[test]
fn run_first_repeat_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let ra = data("first_repeat.json");
    let accept = word_file(&dir, "a.txt", &["5", "3", "5"]);
    let o = nomsup(&["run", ra.to_str().unwrap(), accept.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "accept");
    let reject = word_file(&dir, "r.txt", &["5", "3", "4"]);
    let o = nomsup(&["run", ra.to_str().unwrap(), reject.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "reject");
    let empty = word_file(&dir, "e.txt", &[]);
    assert_eq!(nomsup(&["run", ra.to_str().unwrap(), empty.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn run_increasing_with_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let ra = data("increasing.json");
    let w = word_file(&dir, "w.txt", &["-1", "1/2", "3"]);
    let o = nomsup(&["run", ra.to_str().unwrap(), w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let w = word_file(&dir, "w2.txt", &["1/2", "1/3"]);
    assert_eq!(nomsup(&["run", ra.to_str().unwrap(), w.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn quot_examples() {
    let p = data("pairs.json");
    let p = p.to_str().unwrap();
    let o = nomsup(&["quot", "count", p, "--pool", "3"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "3".to_string()));
    let o = nomsup(&["quot", "orbits", p, "--pool", "3"]);
    assert_eq!(stdout(&o), "1");
    let e47 = r#"{"pi": {"0": 4, "1": 7}, "base": "g"}"#;
    let e74 = r#"{"pi": {"0": 7, "1": 4}, "base": "g"}"#;
    let e48 = r#"{"pi": {"0": 4, "1": 8}, "base": "g"}"#;
    assert_eq!(nomsup(&["quot", "eq", p, e47, e74]).status.code(), Some(0));
    let o = nomsup(&["quot", "eq", p, e47, e48]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "false".to_string()));
    assert_eq!(stdout(&nomsup(&["quot", "supp", p, e47])), "{4, 7}");
}

#[test]
fn pool_override_never_shrinks_the_default() {
    let p = data("pairs.json");
    let e47 = r#"{"pi": {"0": 4, "1": 7}, "base": "g"}"#;
    let e74 = r#"{"pi": {"0": 7, "1": 4}, "base": "g"}"#;
    let o = nomsup(&["--format", "json", "quot", "eq", p.to_str().unwrap(), e47, e74, "--pool", "1"]);
    let pool = json(&o)["pool"].as_array().unwrap().len();
    assert!(pool >= 5, "pool of {pool}");
    let o = nomsup(&["--format", "json", "quot", "eq", p.to_str().unwrap(), e47, e74, "--pool", "12"]);
    assert_eq!(json(&o)["pool"].as_array().unwrap().len(), 12);
}

#[test]
fn lambda_commands() {
    let o = nomsup(&["lambda", "alpha-eq", r"\v0. v0 v2", r"\v1. v1 v2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "alpha-equivalent".to_string()));
    let o = nomsup(&["lambda", "alpha-eq", r"\v0. v0 v2", r"\v2. v2 v2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&nomsup(&["lambda", "to-db", r"\v0. v0 v2"])), r"\ #0 #3");
    let o = nomsup(&["lambda", "from-db", r"\ #0 #3"]);
    assert_eq!(o.status.code(), Some(0));
    let back = nomsup(&["lambda", "alpha-eq", &stdout(&o), r"\v7. v7 v2"]);
    assert_eq!(back.status.code(), Some(0));
}

#[test]
fn json_output_reparses() {
    use nomsup_core::{DBTerm, NamedTerm, RegisterAutomaton};
    let o = nomsup(&["--format", "json", "lambda", "to-db", r"\v0. \v1. v1 (v0 v4)"]);
    let t: DBTerm = serde_json::from_value(json(&o)["term"].clone()).unwrap();
    assert_eq!(t.to_string(), json(&o)["text"].as_str().unwrap());
    // the emitted term is accepted back as input
    let again = nomsup(&["--format", "json", "lambda", "from-db", &serde_json::to_string(&json(&o)["term"]).unwrap()]);
    let n: NamedTerm = serde_json::from_value(json(&again)["term"].clone()).unwrap();
    assert_eq!(n.to_string(), json(&again)["text"].as_str().unwrap());

    let dir = tempfile::tempdir().unwrap();
    let ra_path = data("first_repeat.json");
    let w = word_file(&dir, "w.txt", &["2", "9", "2"]);
    let o = nomsup(&["--format", "json", "run", ra_path.to_str().unwrap(), w.to_str().unwrap()]);
    let ra = RegisterAutomaton::from_json(&serde_json::from_str(&std::fs::read_to_string(&ra_path).unwrap()).unwrap())
        .unwrap();
    let finals = json(&o)["final_configs"].as_array().unwrap().clone();
    assert_eq!(finals.len(), 1);
    let c = nomsup_core::Config::from_json(&finals[0], &ra).unwrap();
    assert_eq!(c.to_json(&ra), finals[0]);

    let o = nomsup(&["--format", "json", "selfcheck", "--budget", "3", "--seed", "4"]);
    let v = json(&o);
    let re: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, re);
}

#[test]
fn validation_errors_exit_two_with_error_list() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(data("first_repeat.json")).unwrap()).unwrap();
    j["initial"] = "q1".into();
    std::fs::write(&bad, j.to_string()).unwrap();
    let o = nomsup(&["--format", "json", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let errors = json(&o)["errors"].as_array().unwrap().clone();
    assert!(errors.iter().any(|e| e["message"].as_str().unwrap().contains("initial not uninitialized")));

    let w = word_file(&dir, "w.txt", &["1"]);
    assert_eq!(nomsup(&["run", bad.to_str().unwrap(), w.to_str().unwrap()]).status.code(), Some(2));
    let garbage = word_file(&dir, "g.json", &["{not json"]);
    assert_eq!(nomsup(&["validate", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(nomsup(&["lambda", "to-db", r"\v0."]).status.code(), Some(2));
    assert_eq!(nomsup(&["validate", data("first_repeat.json").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn orbits_command() {
    let o = nomsup(&["--format", "json", "orbits", data("first_repeat.json").to_str().unwrap(), "--pool", "3"]);
    let per = &json(&o)["summary"]["per_location"];
    assert_eq!(per, &serde_json::json!({"q0": 1, "q1": 1, "qa": 1}));
    let o = nomsup(&["orbits", data("first_repeat.json").to_str().unwrap(), "--depth", "0"]);
    assert_eq!(stdout(&o), "total 1\nq0 1");
}

#[test]
fn selfcheck_budget_and_determinism() {
    let o = nomsup(&["selfcheck", "--budget", "0"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), String::new()));
    let a = nomsup(&["--format", "json", "selfcheck", "--seed", "11", "--budget", "25"]);
    let b = nomsup(&["--format", "json", "selfcheck", "--seed", "11", "--budget", "25"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
