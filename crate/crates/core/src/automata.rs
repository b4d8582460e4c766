//! Register automata as coalgebras in supported sets, their configuration
//! semantics, and the generic determinization with its two instances.
//!
//! A location `q` carries a support `s(q)` naming its registers. A
//! transition from `q` reads one input value, tests a guard over the input
//! and the registers of `q`, and moves to `q'` with an assignment
//! `s(q') ↣ {input} ∪ s(q)`. A configuration is an element of `Ext Q`: a
//! location together with an admissible valuation of its registers.
//!
//! [`determinize_generic`] is written once against [`FreeExtension`]; the
//! powerset instance gives the subset construction for finite automata and
//! the `Ext` instance gives [`step`] and [`run`].

use std::collections::{BTreeMap, BTreeSet};
use std::convert::Infallible;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atoms::{Atom, AtomError, FiniteMap, GlobalMap, Support, Symmetry};
use crate::binding::b_support;
use crate::freenom::{ExtElem, Extension, FreeError, NominalCarrier, RestrictedMap};
use crate::nomrep::AtomPool;
use crate::suppset::{ElemId, SuppError, SuppSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error(transparent)]
    Atom(#[from] AtomError),
    #[error(transparent)]
    Supp(#[from] SuppError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("unresolved register {0}")]
    UnresolvedRegister(Atom),
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("valuation {valuation} does not match the registers {registers} of {location}")]
    BadConfig { location: String, registers: Support, valuation: FiniteMap },
    #[error("operation requires a group symmetry, found {0}")]
    NotAGroup(Symmetry),
    #[error("malformed word at line {line}: {msg}")]
    Word { line: usize, msg: String },
}

/// Relation names with arities, interpreted over the atoms of a symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub sym: Symmetry,
    pub relations: BTreeMap<String, usize>,
}

impl Signature {
    /// `eq/2` for every symmetry, plus `lt/2` for the order symmetry.
    pub fn for_symmetry(sym: Symmetry) -> Signature {
        let mut relations = BTreeMap::from([("eq".to_string(), 2)]);
        if sym == Symmetry::TotalOrder {
            relations.insert("lt".to_string(), 2);
        }
        Signature { sym, relations }
    }

    pub fn arity(&self, rel: &str) -> Option<usize> {
        self.relations.get(rel).copied()
    }

    pub fn interpret(&self, rel: &str, args: &[Atom]) -> Result<bool, AutomatonError> {
        if self.arity(rel) != Some(args.len()) {
            return Err(AutomatonError::UnknownRelation(rel.to_string()));
        }
        match rel {
            "eq" => Ok(args[0] == args[1]),
            "lt" => Ok(args[0].as_rational() < args[1].as_rational()),
            _ => Err(AutomatonError::UnknownRelation(rel.to_string())),
        }
    }
}

/// The input value or a register of the source location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegRef {
    Input,
    Reg(Atom),
}

impl RegRef {
    fn map_reg(self, f: impl Fn(Atom) -> Atom) -> RegRef {
        match self {
            RegRef::Input => RegRef::Input,
            RegRef::Reg(a) => RegRef::Reg(f(a)),
        }
    }

    fn coerce(self, sym: Symmetry) -> Result<RegRef, AtomError> {
        Ok(match self {
            RegRef::Input => RegRef::Input,
            RegRef::Reg(a) => RegRef::Reg(a.coerce(sym)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(bool, String, Vec<RegRef>)", into = "(bool, String, Vec<RegRef>)")]
pub struct Literal {
    pub positive: bool,
    pub rel: String,
    pub args: Vec<RegRef>,
}

impl From<(bool, String, Vec<RegRef>)> for Literal {
    fn from((positive, rel, args): (bool, String, Vec<RegRef>)) -> Self {
        Literal { positive, rel, args }
    }
}

impl From<Literal> for (bool, String, Vec<RegRef>) {
    fn from(l: Literal) -> Self {
        (l.positive, l.rel, l.args)
    }
}

impl Literal {
    pub fn pos(rel: &str, args: Vec<RegRef>) -> Literal {
        Literal { positive: true, rel: rel.to_string(), args }
    }

    pub fn neg(rel: &str, args: Vec<RegRef>) -> Literal {
        Literal { positive: false, rel: rel.to_string(), args }
    }
}

/// A conjunction of literals; the empty guard is true.
pub type Guard = Vec<Literal>;

fn guard_registers(g: &Guard) -> Support {
    g.iter()
        .flat_map(|l| l.args.iter())
        .filter_map(|r| match r {
            RegRef::Reg(a) => Some(*a),
            RegRef::Input => None,
        })
        .collect()
}

fn eval_with(
    sig: &Signature,
    g: &Guard,
    resolve: impl Fn(RegRef) -> Result<Atom, AutomatonError>,
) -> Result<bool, AutomatonError> {
    for lit in g {
        let args = lit.args.iter().map(|&r| resolve(r)).collect::<Result<Vec<_>, _>>()?;
        if sig.interpret(&lit.rel, &args)? != lit.positive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates `g` with `Input ↦ input` and `Reg(a) ↦ val(a)`.
pub fn eval_guard(sig: &Signature, g: &Guard, val: &RestrictedMap, input: Atom) -> Result<bool, AutomatonError> {
    eval_with(sig, g, |r| match r {
        RegRef::Input => Ok(input),
        RegRef::Reg(a) => val.get(&a).ok_or(AutomatonError::UnresolvedRegister(a)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub guard: Guard,
    pub target: ElemId,
    /// Where each register of the target takes its value from.
    pub assign: BTreeMap<Atom, RegRef>,
}

impl Transition {
    fn act(&self, g: &GlobalMap) -> Transition {
        Transition {
            guard: self
                .guard
                .iter()
                .map(|l| Literal { args: l.args.iter().map(|r| r.map_reg(|a| g.apply(a))).collect(), ..l.clone() })
                .collect(),
            target: self.target,
            assign: self.assign.iter().map(|(&k, r)| (k, r.map_reg(|a| g.apply(a)))).collect(),
        }
    }

    /// Registers of the source location the transition refers to.
    pub fn registers(&self) -> Support {
        let mut s = guard_registers(&self.guard);
        s.extend(self.assign.values().filter_map(|r| match r {
            RegRef::Reg(a) => Some(*a),
            RegRef::Input => None,
        }));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterAutomaton {
    pub sym: Symmetry,
    pub locations: SuppSet,
    pub initial: ElemId,
    pub finals: Vec<bool>,
    pub transitions: Vec<Vec<Transition>>,
}

#[derive(Serialize, Deserialize)]
struct TransitionJson {
    from: String,
    #[serde(default)]
    guard: Guard,
    to: String,
    #[serde(default)]
    assign: BTreeMap<Atom, RegRef>,
}

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    symmetry: Symmetry,
    locations: SuppSet,
    initial: String,
    #[serde(rename = "final")]
    finals: Vec<String>,
    transitions: Vec<TransitionJson>,
}

impl RegisterAutomaton {
    pub fn signature(&self) -> Signature {
        Signature::for_symmetry(self.sym)
    }

    pub fn is_final(&self, loc: ElemId) -> bool {
        self.finals[loc]
    }

    pub fn location(&self, name: &str) -> Result<ElemId, AutomatonError> {
        Ok(self.locations.lookup(name)?)
    }

    /// Parses the JSON format; invariants are left to [`validate`].
    pub fn from_json(value: &serde_json::Value) -> Result<RegisterAutomaton, AutomatonError> {
        let j: AutomatonJson =
            serde_json::from_value(value.clone()).map_err(|e| AutomatonError::Malformed(e.to_string()))?;
        let sym = j.symmetry;
        let locations = SuppSet::new(
            j.locations
                .elements()
                .iter()
                .map(|e| Ok((e.id.clone(), e.support.iter().map(|a| a.coerce(sym)).collect::<Result<Support, _>>()?)))
                .collect::<Result<Vec<_>, AtomError>>()?,
        )?;
        let initial = locations.lookup(&j.initial)?;
        let mut finals = vec![false; locations.len()];
        for f in &j.finals {
            finals[locations.lookup(f)?] = true;
        }
        let mut transitions = vec![Vec::new(); locations.len()];
        for t in j.transitions {
            let from = locations.lookup(&t.from)?;
            let guard = t
                .guard
                .into_iter()
                .map(|l| {
                    Ok(Literal { args: l.args.into_iter().map(|r| r.coerce(sym)).collect::<Result<_, _>>()?, ..l })
                })
                .collect::<Result<Guard, AtomError>>()?;
            let assign = t
                .assign
                .into_iter()
                .map(|(k, r)| Ok((k.coerce(sym)?, r.coerce(sym)?)))
                .collect::<Result<_, AtomError>>()?;
            transitions[from].push(Transition { guard, target: locations.lookup(&t.to)?, assign });
        }
        Ok(RegisterAutomaton { sym, locations, initial, finals, transitions })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |q: ElemId| self.locations.name(q).to_string();
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .flat_map(|(q, ts)| {
                ts.iter().map(move |t| TransitionJson {
                    from: name(q),
                    guard: t.guard.clone(),
                    to: name(t.target),
                    assign: t.assign.clone(),
                })
            })
            .collect();
        let j = AutomatonJson {
            symmetry: self.sym,
            locations: self.locations.clone(),
            initial: name(self.initial),
            finals: self.locations.ids().filter(|&q| self.finals[q]).map(name).collect(),
            transitions,
        };
        serde_json::to_value(j).expect("automaton serializes")
    }
}

/// One violated condition found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub location: String,
    pub transition: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.transition {
            Some(i) => write!(f, "{} transition {}: {}", self.location, i, self.message),
            None => write!(f, "{}: {}", self.location, self.message),
        }
    }
}

/// Checks the coherence conditions; an empty list means valid.
pub fn validate(ra: &RegisterAutomaton) -> Vec<Issue> {
    let sig = ra.signature();
    let mut issues = Vec::new();
    let mut report = |q: ElemId, t: Option<usize>, message: String| {
        issues.push(Issue { location: ra.locations.name(q).to_string(), transition: t, message })
    };
    if !ra.locations.support(ra.initial).is_empty() {
        report(ra.initial, None, "initial not uninitialized".to_string());
    }
    for (q, ts) in ra.transitions.iter().enumerate() {
        let src = ra.locations.support(q);
        for (i, t) in ts.iter().enumerate() {
            let at = Some(i);
            for lit in &t.guard {
                match sig.arity(&lit.rel) {
                    None => report(q, at, format!("unknown relation {}", lit.rel)),
                    Some(n) if n != lit.args.len() => {
                        report(q, at, format!("relation {} has arity {} but {} arguments", lit.rel, n, lit.args.len()))
                    }
                    _ => {}
                }
            }
            let guard_regs = guard_registers(&t.guard);
            if !guard_regs.is_subset(src) {
                report(q, at, format!("guard register outside source support: {}", guard_regs.difference(src)));
            }
            let dom: Support = t.assign.keys().copied().collect();
            let tgt = ra.locations.support(t.target);
            if &dom != tgt {
                report(q, at, format!("assignment domain {dom} differs from target support {tgt}"));
            }
            let values: BTreeSet<RegRef> = t.assign.values().copied().collect();
            if values.len() != t.assign.len() {
                report(q, at, "assignment not injective".to_string());
            }
            let used = t.registers();
            if !used.is_subset(src) {
                report(q, at, format!("assignment register outside source support: {}", used.difference(src)));
            }
            if let Some(shifted) = shifted_support(t) {
                if !b_support(&shifted).is_subset(src) {
                    report(q, at, format!("transition support {} not contained in source", b_support(&shifted)));
                }
            }
        }
    }
    if ra.finals.len() != ra.locations.len() || ra.transitions.len() != ra.locations.len() {
        issues.push(Issue {
            location: String::new(),
            transition: None,
            message: "location tables out of sync".to_string(),
        });
    }
    issues
}

/// The atoms of a transition encoded under the binder: `Input ↦ ρ(0)` and
/// `Reg(ρ(k)) ↦ ρ(k+1)`. Only defined for natural-number registers.
fn shifted_support(t: &Transition) -> Option<Support> {
    let mut s = Support::new();
    let refs = t.guard.iter().flat_map(|l| l.args.iter()).chain(t.assign.values());
    for r in refs {
        match r {
            RegRef::Input => s.insert(Atom::Nat(0)),
            RegRef::Reg(a) => s.insert(Atom::Nat(a.as_nat()? + 1)),
        };
    }
    Some(s)
}

/// A location with an admissible valuation of its registers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub loc: ElemId,
    pub valuation: RestrictedMap,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    loc: String,
    valuation: FiniteMap,
}

impl Config {
    pub fn new(ra: &RegisterAutomaton, loc: ElemId, valuation: FiniteMap) -> Result<Config, AutomatonError> {
        let registers = ra.locations.support(loc);
        if &valuation.domain() != registers {
            return Err(AutomatonError::BadConfig {
                location: ra.locations.name(loc).to_string(),
                registers: registers.clone(),
                valuation,
            });
        }
        Ok(Config { loc, valuation: RestrictedMap::new(ra.sym, valuation)? })
    }

    pub fn initial(ra: &RegisterAutomaton) -> Config {
        Config { loc: ra.initial, valuation: RestrictedMap::identity(ra.sym, &Support::new()) }
    }

    /// `ℓ · (q, v) = (q, ℓ ∘ v)`.
    pub fn act(&self, g: &GlobalMap) -> Result<Config, AutomatonError> {
        Ok(Config { loc: self.loc, valuation: self.valuation.post(g)? })
    }

    pub fn as_ext(&self) -> ExtElem {
        ExtElem { pi: self.valuation.clone(), base: self.loc }
    }

    pub fn to_json(&self, ra: &RegisterAutomaton) -> serde_json::Value {
        let j = ConfigJson { loc: ra.locations.name(self.loc).to_string(), valuation: self.valuation.map().clone() };
        serde_json::to_value(j).expect("config serializes")
    }

    pub fn from_json(value: &serde_json::Value, ra: &RegisterAutomaton) -> Result<Config, AutomatonError> {
        let j: ConfigJson =
            serde_json::from_value(value.clone()).map_err(|e| AutomatonError::Malformed(e.to_string()))?;
        let valuation = FiniteMap::from_pairs(
            j.valuation
                .iter()
                .map(|(a, b)| Ok((a.coerce(ra.sym)?, b.coerce(ra.sym)?)))
                .collect::<Result<Vec<_>, AtomError>>()?,
        );
        Config::new(ra, ra.location(&j.loc)?, valuation)
    }

    pub fn display<'a>(&'a self, ra: &'a RegisterAutomaton) -> String {
        format!("({}, {})", ra.locations.name(self.loc), self.valuation)
    }
}

/// A monad on states together with the free extension of maps into the
/// lifted behaviour functor: for `c: Q → H T Q`, `extend(c, t)` is the
/// unique structure-preserving `T Q → H T Q` with `extend(c, unit(q)) = c(q)`.
pub trait FreeExtension {
    /// Elements of `T Q` over the states `0..n`.
    type Elem;
    /// Elements of `H T Q`.
    type Value;
    type Error;

    fn unit(&self, q: usize) -> Self::Elem;
    fn extend(&self, c: &[Self::Value], t: &Self::Elem) -> Result<Self::Value, Self::Error>;
}

/// The determinized coalgebra `d: T Q → H T Q` induced by `c`.
pub struct Determinized<'m, M: FreeExtension> {
    monad: &'m M,
    c: Vec<M::Value>,
}

impl<M: FreeExtension> Determinized<'_, M> {
    pub fn d(&self, t: &M::Elem) -> Result<M::Value, M::Error> {
        self.monad.extend(&self.c, t)
    }

    pub fn coalgebra(&self) -> &[M::Value] {
        &self.c
    }
}

pub fn determinize_generic<M: FreeExtension>(monad: &M, c: Vec<M::Value>) -> Determinized<'_, M> {
    Determinized { monad, c }
}

/// Finite powersets over a discrete state set, with `H X = 2 × X^Σ` lifted
/// to join-semilattices: finality is the join, successors are unions.
pub struct Powerset {
    pub letters: usize,
}

/// `(final, successor set per letter)`.
pub type PowerStep = (bool, Vec<BTreeSet<usize>>);

impl FreeExtension for Powerset {
    type Elem = BTreeSet<usize>;
    type Value = PowerStep;
    type Error = Infallible;

    fn unit(&self, q: usize) -> BTreeSet<usize> {
        BTreeSet::from([q])
    }

    fn extend(&self, c: &[PowerStep], t: &BTreeSet<usize>) -> Result<PowerStep, Infallible> {
        let mut out = (false, vec![BTreeSet::new(); self.letters]);
        for &q in t {
            out.0 |= c[q].0;
            for (acc, next) in out.1.iter_mut().zip(&c[q].1) {
                acc.extend(next.iter().copied());
            }
        }
        Ok(out)
    }
}

/// A nondeterministic finite automaton over letters `0..letters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub letters: usize,
    pub initial: BTreeSet<usize>,
    pub finals: Vec<bool>,
    pub delta: Vec<Vec<BTreeSet<usize>>>,
}

impl Nfa {
    pub fn states(&self) -> usize {
        self.finals.len()
    }

    /// The coalgebra `c: Q → 2 × (P_f Q)^Σ`.
    pub fn coalgebra(&self) -> Vec<PowerStep> {
        (0..self.states()).map(|q| (self.finals[q], self.delta[q].clone())).collect()
    }

    /// Acceptance through the determinized coalgebra.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let monad = Powerset { letters: self.letters };
        let det = determinize_generic(&monad, self.coalgebra());
        let d = |s: &BTreeSet<usize>| match det.d(s) {
            Ok(v) => v,
            Err(e) => match e {},
        };
        let mut cur = self.initial.clone();
        for &a in word {
            cur = d(&cur).1[a].clone();
        }
        d(&cur).0
    }
}

/// The outgoing behaviour of one location with its registers as symbols:
/// finality and the transitions, with `Reg(a)` naming register `a`.
/// Acting by `m` renames the registers, so after extending along a
/// valuation `Reg(v)` names the stored value `v` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymStep {
    pub accepting: bool,
    pub branches: Vec<Transition>,
}

struct SymSteps(Symmetry);

impl NominalCarrier for SymSteps {
    type Value = SymStep;

    fn symmetry(&self) -> Symmetry {
        self.0
    }

    fn equal(&self, a: &SymStep, b: &SymStep) -> bool {
        a == b
    }

    fn act(&self, g: &GlobalMap, v: &SymStep) -> SymStep {
        SymStep { accepting: v.accepting, branches: v.branches.iter().map(|t| t.act(g)).collect() }
    }

    fn supp(&self, v: &SymStep) -> Support {
        v.branches.iter().fold(Support::new(), |acc, t| acc.union(&t.registers()))
    }
}

/// `Ext` over the locations of a register automaton.
pub struct ExtMonad<'a> {
    pub ra: &'a RegisterAutomaton,
}

impl FreeExtension for ExtMonad<'_> {
    type Elem = Config;
    type Value = SymStep;
    type Error = AutomatonError;

    fn unit(&self, q: usize) -> Config {
        Config { loc: q, valuation: RestrictedMap::identity(self.ra.sym, self.ra.locations.support(q)) }
    }

    fn extend(&self, c: &[SymStep], t: &Config) -> Result<SymStep, AutomatonError> {
        let carrier = SymSteps(self.ra.sym);
        let ext = Extension::new(&carrier, &self.ra.locations, |q| c[q].clone())?;
        Ok(ext.apply(&t.as_ext())?)
    }
}

impl RegisterAutomaton {
    /// The coalgebra `Q → H Ext Q` read off the transition table.
    pub fn coalgebra(&self) -> Vec<SymStep> {
        self.locations
            .ids()
            .map(|q| SymStep { accepting: self.finals[q], branches: self.transitions[q].clone() })
            .collect()
    }
}

/// Successor configurations, plus the number of successors discarded for
/// an inadmissible valuation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepResult {
    pub configs: BTreeSet<Config>,
    pub dropped: usize,
}

fn concretize(
    ra: &RegisterAutomaton,
    sig: &Signature,
    s: &SymStep,
    input: Atom,
    out: &mut StepResult,
) -> Result<(), AutomatonError> {
    let resolve = |r: RegRef| match r {
        RegRef::Input => input,
        RegRef::Reg(v) => v,
    };
    for t in &s.branches {
        if !eval_with(sig, &t.guard, |r| Ok(resolve(r)))? {
            continue;
        }
        let val = FiniteMap::from_pairs(t.assign.iter().map(|(&k, &r)| (k, resolve(r))));
        match RestrictedMap::new(ra.sym, val) {
            Ok(valuation) => {
                out.configs.insert(Config { loc: t.target, valuation });
            }
            Err(FreeError::NotAdmissible { .. }) => out.dropped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

/// Successors of `c` on `input`. Under the equality and order symmetries a
/// valuation must be injective (resp. monotone); successors that would
/// store a value twice are dropped and counted. Storing duplicates needs
/// the renaming symmetry.
pub fn step(ra: &RegisterAutomaton, c: &Config, input: Atom) -> Result<StepResult, AutomatonError> {
    let monad = ExtMonad { ra };
    let det = determinize_generic(&monad, ra.coalgebra());
    let mut out = StepResult::default();
    concretize(ra, &ra.signature(), &det.d(c)?, input.coerce(ra.sym)?, &mut out)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub accepted: bool,
    /// Number of configurations after each prefix, starting with the empty one.
    pub frontier: Vec<usize>,
    pub dropped: usize,
    pub finals: BTreeSet<Config>,
}

/// Tracks the set of reachable configurations from the initial one and
/// accepts iff a final location is reached after the whole word.
pub fn run(ra: &RegisterAutomaton, word: &[Atom]) -> Result<RunOutcome, AutomatonError> {
    let monad = ExtMonad { ra };
    let det = determinize_generic(&monad, ra.coalgebra());
    let sig = ra.signature();
    let mut cur = BTreeSet::from([Config::initial(ra)]);
    let mut frontier = vec![1];
    let mut dropped = 0;
    for &a in word {
        let a = a.coerce(ra.sym)?;
        let mut next = StepResult::default();
        for c in &cur {
            concretize(ra, &sig, &det.d(c)?, a, &mut next)?;
        }
        dropped += next.dropped;
        cur = next.configs;
        frontier.push(cur.len());
    }
    let finals: BTreeSet<Config> = cur.into_iter().filter(|c| ra.finals[c.loc]).collect();
    Ok(RunOutcome { accepted: !finals.is_empty(), frontier, dropped, finals })
}

pub fn accepts(ra: &RegisterAutomaton, word: &[Atom]) -> Result<bool, AutomatonError> {
    Ok(run(ra, word)?.accepted)
}

/// Parses a word file: one atom per line, blank lines and `#` comments
/// ignored.
pub fn parse_word(sym: Symmetry, text: &str) -> Result<Vec<Atom>, AutomatonError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| Atom::parse_in(sym, l).map_err(|e| AutomatonError::Word { line: i + 1, msg: e.to_string() }))
        .collect()
}

/// Orbit invariant of a configuration under the whole group: the location
/// and the equality (or order) type of the stored values in register order.
pub fn orbit_key(c: &Config) -> (ElemId, Vec<usize>) {
    let values: Vec<Atom> = c.valuation.map().iter().map(|(_, v)| v).collect();
    let mut distinct = values.clone();
    distinct.sort();
    distinct.dedup();
    let ranks = values.iter().map(|v| distinct.binary_search(v).expect("value present")).collect();
    (c.loc, ranks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub total: usize,
    pub configs: usize,
    pub per_location: BTreeMap<String, usize>,
}

/// Orbits of the configurations reachable within `depth` steps on inputs
/// drawn from `pool`.
pub fn reachable_orbits(ra: &RegisterAutomaton, pool: &AtomPool, depth: usize) -> Result<OrbitSummary, AutomatonError> {
    if !ra.sym.is_group() {
        return Err(AutomatonError::NotAGroup(ra.sym));
    }
    let monad = ExtMonad { ra };
    let det = determinize_generic(&monad, ra.coalgebra());
    let sig = ra.signature();
    let mut seen = BTreeSet::from([Config::initial(ra)]);
    let mut layer = seen.clone();
    for _ in 0..depth {
        let mut next = StepResult::default();
        for c in &layer {
            let behaviour = det.d(c)?;
            for &a in pool.atoms().iter() {
                concretize(ra, &sig, &behaviour, a, &mut next)?;
            }
        }
        layer = next.configs.into_iter().filter(|c| !seen.contains(c)).collect();
        seen.extend(layer.iter().cloned());
    }
    let keys: BTreeSet<_> = seen.iter().map(orbit_key).collect();
    let mut per_location = BTreeMap::new();
    for (loc, _) in &keys {
        *per_location.entry(ra.locations.name(*loc).to_string()).or_insert(0) += 1;
    }
    Ok(OrbitSummary { total: keys.len(), configs: seen.len(), per_location })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shipped;

    fn n(k: u64) -> Atom {
        Atom::Nat(k)
    }

    fn word(ws: &[u64]) -> Vec<Atom> {
        ws.iter().map(|&k| n(k)).collect()
    }

    fn cfg(ra: &RegisterAutomaton, loc: &str, val: &[(u64, u64)]) -> Config {
        Config::new(ra, ra.location(loc).unwrap(), FiniteMap::nats(val.iter().copied())).unwrap()
    }

    #[test]
    fn first_repeat_is_valid() {
        assert_eq!(validate(&shipped::first_repeat()), vec![]);
        assert_eq!(validate(&shipped::increasing()), vec![]);
    }

    #[test]
    fn initial_with_registers_rejected() {
        let mut j = shipped::first_repeat().to_json();
        j["initial"] = "q1".into();
        let issues = validate(&RegisterAutomaton::from_json(&j).unwrap());
        assert!(issues.iter().any(|i| i.message == "initial not uninitialized"), "{issues:?}");
    }

    #[test]
    fn non_injective_assignment_rejected() {
        let j = serde_json::json!({
            "symmetry": "equality",
            "locations": {"elements": [{"id": "p", "support": []}, {"id": "q", "support": [0, 1]}]},
            "initial": "p",
            "final": [],
            "transitions": [{"from": "p", "to": "q", "assign": {"0": "input", "1": "input"}}]
        });
        let issues = validate(&RegisterAutomaton::from_json(&j).unwrap());
        assert!(issues.iter().any(|i| i.message == "assignment not injective"), "{issues:?}");
        assert_eq!(issues[0].transition, Some(0));
    }

    #[test]
    fn register_outside_source_rejected() {
        let j = serde_json::json!({
            "symmetry": "equality",
            "locations": {"elements": [{"id": "p", "support": []}]},
            "initial": "p",
            "final": [],
            "transitions": [{"from": "p", "to": "p", "guard": [[true, "eq", ["input", {"reg": 3}]]]}]
        });
        let issues = validate(&RegisterAutomaton::from_json(&j).unwrap());
        assert!(issues.iter().any(|i| i.message.starts_with("guard register outside")));
        assert!(issues.iter().any(|i| i.message.starts_with("transition support")));
    }

    #[test]
    fn guard_examples() {
        let eq = Signature::for_symmetry(Symmetry::Equality);
        let val = RestrictedMap::new(Symmetry::Equality, FiniteMap::nats([(0, 5)])).unwrap();
        let args = vec![RegRef::Input, RegRef::Reg(n(0))];
        assert!(eval_guard(&eq, &vec![Literal::pos("eq", args.clone())], &val, n(5)).unwrap());
        assert!(!eval_guard(&eq, &vec![Literal::neg("eq", args.clone())], &val, n(5)).unwrap());
        assert!(eval_guard(&eq, &vec![], &val, n(5)).unwrap());
        let missing = vec![Literal::pos("eq", vec![RegRef::Input, RegRef::Reg(n(1))])];
        assert_eq!(eval_guard(&eq, &missing, &val, n(5)), Err(AutomatonError::UnresolvedRegister(n(1))));

        let ord = Signature::for_symmetry(Symmetry::TotalOrder);
        let r0 = Atom::int(0);
        let val = RestrictedMap::new(Symmetry::TotalOrder, FiniteMap::from_pairs([(r0, Atom::rat(1, 2))])).unwrap();
        let lt = vec![Literal::pos("lt", vec![RegRef::Reg(r0), RegRef::Input])];
        assert!(eval_guard(&ord, &lt, &val, Atom::int(2)).unwrap());
        assert!(!eval_guard(&ord, &lt, &val, Atom::rat(1, 3)).unwrap());
    }

    #[test]
    fn step_examples() {
        let ra = shipped::first_repeat();
        let r = step(&ra, &Config::initial(&ra), n(5)).unwrap();
        assert_eq!(r.configs, BTreeSet::from([cfg(&ra, "q1", &[(0, 5)])]));
        let c = cfg(&ra, "q1", &[(0, 5)]);
        assert_eq!(step(&ra, &c, n(5)).unwrap().configs, BTreeSet::from([cfg(&ra, "qa", &[(0, 5)])]));
        assert_eq!(step(&ra, &c, n(3)).unwrap().configs, BTreeSet::from([c.clone()]));
    }

    #[test]
    fn duplicate_values_dropped_under_equality() {
        let j = serde_json::json!({
            "symmetry": "equality",
            "locations": {"elements": [
                {"id": "p", "support": []}, {"id": "q", "support": [0]}, {"id": "r", "support": [0, 1]}
            ]},
            "initial": "p",
            "final": ["r"],
            "transitions": [
                {"from": "p", "to": "q", "assign": {"0": "input"}},
                {"from": "q", "to": "r", "assign": {"0": {"reg": 0}, "1": "input"}}
            ]
        });
        let ra = RegisterAutomaton::from_json(&j).unwrap();
        assert!(validate(&ra).is_empty());
        let out = run(&ra, &word(&[4, 4])).unwrap();
        assert!(!out.accepted);
        assert_eq!(out.dropped, 1);
        assert!(accepts(&ra, &word(&[4, 5])).unwrap());

        let mut j = j;
        j["symmetry"] = "renaming".into();
        let ra = RegisterAutomaton::from_json(&j).unwrap();
        let out = run(&ra, &word(&[4, 4])).unwrap();
        assert!(out.accepted);
        assert_eq!(out.dropped, 0);
    }

    #[test]
    fn run_examples() {
        let ra = shipped::first_repeat();
        assert!(accepts(&ra, &word(&[5, 3, 5])).unwrap());
        assert!(!accepts(&ra, &word(&[5, 3, 4])).unwrap());
        assert!(!accepts(&ra, &[]).unwrap());
        assert!(accepts(&ra, &word(&[7, 7, 1])).unwrap());

        let inc = shipped::increasing();
        let w: Vec<Atom> = ["1/2", "2", "7/3"].iter().map(|s| Atom::parse(s).unwrap()).collect();
        assert!(accepts(&inc, &w).unwrap());
        assert!(!accepts(&inc, &[Atom::int(2), Atom::int(1)]).unwrap());
        assert!(accepts(&inc, &[n(1), n(3)]).unwrap());
    }

    #[test]
    fn unit_then_extend_is_coalgebra() {
        let ra = shipped::first_repeat();
        let m = ExtMonad { ra: &ra };
        let det = determinize_generic(&m, ra.coalgebra());
        for q in ra.locations.ids() {
            assert_eq!(det.d(&m.unit(q)).unwrap(), det.coalgebra()[q]);
        }
    }

    #[test]
    fn nfa_subset_construction() {
        // states 0 ≙ 1 and 1 ≙ 2; letters a = 0, b = 1
        let nfa = Nfa {
            letters: 2,
            initial: BTreeSet::from([0]),
            finals: vec![false, true],
            delta: vec![vec![BTreeSet::from([0, 1]), BTreeSet::new()], vec![BTreeSet::new(), BTreeSet::from([1])]],
        };
        assert!(nfa.accepts(&[0, 1]));
        assert!(nfa.accepts(&[0]));
        assert!(!nfa.accepts(&[1]));
        assert!(!nfa.accepts(&[]));
        let m = Powerset { letters: 2 };
        let det = determinize_generic(&m, nfa.coalgebra());
        for q in 0..2 {
            assert_eq!(det.d(&m.unit(q)).unwrap(), nfa.coalgebra()[q]);
        }
    }

    #[test]
    fn orbit_examples() {
        let ra = shipped::first_repeat();
        let pool = AtomPool::first(Symmetry::Equality, 3);
        let s = reachable_orbits(&ra, &pool, 3).unwrap();
        let expect: BTreeMap<String, usize> = [("q0", 1), ("q1", 1), ("qa", 1)].map(|(k, v)| (k.to_string(), v)).into();
        assert_eq!(s.per_location, expect);
        assert_eq!(s.total, 3);
        let s0 = reachable_orbits(&ra, &pool, 0).unwrap();
        assert_eq!(s0.per_location, BTreeMap::from([("q0".to_string(), 1)]));
        let bigger = reachable_orbits(&ra, &pool.enlarged(Symmetry::Equality), 3).unwrap();
        assert_eq!(bigger.per_location, s.per_location);
    }

    #[test]
    fn word_file_parsing() {
        assert_eq!(parse_word(Symmetry::Equality, "5\n3\n\n# c\n5\n").unwrap(), word(&[5, 3, 5]));
        assert_eq!(parse_word(Symmetry::TotalOrder, "1/2\n3").unwrap(), vec![Atom::rat(1, 2), Atom::int(3)]);
        assert!(matches!(parse_word(Symmetry::Equality, "5\nx"), Err(AutomatonError::Word { line: 2, .. })));
    }

    #[test]
    fn json_roundtrip() {
        for ra in [shipped::first_repeat(), shipped::increasing()] {
            assert_eq!(RegisterAutomaton::from_json(&ra.to_json()).unwrap(), ra);
        }
        let ra = shipped::first_repeat();
        let c = cfg(&ra, "q1", &[(0, 9)]);
        assert_eq!(Config::from_json(&c.to_json(&ra), &ra).unwrap(), c);
    }
}
