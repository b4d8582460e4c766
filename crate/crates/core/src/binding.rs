//! Binding: the de Bruijn support transformer, λ-terms in named and de
//! Bruijn form, nominal abstraction and the isomorphism `φ` between them.
//!
//! Atoms here are equality-symmetry naturals and `ρ(n) = n`. A de Bruijn
//! index `n` at depth `d` denotes the bound variable `n` binders up when
//! `n < d`, and the ambient atom `ρ(n − d)` otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atoms::{fresh, Atom, GlobalMap, Support, Symmetry};
use crate::freenom::NominalCarrier;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BindingError {
    #[error("action on terms requires a finite permutation, got {0}")]
    NotAPermutation(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

const EQ: Symmetry = Symmetry::Equality;

/// A λ-term with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedTerm {
    Var(u64),
    App(Box<NamedTerm>, Box<NamedTerm>),
    Lam(u64, Box<NamedTerm>),
}

/// A λ-term with de Bruijn indices and no separate free-variable form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DBTerm {
    Idx(u64),
    App(Box<DBTerm>, Box<DBTerm>),
    Lam(Box<DBTerm>),
}

impl NamedTerm {
    pub fn var(a: u64) -> NamedTerm {
        NamedTerm::Var(a)
    }

    pub fn app(f: NamedTerm, x: NamedTerm) -> NamedTerm {
        NamedTerm::App(Box::new(f), Box::new(x))
    }

    pub fn lam(a: u64, body: NamedTerm) -> NamedTerm {
        NamedTerm::Lam(a, Box::new(body))
    }

    /// Free atoms; the least support of the α-class.
    pub fn free_atoms(&self) -> Support {
        match self {
            NamedTerm::Var(a) => Support::singleton(Atom::Nat(*a)),
            NamedTerm::App(f, x) => f.free_atoms().union(&x.free_atoms()),
            NamedTerm::Lam(a, b) => {
                let mut s = b.free_atoms();
                s.remove(&Atom::Nat(*a));
                s
            }
        }
    }

    /// Every atom occurring anywhere, bound or free.
    pub fn all_atoms(&self) -> Support {
        match self {
            NamedTerm::Var(a) => Support::singleton(Atom::Nat(*a)),
            NamedTerm::App(f, x) => f.all_atoms().union(&x.all_atoms()),
            NamedTerm::Lam(a, b) => {
                let mut s = b.all_atoms();
                s.insert(Atom::Nat(*a));
                s
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            NamedTerm::Var(_) => 1,
            NamedTerm::App(f, x) => 1 + f.depth().max(x.depth()),
            NamedTerm::Lam(_, b) => 1 + b.depth(),
        }
    }

    fn rename(&self, g: &GlobalMap) -> NamedTerm {
        let r = |a: u64| g.apply(Atom::Nat(a)).as_nat().expect("permutation of naturals");
        match self {
            NamedTerm::Var(a) => NamedTerm::Var(r(*a)),
            NamedTerm::App(f, x) => NamedTerm::app(f.rename(g), x.rename(g)),
            NamedTerm::Lam(a, b) => NamedTerm::lam(r(*a), b.rename(g)),
        }
    }
}

impl fmt::Display for NamedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedTerm::Var(a) => write!(f, "v{a}"),
            NamedTerm::Lam(a, b) => write!(f, "\\v{a}. {b}"),
            NamedTerm::App(g, x) => {
                match **g {
                    NamedTerm::Lam(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **x {
                    NamedTerm::Var(_) => write!(f, " {x}"),
                    _ => write!(f, " ({x})"),
                }
            }
        }
    }
}

impl DBTerm {
    pub fn idx(n: u64) -> DBTerm {
        DBTerm::Idx(n)
    }

    pub fn app(f: DBTerm, x: DBTerm) -> DBTerm {
        DBTerm::App(Box::new(f), Box::new(x))
    }

    pub fn lam(body: DBTerm) -> DBTerm {
        DBTerm::Lam(Box::new(body))
    }

    /// Ambient atoms: indices reaching past their binders, shifted back.
    pub fn free_atoms(&self) -> Support {
        fn go(t: &DBTerm, depth: u64, out: &mut Support) {
            match t {
                DBTerm::Idx(n) if *n >= depth => {
                    out.insert(Atom::Nat(n - depth));
                }
                DBTerm::Idx(_) => {}
                DBTerm::App(f, x) => {
                    go(f, depth, out);
                    go(x, depth, out);
                }
                DBTerm::Lam(b) => go(b, depth + 1, out),
            }
        }
        let mut out = Support::new();
        go(self, 0, &mut out);
        out
    }
}

impl fmt::Display for DBTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DBTerm::Idx(n) => write!(f, "#{n}"),
            DBTerm::Lam(b) => write!(f, "\\ {b}"),
            DBTerm::App(g, x) => {
                match **g {
                    DBTerm::Lam(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **x {
                    DBTerm::Idx(_) => write!(f, " {x}"),
                    _ => write!(f, " ({x})"),
                }
            }
        }
    }
}

/// `s_{BX}(λ.x) = {ρ(k) | ρ(k+1) ∈ s_X(x)}`.
pub fn b_support(s: &Support) -> Support {
    s.iter().filter_map(|a| a.as_nat()).filter(|&k| k > 0).map(|k| Atom::Nat(k - 1)).collect()
}

/// `1 + max{n | ρ(n) ∈ s}`, and `0` for the empty set.
pub fn maxidx(s: &Support) -> u64 {
    s.iter().filter_map(|a| a.as_nat()).max().map_or(0, |m| m + 1)
}

/// The cycle `(ρ(0) ⋯ ρ(m))`: `ℓ ↦ ℓ+1` below `m`, `m ↦ 0`.
pub fn sigma(m: u64) -> GlobalMap {
    if m == 0 {
        return GlobalMap::identity(EQ);
    }
    let c: Vec<u64> = (0..=m).collect();
    GlobalMap::cycle(&c).expect("cycle on distinct naturals")
}

/// Renames every occurrence, bound or free.
pub fn act_term(g: &GlobalMap, t: &NamedTerm) -> Result<NamedTerm, BindingError> {
    if g.symmetry() != EQ {
        return Err(BindingError::NotAPermutation(g.to_string()));
    }
    Ok(t.rename(g))
}

/// Nominal α-equivalence on named terms: binders are compared by swapping
/// both to one fresh atom.
pub fn terms_alpha_eq(s: &NamedTerm, t: &NamedTerm) -> bool {
    match (s, t) {
        (NamedTerm::Var(a), NamedTerm::Var(b)) => a == b,
        (NamedTerm::App(f, x), NamedTerm::App(g, y)) => terms_alpha_eq(f, g) && terms_alpha_eq(x, y),
        (NamedTerm::Lam(a, x), NamedTerm::Lam(b, y)) => {
            if a == b {
                return terms_alpha_eq(x, y);
            }
            let avoid = x.all_atoms().union(&y.all_atoms()).union(&Support::nats([*a, *b]));
            let c = fresh(EQ, &avoid).as_nat().unwrap();
            terms_alpha_eq(&x.rename(&GlobalMap::swap(c, *a)), &y.rename(&GlobalMap::swap(c, *b)))
        }
        _ => false,
    }
}

/// λ-terms modulo α as a nominal set.
pub struct Terms;

impl NominalCarrier for Terms {
    type Value = NamedTerm;

    fn symmetry(&self) -> Symmetry {
        EQ
    }

    fn equal(&self, a: &NamedTerm, b: &NamedTerm) -> bool {
        terms_alpha_eq(a, b)
    }

    fn act(&self, g: &GlobalMap, v: &NamedTerm) -> NamedTerm {
        v.rename(g)
    }

    fn supp(&self, v: &NamedTerm) -> Support {
        v.free_atoms()
    }
}

/// `⟨a⟩x`: the class of `(a, x)` under α-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbsClass<V> {
    pub binder: Atom,
    pub body: V,
}

impl<V> AbsClass<V> {
    pub fn new(binder: u64, body: V) -> AbsClass<V> {
        AbsClass { binder: Atom::Nat(binder), body }
    }
}

impl<V: fmt::Display> fmt::Display for AbsClass<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩{}", self.binder, self.body)
    }
}

/// `⟨a⟩x ~α ⟨b⟩y` iff `(c a)·x = (c b)·y` for one `c` fresh for
/// `a, b, x, y`.
pub fn alpha_eq<C: NominalCarrier>(carrier: &C, l: &AbsClass<C::Value>, r: &AbsClass<C::Value>) -> bool {
    let mut avoid = carrier.supp(&l.body).union(&carrier.supp(&r.body));
    avoid.insert(l.binder);
    avoid.insert(r.binder);
    let c = fresh(EQ, &avoid);
    let x = carrier.act(&swap_atoms(c, l.binder), &l.body);
    let y = carrier.act(&swap_atoms(c, r.binder), &r.body);
    carrier.equal(&x, &y)
}

fn swap_atoms(a: Atom, b: Atom) -> GlobalMap {
    GlobalMap::transposition(EQ, a, b).expect("equality atoms")
}

/// `supp(⟨a⟩x) = supp(x) \ {a}`.
pub fn supp_abs<C: NominalCarrier>(carrier: &C, a: &AbsClass<C::Value>) -> Support {
    let mut s = carrier.supp(&a.body);
    s.remove(&a.binder);
    s
}

/// `π · ⟨a⟩x = ⟨π(a)⟩(π·x)`.
pub fn act_abs<C: NominalCarrier>(carrier: &C, g: &GlobalMap, a: &AbsClass<C::Value>) -> AbsClass<C::Value> {
    AbsClass { binder: g.apply(a.binder), body: carrier.act(g, &a.body) }
}

/// `φ(λ.x) = σ⁻¹_{maxidx(x)} · ⟨ρ(0)⟩x`.
pub fn phi<C: NominalCarrier>(carrier: &C, x: &C::Value) -> AbsClass<C::Value> {
    let m = maxidx(&carrier.supp(x));
    let inv = sigma(m).inverse().expect("permutations are invertible");
    act_abs(carrier, &inv, &AbsClass::new(0, x.clone()))
}

/// The inverse of `φ`: for `⟨ρ(k)⟩y`, with `m = max{maxidx(y), k} + 1`,
/// returns the body `x = (ρ(0) ρ(k+1)) · σ_m · y` of `λ.x`.
pub fn phi_inv<C: NominalCarrier>(carrier: &C, a: &AbsClass<C::Value>) -> C::Value {
    let k = a.binder.as_nat().expect("equality atoms");
    let m = maxidx(&carrier.supp(&a.body)).max(k) + 1;
    let shifted = carrier.act(&sigma(m), &a.body);
    carrier.act(&GlobalMap::swap(0, k + 1), &shifted)
}

/// Bound occurrences become their binder distance; a free atom `ρ(k)` at
/// depth `d` becomes `k + d`.
pub fn to_debruijn(t: &NamedTerm) -> DBTerm {
    fn go(t: &NamedTerm, binders: &mut Vec<u64>) -> DBTerm {
        match t {
            NamedTerm::Var(a) => match binders.iter().rev().position(|b| b == a) {
                Some(i) => DBTerm::Idx(i as u64),
                None => DBTerm::Idx(a + binders.len() as u64),
            },
            NamedTerm::App(f, x) => DBTerm::app(go(f, binders), go(x, binders)),
            NamedTerm::Lam(a, b) => {
                binders.push(*a);
                let body = go(b, binders);
                binders.pop();
                DBTerm::lam(body)
            }
        }
    }
    go(t, &mut Vec::new())
}

/// Inverse of [`to_debruijn`] up to α: each binder is the least atom not
/// free in its scope and not used by an enclosing binder.
pub fn from_debruijn(t: &DBTerm) -> NamedTerm {
    fn go(t: &DBTerm, binders: &mut Vec<u64>) -> NamedTerm {
        match t {
            DBTerm::Idx(n) => {
                let d = binders.len() as u64;
                if *n < d {
                    NamedTerm::Var(binders[binders.len() - 1 - *n as usize])
                } else {
                    NamedTerm::Var(n - d)
                }
            }
            DBTerm::App(f, x) => NamedTerm::app(go(f, binders), go(x, binders)),
            DBTerm::Lam(b) => {
                let mut avoid = DBTerm::Lam(b.clone()).free_atoms_at(binders.len() as u64);
                avoid.extend(binders.iter().map(|&a| Atom::Nat(a)));
                let a = fresh(EQ, &avoid).as_nat().unwrap();
                binders.push(a);
                let body = go(b, binders);
                binders.pop();
                NamedTerm::lam(a, body)
            }
        }
    }
    go(t, &mut Vec::new())
}

impl DBTerm {
    /// Ambient atoms of a subterm sitting under `depth` binders.
    fn free_atoms_at(&self, depth: u64) -> Support {
        fn go(t: &DBTerm, depth: u64, out: &mut Support) {
            match t {
                DBTerm::Idx(n) if *n >= depth => {
                    out.insert(Atom::Nat(n - depth));
                }
                DBTerm::Idx(_) => {}
                DBTerm::App(f, x) => {
                    go(f, depth, out);
                    go(x, depth, out);
                }
                DBTerm::Lam(b) => go(b, depth + 1, out),
            }
        }
        let mut out = Support::new();
        go(self, depth, &mut out);
        out
    }
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn new(s: &'s str) -> Self {
        Parser { src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, BindingError> {
        Err(BindingError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, BindingError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().or_else(|_| self.err("number too large"))
    }

    fn var(&mut self) -> Result<u64, BindingError> {
        if !self.eat(b'v') {
            return self.err("expected a variable vN");
        }
        self.number()
    }

    fn finish<T>(&mut self, t: T) -> Result<T, BindingError> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(t)
    }

    fn named(&mut self) -> Result<NamedTerm, BindingError> {
        if self.eat(b'\\') {
            let a = self.var()?;
            if !self.eat(b'.') {
                return self.err("expected '.' after binder");
            }
            return Ok(NamedTerm::lam(a, self.named()?));
        }
        let mut t = self.named_atom()?;
        while matches!(self.peek(), Some(b'v' | b'(' | b'\\')) {
            let arg = if self.peek() == Some(b'\\') { self.named()? } else { self.named_atom()? };
            t = NamedTerm::app(t, arg);
        }
        Ok(t)
    }

    fn named_atom(&mut self) -> Result<NamedTerm, BindingError> {
        if self.eat(b'(') {
            let t = self.named()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            return Ok(t);
        }
        Ok(NamedTerm::Var(self.var()?))
    }

    fn db(&mut self) -> Result<DBTerm, BindingError> {
        if self.eat(b'\\') {
            return Ok(DBTerm::lam(self.db()?));
        }
        let mut t = self.db_atom()?;
        while matches!(self.peek(), Some(b'#' | b'(' | b'\\')) {
            let arg = if self.peek() == Some(b'\\') { self.db()? } else { self.db_atom()? };
            t = DBTerm::app(t, arg);
        }
        Ok(t)
    }

    fn db_atom(&mut self) -> Result<DBTerm, BindingError> {
        if self.eat(b'(') {
            let t = self.db()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            return Ok(t);
        }
        if !self.eat(b'#') {
            return self.err("expected an index #N");
        }
        Ok(DBTerm::Idx(self.number()?))
    }
}

/// Parses `\vN. t`, left-associative application and `vN`.
pub fn parse_named(s: &str) -> Result<NamedTerm, BindingError> {
    let mut p = Parser::new(s);
    let t = p.named()?;
    p.finish(t)
}

/// Parses `\ t`, left-associative application and `#N`.
pub fn parse_debruijn(s: &str) -> Result<DBTerm, BindingError> {
    let mut p = Parser::new(s);
    let t = p.db()?;
    p.finish(t)
}
