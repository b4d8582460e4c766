//! Seeded property suites over every module, run by `nomsup selfcheck`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atoms::{extend_to_global, lock_free_witness, Atom, Support, Symmetry};
use crate::automata::{self, step, Config, RegisterAutomaton};
use crate::binding::{
    self, b_support, from_debruijn, phi, phi_inv, supp_abs, terms_alpha_eq, to_debruijn, AbsClass, Terms,
};
use crate::freenom::{act, ext_support, mult, unit, RestrictedMap};
use crate::nomrep::{oracle, AtomPool, FinPresentation, PoolQuotient};
use crate::shipped;
use crate::suppset::{coequalizer, is_iso, SuppMap};

/// Random inputs shared by the suites and the test targets.
pub mod gen {
    use std::collections::BTreeSet;

    use rand::seq::{IteratorRandom, SliceRandom};
    use rand::Rng;

    use crate::atoms::{Atom, FiniteMap, GlobalMap, Rational, Support, Symmetry};
    use crate::automata::Nfa;
    use crate::binding::NamedTerm;
    use crate::freenom::{ExtElem, RestrictedMap};
    use crate::suppset::{check_supported_map, ElemId, SuppMap, SuppSet};

    /// The first `n` atoms of the symmetry's canonical enumeration.
    pub fn pool(sym: Symmetry, n: usize) -> Support {
        (0..n as u64).map(|i| sym.atom(i)).collect()
    }

    /// A random subset of `pool` with at most `max` atoms.
    pub fn support<R: Rng>(rng: &mut R, pool: &Support, max: usize) -> Support {
        let k = rng.gen_range(0..=max.min(pool.len()));
        pool.iter().copied().choose_multiple(rng, k).into_iter().collect()
    }

    /// A supported set with `1..=max_elems` elements and supports drawn from `pool`.
    pub fn supp_set<R: Rng>(rng: &mut R, pool: &Support, max_elems: usize, max_support: usize) -> SuppSet {
        let n = rng.gen_range(1..=max_elems);
        SuppSet::new((0..n).map(|i| (format!("x{i}"), support(rng, pool, max_support)))).unwrap()
    }

    /// A uniformly chosen admissible map from `dom` into `pool`, if any.
    pub fn admissible_map<R: Rng>(rng: &mut R, sym: Symmetry, dom: &Support, pool: &Support) -> Option<FiniteMap> {
        let p = pool.to_vec();
        let images: Vec<Atom> = match sym {
            Symmetry::Renaming => dom.iter().map(|_| *p.choose(rng).unwrap()).collect(),
            _ if dom.len() > p.len() => return None,
            Symmetry::Equality => p.choose_multiple(rng, dom.len()).copied().collect(),
            Symmetry::TotalOrder => {
                let mut s = p.iter().copied().choose_multiple(rng, dom.len());
                s.sort();
                s
            }
        };
        Some(dom.iter().copied().zip(images).collect())
    }

    pub fn ext_elem<R: Rng>(rng: &mut R, sym: Symmetry, x: &SuppSet, pool: &Support) -> Option<ExtElem> {
        let base = rng.gen_range(0..x.len());
        let pi = admissible_map(rng, sym, x.support(base), pool)?;
        ExtElem::new(x, RestrictedMap::new(sym, pi).ok()?, base).ok()
    }

    /// A random group element moving atoms among the first `span` ones
    /// (for the order symmetry: breakpoints among `0..span`).
    pub fn group_element<R: Rng>(rng: &mut R, sym: Symmetry, span: usize) -> GlobalMap {
        match sym {
            Symmetry::Equality => {
                let dom: Vec<u64> = (0..span as u64).collect();
                let mut img = dom.clone();
                img.shuffle(rng);
                GlobalMap::permutation(dom.into_iter().zip(img).map(|(a, b)| (Atom::Nat(a), Atom::Nat(b)))).unwrap()
            }
            Symmetry::TotalOrder => {
                let k = rng.gen_range(1..=3);
                let xs = increasing_rationals(rng, k, span);
                let ys = increasing_rationals(rng, k, span);
                GlobalMap::piecewise_linear(xs.into_iter().zip(ys)).unwrap()
            }
            Symmetry::Renaming => {
                GlobalMap::renaming((0..span as u64).map(|a| (Atom::Nat(a), Atom::Nat(rng.gen_range(0..span as u64)))))
                    .unwrap()
            }
        }
    }

    /// `k` distinct increasing rationals with denominators up to 4 in `[0, span)`.
    pub fn increasing_rationals<R: Rng>(rng: &mut R, k: usize, span: usize) -> Vec<Rational> {
        let mut set = BTreeSet::new();
        while set.len() < k {
            let d = rng.gen_range(1..=4);
            set.insert(Rational::new(rng.gen_range(0..(span as i64 * d).max(1)), d));
        }
        set.into_iter().collect()
    }

    /// A random atom of the symmetry's domain among the first `span`.
    pub fn atom<R: Rng>(rng: &mut R, sym: Symmetry, span: usize) -> Atom {
        match sym {
            Symmetry::TotalOrder => Atom::Rat(increasing_rationals(rng, 1, span)[0]),
            _ => Atom::Nat(rng.gen_range(0..span as u64)),
        }
    }

    /// A supported map `x → y`, if every element has a candidate image.
    pub fn supported_map<R: Rng>(rng: &mut R, x: &SuppSet, y: &SuppSet) -> Option<SuppMap> {
        let map = x
            .ids()
            .map(|e| y.ids().filter(|&t| y.support(t).is_subset(x.support(e))).choose(rng))
            .collect::<Option<Vec<ElemId>>>()?;
        Some(check_supported_map(&map, x, y).expect("candidates respect supports"))
    }

    /// A named λ-term of depth at most `depth` over atoms `0..atoms`.
    pub fn term<R: Rng>(rng: &mut R, depth: usize, atoms: u64) -> NamedTerm {
        let var = |rng: &mut R| NamedTerm::var(rng.gen_range(0..atoms));
        if depth <= 1 {
            return var(rng);
        }
        match rng.gen_range(0..5) {
            0 => var(rng),
            1 | 2 => NamedTerm::app(term(rng, depth - 1, atoms), term(rng, depth - 1, atoms)),
            _ => NamedTerm::lam(rng.gen_range(0..atoms), term(rng, depth - 1, atoms)),
        }
    }

    /// An NFA with `1..=max_states` states over `letters` letters.
    pub fn nfa<R: Rng>(rng: &mut R, max_states: usize, letters: usize) -> Nfa {
        let n = rng.gen_range(1..=max_states);
        let subset = |rng: &mut R| (0..n).filter(|_| rng.gen_bool(0.4)).collect::<BTreeSet<usize>>();
        let mut initial = subset(rng);
        if initial.is_empty() {
            initial.insert(0);
        }
        Nfa {
            letters,
            initial,
            finals: (0..n).map(|_| rng.gen_bool(0.4)).collect(),
            delta: (0..n).map(|_| (0..letters).map(|_| subset(rng)).collect()).collect(),
        }
    }

    /// All words of length at most `max_len` over `letters` letters.
    pub fn all_words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..letters).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub budget: usize,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }
}

pub const DEFAULT_BUDGET: usize = 200;

type Suite = fn(&mut ChaCha8Rng, usize, &mut Vec<String>);

const SUITES: &[(&str, Suite)] = &[
    ("atoms.compose", atoms_compose),
    ("atoms.lock_free", atoms_lock_free),
    ("suppset.coequalizer", suppset_coequalizer),
    ("suppset.iso", suppset_iso),
    ("freenom.monad_laws", freenom_monad_laws),
    ("freenom.equivariance", freenom_equivariance),
    ("nomrep.pairs_oracle", nomrep_pairs_oracle),
    ("binding.debruijn", binding_debruijn),
    ("binding.phi", binding_phi),
    ("automata.step_equivariance", automata_step_equivariance),
    ("automata.run_invariance", automata_run_invariance),
    ("automata.powerset", automata_powerset),
];

/// Runs every suite with `budget` cases each. Each suite draws from its
/// own generator seeded from `seed` and its name, so reports do not
/// depend on suite order.
pub fn selfcheck(seed: u64, budget: usize) -> Report {
    let suites = if budget == 0 {
        Vec::new()
    } else {
        SUITES
            .iter()
            .enumerate()
            .map(|(i, &(name, suite))| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64 + 1) << 32));
                let mut failures = Vec::new();
                suite(&mut rng, budget, &mut failures);
                SuiteReport { name, cases: budget, failures }
            })
            .collect()
    };
    Report { seed, budget, suites }
}

fn atoms_compose(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for i in 0..n {
        let sym = Symmetry::ALL[i % 3];
        let g = gen::group_element(rng, sym, 6);
        let h = gen::group_element(rng, sym, 6);
        let gh = g.compose(&h).unwrap();
        for _ in 0..4 {
            let a = gen::atom(rng, sym, 8);
            if gh.apply(a) != g.apply(h.apply(a)) {
                fails.push(format!("compose({g}, {h}) at {a}"));
            }
            if let Some(inv) = g.inverse() {
                if inv.apply(g.apply(a)) != a {
                    fails.push(format!("inverse of {g} at {a}"));
                }
            }
        }
    }
}

fn atoms_lock_free(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for i in 0..n {
        let sym = Symmetry::ALL[i % 3];
        let r: Support = (0..rng.gen_range(0..5)).map(|_| gen::atom(rng, sym, 8)).collect();
        let a = gen::atom(rng, sym, 10);
        if r.contains(&a) {
            continue;
        }
        match lock_free_witness(sym, &r, a) {
            Ok(l) if l.apply(a) != a && r.iter().all(|&x| l.apply(x) == x) => {}
            other => fails.push(format!("witness for R={r}, a={a}: {other:?}")),
        }
    }
}

fn suppset_coequalizer(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    let pool = gen::pool(Symmetry::Equality, 4);
    for _ in 0..n {
        let x = gen::supp_set(rng, &pool, 5, 3);
        let r = gen::supp_set(rng, &pool, 4, 3);
        let (Some(f), Some(g)) = (gen::supported_map(rng, &r, &x), gen::supported_map(rng, &r, &x)) else {
            continue;
        };
        let q = coequalizer(&f, &g).unwrap();
        for y in q.set.ids() {
            let expect = x
                .ids()
                .filter(|&m| q.epi.apply(m) == y)
                .map(|m| x.support(m).clone())
                .reduce(|a, b| a.intersection(&b))
                .unwrap_or_default();
            if q.set.support(y) != &expect {
                fails.push(format!("coequalizer of {f} and {g}: class {}", q.set.name(y)));
            }
        }
        if (0..r.len()).any(|e| q.epi.apply(f.apply(e)) != q.epi.apply(g.apply(e))) {
            fails.push(format!("coequalizer of {f} and {g} does not coequalize"));
        }
    }
}

fn suppset_iso(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    let pool = gen::pool(Symmetry::Equality, 3);
    for _ in 0..n {
        let x = gen::supp_set(rng, &pool, 3, 2);
        let y = gen::supp_set(rng, &pool, 3, 2);
        let Some(f) = gen::supported_map(rng, &x, &y) else { continue };
        let has_inverse = crate::suppset::supported_maps(&y, &x)
            .iter()
            .any(|g| g.after(&f).unwrap() == SuppMap::identity(&x) && f.after(g).unwrap() == SuppMap::identity(&y));
        if is_iso(&f) != has_inverse {
            fails.push(format!("is_iso({f}) = {}", is_iso(&f)));
        }
    }
}

fn freenom_monad_laws(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for i in 0..n {
        let sym = Symmetry::ALL[i % 3];
        let pool = gen::pool(sym, 6);
        let x = gen::supp_set(rng, &pool, 5, 3);
        let Some(e) = gen::ext_elem(rng, sym, &x, &pool) else { continue };
        let s = ext_support(&e);
        if mult(&RestrictedMap::identity(sym, &s), &e).as_ref() != Ok(&e) {
            fails.push(format!("left unit at {}", e.display(&x)));
        }
        if mult(&e.pi, &unit(sym, &x, e.base)).as_ref() != Ok(&e) {
            fails.push(format!("right unit at {}", e.display(&x)));
        }
        let Some(o1) = gen::admissible_map(rng, sym, &s, &pool) else { continue };
        let o1 = RestrictedMap::new(sym, o1).unwrap();
        let Some(o2) = gen::admissible_map(rng, sym, &o1.image(), &pool) else { continue };
        let o2 = RestrictedMap::new(sym, o2).unwrap();
        let left = mult(&o2.after(&o1).unwrap(), &e).unwrap();
        let right = mult(&o2, &mult(&o1, &e).unwrap()).unwrap();
        let global = act(&extend_to_global(sym, o2.map()).unwrap(), &act(&o1.to_global(), &e).unwrap()).unwrap();
        if left != right || left != global {
            fails.push(format!("associativity at {} with {o1}, {o2}", e.display(&x)));
        }
    }
}

fn freenom_equivariance(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for i in 0..n {
        let sym = Symmetry::ALL[i % 3];
        let pool = gen::pool(sym, 6);
        let x = gen::supp_set(rng, &pool, 4, 3);
        let Some(e) = gen::ext_elem(rng, sym, &x, &pool) else { continue };
        let g = gen::group_element(rng, sym, 6);
        let h = gen::group_element(rng, sym, 6);
        let moved = act(&g, &e).unwrap();
        if ext_support(&moved) != ext_support(&e).image(&g) {
            fails.push(format!("supp(g·e) ≠ g·supp(e) for g={g}, e={}", e.display(&x)));
        }
        let lhs = act(&g.compose(&h).unwrap(), &e).unwrap();
        let rhs = act(&g, &act(&h, &e).unwrap()).unwrap();
        if lhs != rhs {
            fails.push(format!("action not compatible for g={g}, h={h}, e={}", e.display(&x)));
        }
    }
}

fn nomrep_pairs_oracle(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    let p = FinPresentation::unordered_pairs();
    let pool = AtomPool::first(Symmetry::Equality, 5);
    let q = PoolQuotient::build(&p, pool.clone());
    let (elems, rel) = oracle::closure(&p, &pool);
    for _ in 0..n {
        let (i, j) = (rng.gen_range(0..elems.len()), rng.gen_range(0..elems.len()));
        if q.quot_eq(&elems[i], &elems[j]).ok() != Some(rel[i][j]) {
            fails.push(format!("quot_eq({}, {})", elems[i].display(&p.generators), elems[j].display(&p.generators)));
        }
    }
}

fn binding_debruijn(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for _ in 0..n {
        let s = gen::term(rng, 6, 5);
        let t = gen::term(rng, 6, 5);
        if !terms_alpha_eq(&from_debruijn(&to_debruijn(&s)), &s) {
            fails.push(format!("round trip of {s}"));
        }
        let renamed = binding::act_term(&gen::group_element(rng, Symmetry::Equality, 5), &t).unwrap();
        for (a, b) in [(&s, &t), (&t, &renamed), (&s, &s)] {
            if terms_alpha_eq(a, b) != (to_debruijn(a) == to_debruijn(b)) {
                fails.push(format!("α-equality of {a} and {b}"));
            }
        }
    }
}

fn binding_phi(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for _ in 0..n {
        let x = gen::term(rng, 6, 5);
        let abs = phi(&Terms, &x);
        if supp_abs(&Terms, &abs) != b_support(&x.free_atoms()) {
            fails.push(format!("supp φ(λ.{x})"));
        }
        if !terms_alpha_eq(&phi_inv(&Terms, &abs), &x) {
            fails.push(format!("φ⁻¹ φ(λ.{x})"));
        }
        let k = rng.gen_range(0..5);
        let a = AbsClass::new(k, gen::term(rng, 5, 5));
        if !binding::alpha_eq(&Terms, &phi(&Terms, &phi_inv(&Terms, &a)), &a) {
            fails.push(format!("φ φ⁻¹({a})"));
        }
    }
}

fn shipped_automata() -> [RegisterAutomaton; 2] {
    [shipped::first_repeat(), shipped::increasing()]
}

fn random_config(rng: &mut ChaCha8Rng, ra: &RegisterAutomaton) -> Config {
    let len = rng.gen_range(0..4);
    let word: Vec<Atom> = (0..len).map(|_| gen::atom(rng, ra.sym, 5)).collect();
    let mut cur = vec![Config::initial(ra)];
    for a in word {
        let next: Vec<Config> = cur.iter().flat_map(|c| step(ra, c, a).unwrap().configs).collect();
        if next.is_empty() {
            break;
        }
        cur = next;
    }
    cur.choose(rng).unwrap().clone()
}

fn automata_step_equivariance(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for ra in shipped_automata().iter().cycle().take(n) {
        let c = random_config(rng, ra);
        let a = gen::atom(rng, ra.sym, 6);
        let l = gen::group_element(rng, ra.sym, 6);
        let lhs = step(ra, &c.act(&l).unwrap(), l.apply(a)).unwrap().configs;
        let rhs = step(ra, &c, a).unwrap().configs.iter().map(|d| d.act(&l).unwrap()).collect();
        if lhs != rhs {
            fails.push(format!("step at {} on {a} under {l}", c.display(ra)));
        }
    }
}

fn automata_run_invariance(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    for ra in shipped_automata().iter().cycle().take(n) {
        let len = rng.gen_range(0..6);
        let word: Vec<Atom> = (0..len).map(|_| gen::atom(rng, ra.sym, 5)).collect();
        let l = gen::group_element(rng, ra.sym, 6);
        let moved: Vec<Atom> = word.iter().map(|&a| l.apply(a)).collect();
        if automata::accepts(ra, &word) != automata::accepts(ra, &moved) {
            let w: Vec<String> = word.iter().map(Atom::to_string).collect();
            fails.push(format!("run on [{}] under {l}", w.join(" ")));
        }
    }
}

fn automata_powerset(rng: &mut ChaCha8Rng, n: usize, fails: &mut Vec<String>) {
    use std::collections::BTreeSet;
    for _ in 0..n {
        let nfa = gen::nfa(rng, 4, 2);
        let w: Vec<usize> = (0..rng.gen_range(0..7)).map(|_| rng.gen_range(0..2)).collect();
        // direct simulation on sets of states
        let mut cur: BTreeSet<usize> = nfa.initial.clone();
        for &a in &w {
            cur = cur.iter().flat_map(|&q| nfa.delta[q][a].iter().copied()).collect();
        }
        let direct = cur.iter().any(|&q| nfa.finals[q]);
        if nfa.accepts(&w) != direct {
            fails.push(format!("{nfa:?} on {w:?}"));
        }
    }
}
