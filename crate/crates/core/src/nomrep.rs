//! Orbit-finite nominal sets presented by generators and equations.
//!
//! A presentation is a finite supported set `G` of generators together with
//! equations between elements of `Ext G`; the presented nominal set is the
//! quotient of `Ext G` by the least equivariant equivalence containing the
//! equations. Everything here is decided over a finite [`AtomPool`]: the
//! pool-bounded part of `Ext G` is enumerated and closed under union-find.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atoms::{extend_to_global, fresh_many, Atom, FiniteMap, GlobalMap, Support, Symmetry};
use crate::freenom::{
    act, admissible_maps, ext_enumerate, ext_support, unit, ExtElem, FreeError, NominalCarrier, RestrictedMap,
};
use crate::suppset::SuppSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NomError {
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error("pool {pool} does not contain the support {needed}")]
    PoolTooSmall { pool: Support, needed: Support },
    #[error("operation requires a group symmetry, found {0}")]
    NotAGroup(Symmetry),
    #[error("equation {index} side {side}: {reason}")]
    BadEquation { index: usize, side: &'static str, reason: String },
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// Generators and equations presenting an orbit-finite nominal set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPresentation {
    pub sym: Symmetry,
    pub generators: SuppSet,
    pub equations: Vec<(ExtElem, ExtElem)>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    symmetry: Symmetry,
    generators: SuppSet,
    #[serde(default)]
    equations: Vec<(serde_json::Value, serde_json::Value)>,
}

impl FinPresentation {
    pub fn new(sym: Symmetry, generators: SuppSet, equations: Vec<(ExtElem, ExtElem)>) -> Result<Self, NomError> {
        for (index, (l, r)) in equations.iter().enumerate() {
            for (side, e) in [("lhs", l), ("rhs", r)] {
                if e.symmetry() != sym {
                    return Err(NomError::BadEquation { index, side, reason: format!("symmetry {}", e.symmetry()) });
                }
                if let Err(err) = ExtElem::new(&generators, e.pi.clone(), e.base) {
                    return Err(NomError::BadEquation { index, side, reason: err.to_string() });
                }
            }
        }
        Ok(FinPresentation { sym, generators, equations })
    }

    /// Unordered pairs of distinct atoms: one generator `g` with support
    /// `{0, 1}` and the equation `(0 1)·g = g`.
    pub fn unordered_pairs() -> FinPresentation {
        let sym = Symmetry::Equality;
        let generators = SuppSet::new([("g", Support::nats([0, 1]))]).unwrap();
        let swapped = act(&GlobalMap::swap(0, 1), &unit(sym, &generators, 0)).unwrap();
        let eq = (swapped, unit(sym, &generators, 0));
        FinPresentation::new(sym, generators, vec![eq]).unwrap()
    }

    /// Atoms mentioned by the equations.
    pub fn equation_atoms(&self) -> Support {
        self.equations.iter().fold(Support::new(), |acc, (l, r)| acc.union(&ext_support(l)).union(&ext_support(r)))
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FinPresentation, NomError> {
        let j: PresentationJson =
            serde_json::from_value(value.clone()).map_err(|e| NomError::Malformed(e.to_string()))?;
        let generators = coerce_set(j.symmetry, j.generators)?;
        let equations = j
            .equations
            .iter()
            .map(|(l, r)| {
                Ok((ExtElem::from_json(l, j.symmetry, &generators)?, ExtElem::from_json(r, j.symmetry, &generators)?))
            })
            .collect::<Result<Vec<_>, FreeError>>()?;
        FinPresentation::new(j.symmetry, generators, equations)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let equations: Vec<_> =
            self.equations.iter().map(|(l, r)| (l.to_json(&self.generators), r.to_json(&self.generators))).collect();
        serde_json::to_value(PresentationJson { symmetry: self.sym, generators: self.generators.clone(), equations })
            .expect("presentation serializes")
    }
}

pub(crate) fn coerce_set(sym: Symmetry, set: SuppSet) -> Result<SuppSet, NomError> {
    let coerced = set
        .elements()
        .iter()
        .map(|e| {
            let s: Result<Support, _> = e.support.iter().map(|a| a.coerce(sym)).collect();
            s.map(|s| (e.id.clone(), s))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(FreeError::from)?;
    Ok(SuppSet::new(coerced).map_err(FreeError::from)?)
}

/// The finite set of atoms a quotient computation is restricted to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AtomPool(pub Support);

impl AtomPool {
    /// The first `n` atoms `0, 1, …, n−1` of the symmetry's domain.
    pub fn first(sym: Symmetry, n: usize) -> AtomPool {
        AtomPool((0..n as u64).map(|i| sym.atom(i)).collect())
    }

    pub fn atoms(&self) -> &Support {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// This pool plus one fresh atom.
    pub fn enlarged(&self, sym: Symmetry) -> AtomPool {
        let mut s = self.0.clone();
        s.extend(fresh_many(sym, &self.0, 1));
        AtomPool(s)
    }
}

/// Number of spare atoms the default pool adds: one more than the largest
/// generator support.
pub fn spare_atoms(p: &FinPresentation) -> usize {
    1 + p.generators.max_support_size()
}

/// Rep supports, equation supports and `k = 1 + max |s(g)|` fresh atoms.
/// For the order symmetry `k` atoms are placed in every gap (below, between
/// and above the base atoms) so that every order type is realizable.
pub fn default_pool(p: &FinPresentation, reps: &[ExtElem]) -> AtomPool {
    let base = reps.iter().fold(p.equation_atoms(), |acc, e| acc.union(&ext_support(e)));
    let k = spare_atoms(p);
    let mut pool = base.clone();
    match p.sym {
        Symmetry::TotalOrder => pool.extend(order_gap_atoms(&base, k)),
        sym => pool.extend(fresh_many(sym, &base, k)),
    }
    AtomPool(pool)
}

fn order_gap_atoms(base: &Support, k: usize) -> Vec<Atom> {
    use crate::atoms::Rational;
    let pts: Vec<Rational> = base.iter().map(|a| a.as_rational()).collect();
    if pts.is_empty() {
        return (0..k as i64).map(Atom::int).collect();
    }
    let step = |n: usize| Rational::from_integer(n as i64);
    let mut out = Vec::new();
    for i in 1..=k {
        out.push(Atom::Rat(pts[0] - step(i)));
        out.push(Atom::Rat(pts[pts.len() - 1] + step(i)));
    }
    for w in pts.windows(2) {
        let width = (w[1] - w[0]) / step(k + 1);
        out.extend((1..=k).map(|i| Atom::Rat(w[0] + width * step(i))));
    }
    out
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// The pool-bounded quotient of `Ext G`, computed once and queried many
/// times.
pub struct PoolQuotient<'p> {
    presentation: &'p FinPresentation,
    pool: AtomPool,
    elems: Vec<ExtElem>,
    index: HashMap<ExtElem, usize>,
    class: Vec<usize>,
    classes: usize,
}

impl<'p> PoolQuotient<'p> {
    pub fn build(p: &'p FinPresentation, pool: AtomPool) -> PoolQuotient<'p> {
        let elems = ext_enumerate(p.sym, &p.generators, pool.atoms());
        let index: HashMap<ExtElem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        for (l, r) in &p.equations {
            let touched = ext_support(l).union(&ext_support(r));
            for tau in admissible_maps(p.sym, &touched, pool.atoms()) {
                let g = extend_to_global(p.sym, &tau).expect("admissible by construction");
                let (gl, gr) = (act(&g, l).unwrap(), act(&g, r).unwrap());
                union(&mut parent, index[&gl], index[&gr]);
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let class: Vec<usize> = (0..elems.len())
            .map(|i| {
                let root = find(&mut parent, i);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect();
        let classes = ids.len();
        PoolQuotient { presentation: p, pool, elems, index, class, classes }
    }

    pub fn pool(&self) -> &AtomPool {
        &self.pool
    }

    pub fn elements(&self) -> &[ExtElem] {
        &self.elems
    }

    /// Index of the class of `e`, which must live inside the pool.
    pub fn class_of(&self, e: &ExtElem) -> Result<usize, NomError> {
        match self.index.get(e) {
            Some(&i) => Ok(self.class[i]),
            None => Err(NomError::PoolTooSmall { pool: self.pool.0.clone(), needed: ext_support(e) }),
        }
    }

    pub fn quot_eq(&self, e1: &ExtElem, e2: &ExtElem) -> Result<bool, NomError> {
        Ok(self.class_of(e1)? == self.class_of(e2)?)
    }

    pub fn element_count(&self) -> usize {
        self.classes
    }

    /// Representatives of each class, least enumeration index first.
    pub fn class_representatives(&self) -> Vec<ExtElem> {
        let mut seen = vec![false; self.classes];
        self.elems
            .iter()
            .zip(&self.class)
            .filter(|(_, &c)| !std::mem::replace(&mut seen[c], true))
            .map(|(e, _)| e.clone())
            .collect()
    }

    fn require_group(&self) -> Result<Symmetry, NomError> {
        let sym = self.presentation.sym;
        if !sym.is_group() {
            return Err(NomError::NotAGroup(sym));
        }
        Ok(sym)
    }

    /// Classes of elements up to the action of pool-admissible maps.
    pub fn orbit_count(&self) -> Result<usize, NomError> {
        let sym = self.require_group()?;
        let mut parent: Vec<usize> = (0..self.classes).collect();
        for (i, e) in self.elems.iter().enumerate() {
            for tau in admissible_maps(sym, &ext_support(e), self.pool.atoms()) {
                let moved = ExtElem { pi: translate(&e.pi, &tau), base: e.base };
                union(&mut parent, self.class[i], self.class[self.index[&moved]]);
            }
        }
        Ok((0..self.classes).filter(|&c| find(&mut parent, c) == c).count())
    }

    /// Whether every pool-admissible map fixing `s` pointwise fixes the
    /// class of `e`.
    pub fn supports(&self, s: &Support, e: &ExtElem) -> Result<bool, NomError> {
        let sym = self.require_group()?;
        let home = self.class_of(e)?;
        let dom = ext_support(e);
        for tau in admissible_maps(sym, &dom, self.pool.atoms()) {
            if s.iter().filter(|a| dom.contains(a)).any(|a| tau.get(a) != Some(*a)) {
                continue;
            }
            let moved = ExtElem { pi: translate(&e.pi, &tau), base: e.base };
            if self.class[self.index[&moved]] != home {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least support of the class of `e`, found by greedy removal from
    /// `ext_support(e)`.
    pub fn supp_of(&self, e: &ExtElem) -> Result<Support, NomError> {
        let mut s = ext_support(e);
        for a in ext_support(e).iter() {
            let mut smaller = s.clone();
            smaller.remove(a);
            if self.supports(&smaller, e)? {
                s = smaller;
            }
        }
        Ok(s)
    }
}

/// `τ ∘ π` for a map `τ` defined on the image of `π`.
fn translate(pi: &RestrictedMap, tau: &FiniteMap) -> RestrictedMap {
    let map = tau.after(pi.map()).expect("tau is defined on the image");
    RestrictedMap::new(pi.symmetry(), map).expect("composite of admissible maps")
}

fn check_pool(pool: &AtomPool, reps: &[&ExtElem]) -> Result<(), NomError> {
    let needed = reps.iter().fold(Support::new(), |acc, e| acc.union(&ext_support(e)));
    if !needed.is_subset(pool.atoms()) {
        return Err(NomError::PoolTooSmall { pool: pool.0.clone(), needed });
    }
    Ok(())
}

pub fn quot_eq(p: &FinPresentation, e1: &ExtElem, e2: &ExtElem, pool: &AtomPool) -> Result<bool, NomError> {
    check_pool(pool, &[e1, e2])?;
    PoolQuotient::build(p, pool.clone()).quot_eq(e1, e2)
}

pub fn element_count(p: &FinPresentation, pool: &AtomPool) -> usize {
    PoolQuotient::build(p, pool.clone()).element_count()
}

pub fn orbit_count(p: &FinPresentation, pool: &AtomPool) -> Result<usize, NomError> {
    if !p.sym.is_group() {
        return Err(NomError::NotAGroup(p.sym));
    }
    PoolQuotient::build(p, pool.clone()).orbit_count()
}

pub fn supp_of(p: &FinPresentation, e: &ExtElem, pool: &AtomPool) -> Result<Support, NomError> {
    if !p.sym.is_group() {
        return Err(NomError::NotAGroup(p.sym));
    }
    check_pool(pool, &[e])?;
    PoolQuotient::build(p, pool.clone()).supp_of(e)
}

/// An element of the presented nominal set, via a representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotElem {
    pub rep: ExtElem,
}

/// `g · [e] = [g · e]`.
pub fn act_quot(g: &GlobalMap, q: &QuotElem) -> Result<QuotElem, NomError> {
    Ok(QuotElem { rep: act(g, &q.rep)? })
}

/// The presented nominal set as a carrier. Equality and supports are
/// decided over the default pool of the values involved.
pub struct QuotCarrier<'p> {
    pub presentation: &'p FinPresentation,
}

impl NominalCarrier for QuotCarrier<'_> {
    type Value = QuotElem;

    fn symmetry(&self) -> Symmetry {
        self.presentation.sym
    }

    fn equal(&self, a: &QuotElem, b: &QuotElem) -> bool {
        let pool = default_pool(self.presentation, &[a.rep.clone(), b.rep.clone()]);
        quot_eq(self.presentation, &a.rep, &b.rep, &pool).expect("default pool contains both")
    }

    fn act(&self, g: &GlobalMap, v: &QuotElem) -> QuotElem {
        act_quot(g, v).expect("carrier symmetry matches")
    }

    fn supp(&self, v: &QuotElem) -> Support {
        let pool = default_pool(self.presentation, std::slice::from_ref(&v.rep));
        match self.presentation.sym {
            Symmetry::Renaming => ext_support(&v.rep),
            _ => supp_of(self.presentation, &v.rep, &pool).expect("default pool contains the rep"),
        }
    }
}

/// Fixpoint-iteration closure, independent of the union-find path: relation
/// instances are found by matching equation sides against enumerated
/// elements instead of enumerating maps.
pub mod oracle {
    use super::*;

    fn instance(sym: Symmetry, pairs: &[(Atom, Atom)]) -> bool {
        let mut map = FiniteMap::new();
        for &(a, b) in pairs {
            match map.get(&a) {
                Some(prev) if prev != b => return false,
                _ => {
                    map.insert(a, b);
                }
            }
        }
        crate::atoms::is_admissible(sym, &map).unwrap_or(false)
    }

    /// The elements over `pool` and the equivalence matrix of the
    /// presentation's congruence, computed by saturating the relation.
    pub fn closure(p: &FinPresentation, pool: &AtomPool) -> (Vec<ExtElem>, Vec<Vec<bool>>) {
        let elems = ext_enumerate(p.sym, &p.generators, pool.atoms());
        let n = elems.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (l, r) in &p.equations {
            for (i, u) in elems.iter().enumerate().filter(|(_, u)| u.base == l.base) {
                for (j, v) in elems.iter().enumerate().filter(|(_, v)| v.base == r.base) {
                    let pairs: Vec<(Atom, Atom)> =
                        l.pi.map()
                            .iter()
                            .map(|(a, la)| (la, u.pi.get(&a).unwrap()))
                            .chain(r.pi.map().iter().map(|(a, ra)| (ra, v.pi.get(&a).unwrap())))
                            .collect();
                    if instance(p.sym, &pairs) {
                        rel[i][j] = true;
                        rel[j][i] = true;
                    }
                }
            }
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if rel[i][j] {
                        continue;
                    }
                    if (0..n).any(|k| rel[i][k] && rel[k][j]) {
                        rel[i][j] = true;
                        rel[j][i] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (elems, rel)
    }

    pub fn quot_eq(p: &FinPresentation, e1: &ExtElem, e2: &ExtElem, pool: &AtomPool) -> Option<bool> {
        let (elems, rel) = closure(p, pool);
        let i = elems.iter().position(|e| e == e1)?;
        let j = elems.iter().position(|e| e == e2)?;
        Some(rel[i][j])
    }

    pub fn element_count(p: &FinPresentation, pool: &AtomPool) -> usize {
        let (elems, rel) = closure(p, pool);
        (0..elems.len()).filter(|&i| (0..i).all(|j| !rel[i][j])).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EQ: Symmetry = Symmetry::Equality;

    fn pairs_elem(p: &FinPresentation, a: u64, b: u64) -> ExtElem {
        let pi = RestrictedMap::new(EQ, FiniteMap::nats([(0, a), (1, b)])).unwrap();
        ExtElem::new(&p.generators, pi, 0).unwrap()
    }

    fn free(gens: &[(&str, &[u64])]) -> FinPresentation {
        let g = SuppSet::new(gens.iter().map(|(id, s)| (*id, Support::nats(s.iter().copied())))).unwrap();
        FinPresentation::new(EQ, g, vec![]).unwrap()
    }

    #[test]
    fn default_pool_rule() {
        let p = FinPresentation::unordered_pairs();
        let reps = [pairs_elem(&p, 4, 7), pairs_elem(&p, 7, 4)];
        let pool = default_pool(&p, &reps);
        assert!(Support::nats([4, 7]).is_subset(pool.atoms()));
        assert_eq!(pool.atoms().difference(&Support::nats([0, 1, 4, 7])).len(), 3);

        let trivial = free(&[("g", &[])]);
        let e = unit(EQ, &trivial.generators, 0);
        assert_eq!(default_pool(&trivial, &[e]).len(), 1);

        let small = default_pool(&p, &reps[..1]);
        let more = default_pool(&p, &[reps[0].clone(), pairs_elem(&p, 8, 9)]);
        assert!(Support::nats([4, 7, 8, 9]).is_subset(more.atoms()));
        assert!(more.len() >= small.len());
    }

    #[test]
    fn pairs_quotient() {
        let p = FinPresentation::unordered_pairs();
        let pool = AtomPool::first(EQ, 5);
        assert!(quot_eq(&p, &pairs_elem(&p, 0, 1), &pairs_elem(&p, 1, 0), &pool).unwrap());
        assert!(!quot_eq(&p, &pairs_elem(&p, 0, 1), &pairs_elem(&p, 0, 2), &pool).unwrap());
        let three = AtomPool::first(EQ, 3);
        assert_eq!(element_count(&p, &three), 3);
        assert_eq!(orbit_count(&p, &three).unwrap(), 1);
        assert_eq!(
            supp_of(&p, &pairs_elem(&p, 4, 7), &default_pool(&p, &[pairs_elem(&p, 4, 7)])).unwrap(),
            Support::nats([4, 7])
        );
        let q = QuotElem { rep: pairs_elem(&p, 4, 7) };
        let swapped = act_quot(&GlobalMap::swap(4, 7), &q).unwrap();
        let pool = default_pool(&p, std::slice::from_ref(&q.rep));
        assert!(quot_eq(&p, &q.rep, &swapped.rep, &pool).unwrap());
        let moved = act_quot(&GlobalMap::swap(4, 9), &q).unwrap();
        let pool = default_pool(&p, &[q.rep.clone(), moved.rep.clone()]);
        assert!(!quot_eq(&p, &q.rep, &moved.rep, &pool).unwrap());
        assert_eq!(supp_of(&p, &moved.rep, &pool).unwrap(), Support::nats([7, 9]));
    }

    #[test]
    fn free_presentations() {
        let p = free(&[("g", &[0])]);
        let pool = AtomPool::first(EQ, 3);
        assert_eq!(element_count(&p, &pool), 3);
        let two = free(&[("g1", &[0]), ("g2", &[0])]);
        assert_eq!(orbit_count(&two, &pool).unwrap(), 2);
        let none = FinPresentation::new(EQ, SuppSet::empty(), vec![]).unwrap();
        assert_eq!(element_count(&none, &pool), 0);
        assert_eq!(orbit_count(&none, &pool).unwrap(), 0);
        let pp = free(&[("g", &[0, 1])]);
        let e = ExtElem::new(&pp.generators, RestrictedMap::new(EQ, FiniteMap::nats([(0, 2), (1, 0)])).unwrap(), 0)
            .unwrap();
        assert_eq!(supp_of(&pp, &e, &AtomPool::first(EQ, 5)).unwrap(), Support::nats([0, 2]));
        let f = pairs_elem(&pp, 0, 1);
        assert!(!quot_eq(&pp, &e, &f, &AtomPool::first(EQ, 5)).unwrap());
        assert!(quot_eq(&pp, &e, &e, &AtomPool::first(EQ, 5)).unwrap());
    }

    #[test]
    fn support_shrinks_with_equations() {
        // g with s(g) = {0, 1} and (1 2)·g = g: atom 1 is irrelevant
        let gens = SuppSet::new([("g", Support::nats([0, 1]))]).unwrap();
        let lhs = ExtElem::new(&gens, RestrictedMap::new(EQ, FiniteMap::nats([(0, 0), (1, 2)])).unwrap(), 0).unwrap();
        let p = FinPresentation::new(EQ, gens.clone(), vec![(lhs, unit(EQ, &gens, 0))]).unwrap();
        let e = unit(EQ, &gens, 0);
        let pool = default_pool(&p, std::slice::from_ref(&e));
        assert_eq!(supp_of(&p, &e, &pool).unwrap(), Support::nats([0]));
    }

    #[test]
    fn renaming_rejected_for_orbits() {
        let g = SuppSet::new([("g", Support::nats([0]))]).unwrap();
        let p = FinPresentation::new(Symmetry::Renaming, g, vec![]).unwrap();
        assert_eq!(
            orbit_count(&p, &AtomPool::first(Symmetry::Renaming, 2)),
            Err(NomError::NotAGroup(Symmetry::Renaming))
        );
        assert_eq!(element_count(&p, &AtomPool::first(Symmetry::Renaming, 2)), 2);
    }

    #[test]
    fn pool_must_contain_reps() {
        let p = FinPresentation::unordered_pairs();
        let err = quot_eq(&p, &pairs_elem(&p, 0, 9), &pairs_elem(&p, 0, 1), &AtomPool::first(EQ, 3));
        assert!(matches!(err, Err(NomError::PoolTooSmall { .. })));
    }

    #[test]
    fn oracle_agrees_on_pairs() {
        let p = FinPresentation::unordered_pairs();
        let pool = AtomPool::first(EQ, 4);
        let q = PoolQuotient::build(&p, pool.clone());
        let (elems, rel) = oracle::closure(&p, &pool);
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                assert_eq!(q.quot_eq(a, b).unwrap(), rel[i][j]);
            }
        }
        assert_eq!(oracle::element_count(&p, &pool), q.element_count());
    }

    #[test]
    fn order_symmetry_presentation() {
        let sym = Symmetry::TotalOrder;
        let gens = SuppSet::new([("g", Support::from_iter([Atom::int(0), Atom::int(1)]))]).unwrap();
        let p = FinPresentation::new(sym, gens.clone(), vec![]).unwrap();
        let e = unit(sym, &gens, 0);
        let pool = default_pool(&p, std::slice::from_ref(&e));
        assert_eq!(supp_of(&p, &e, &pool).unwrap(), gens.support(0).clone());
        assert_eq!(orbit_count(&p, &pool).unwrap(), 1);
    }

    #[test]
    fn presentation_json() {
        let p = FinPresentation::unordered_pairs();
        let j = p.to_json();
        assert_eq!(FinPresentation::from_json(&j).unwrap(), p);
        assert_eq!(j["symmetry"], "equality");
    }
}
