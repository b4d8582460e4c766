//! Restricted maps `[m]_S` and the free nominal set `Ext X` over a
//! supported set.
//!
//! `[m]_S` is stored as its canonical representative, the pointwise
//! restriction `m|_S`. An element of `Ext X` is a pair `(π, x)` with
//! `dom π = s_X(x)`. Global representatives are reconstructed on demand with
//! [`extend_to_global`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atoms::{
    alternate_extension, extend_to_global, is_admissible, Atom, AtomError, FiniteMap, GlobalMap, Support, Symmetry,
};
use crate::suppset::{ElemId, SuppError, SuppMap, SuppSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error(transparent)]
    Atom(#[from] AtomError),
    #[error(transparent)]
    Supp(#[from] SuppError),
    #[error("map {map} is not admissible for the {sym} symmetry")]
    NotAdmissible { sym: Symmetry, map: FiniteMap },
    #[error("symmetry mismatch: expected {expected}, found {found}")]
    SymmetryMismatch { expected: Symmetry, found: Symmetry },
    #[error("domain {found} does not match the required {expected}")]
    DomainMismatch { expected: Support, found: Support },
    #[error("support of f({element}) is {image} which is not contained in {support}")]
    SupportNotContained { element: String, image: Support, support: Support },
    #[error("extension is not independent of the chosen global representative at {0}")]
    NotWellDefined(String),
    #[error("malformed element: {0}")]
    Malformed(String),
}

/// The class `[m]_S` of monoid elements agreeing on `S`, stored as `m|_S`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RestrictedMap {
    sym: Symmetry,
    map: FiniteMap,
}

impl RestrictedMap {
    pub fn new(sym: Symmetry, map: FiniteMap) -> Result<RestrictedMap, FreeError> {
        if !is_admissible(sym, &map)? {
            return Err(FreeError::NotAdmissible { sym, map });
        }
        Ok(RestrictedMap { sym, map })
    }

    pub fn identity(sym: Symmetry, s: &Support) -> RestrictedMap {
        RestrictedMap { sym, map: FiniteMap::identity_on(s) }
    }

    pub fn symmetry(&self) -> Symmetry {
        self.sym
    }

    pub fn map(&self) -> &FiniteMap {
        &self.map
    }

    pub fn domain(&self) -> Support {
        self.map.domain()
    }

    pub fn image(&self) -> Support {
        self.map.image()
    }

    pub fn get(&self, a: &Atom) -> Option<Atom> {
        self.map.get(a)
    }

    /// Pointwise `self ∘ inner`; `inner`'s image must equal this domain.
    pub fn after(&self, inner: &RestrictedMap) -> Result<RestrictedMap, FreeError> {
        self.check_sym(inner.sym)?;
        if inner.image() != self.domain() {
            return Err(FreeError::DomainMismatch { expected: inner.image(), found: self.domain() });
        }
        let map = self.map.after(&inner.map).expect("image checked against domain");
        Ok(RestrictedMap { sym: self.sym, map })
    }

    /// `[g ∘ m]_S`.
    pub fn post(&self, g: &GlobalMap) -> Result<RestrictedMap, FreeError> {
        self.check_sym(g.symmetry())?;
        Ok(RestrictedMap { sym: self.sym, map: self.map.post_apply(g) })
    }

    pub fn restrict(&self, s: &Support) -> RestrictedMap {
        RestrictedMap { sym: self.sym, map: self.map.restrict(s) }
    }

    /// The deterministic global representative.
    pub fn to_global(&self) -> GlobalMap {
        extend_to_global(self.sym, &self.map).expect("restricted maps are admissible")
    }

    fn check_sym(&self, found: Symmetry) -> Result<(), FreeError> {
        if found != self.sym {
            return Err(FreeError::SymmetryMismatch { expected: self.sym, found });
        }
        Ok(())
    }
}

impl fmt::Display for RestrictedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.map.fmt(f)
    }
}

/// Pointwise restriction of `g` to `s`.
pub fn restrict(g: &GlobalMap, s: &Support) -> RestrictedMap {
    RestrictedMap { sym: g.symmetry(), map: g.restrict_to(s) }
}

/// An element `([m]_{s(x)}, x)` of `Ext X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElem {
    pub pi: RestrictedMap,
    pub base: ElemId,
}

#[derive(Serialize, Deserialize)]
struct ExtElemJson {
    pi: FiniteMap,
    base: String,
}

impl ExtElem {
    pub fn new(x: &SuppSet, pi: RestrictedMap, base: ElemId) -> Result<ExtElem, FreeError> {
        if base >= x.len() {
            return Err(FreeError::Malformed(format!("no element with index {base}")));
        }
        if &pi.domain() != x.support(base) {
            return Err(FreeError::DomainMismatch { expected: x.support(base).clone(), found: pi.domain() });
        }
        Ok(ExtElem { pi, base })
    }

    pub fn symmetry(&self) -> Symmetry {
        self.pi.sym
    }

    pub fn to_json(&self, x: &SuppSet) -> serde_json::Value {
        serde_json::to_value(ExtElemJson { pi: self.pi.map.clone(), base: x.name(self.base).to_string() })
            .expect("ext element serializes")
    }

    /// Parses `{"pi": {atom: atom}, "base": id}` over `x`.
    pub fn from_json(value: &serde_json::Value, sym: Symmetry, x: &SuppSet) -> Result<ExtElem, FreeError> {
        let j: ExtElemJson = serde_json::from_value(value.clone()).map_err(|e| FreeError::Malformed(e.to_string()))?;
        let map =
            j.pi.iter().map(|(a, b)| Ok((a.coerce(sym)?, b.coerce(sym)?))).collect::<Result<FiniteMap, AtomError>>()?;
        let base = x.lookup(&j.base)?;
        ExtElem::new(x, RestrictedMap::new(sym, map)?, base)
    }

    pub fn display<'a>(&'a self, x: &'a SuppSet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a ExtElem, &'a SuppSet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {})", self.0.pi, self.1.name(self.0.base))
            }
        }
        D(self, x)
    }
}

/// `supp(π, x) = π[s(x)]`.
pub fn ext_support(e: &ExtElem) -> Support {
    e.pi.image()
}

/// `g · (π, x) = ([g ∘ π]_{s(x)}, x)`.
pub fn act(g: &GlobalMap, e: &ExtElem) -> Result<ExtElem, FreeError> {
    Ok(ExtElem { pi: e.pi.post(g)?, base: e.base })
}

/// `η(x) = ([id]_{s(x)}, x)`.
pub fn unit(sym: Symmetry, x: &SuppSet, base: ElemId) -> ExtElem {
    ExtElem { pi: RestrictedMap::identity(sym, x.support(base)), base }
}

/// `(Ext f)(π, x) = (π|_{s_Y(f(x))}, f(x))`.
pub fn ext_map(f: &SuppMap, e: &ExtElem) -> ExtElem {
    let y = f.apply(e.base);
    ExtElem { pi: e.pi.restrict(f.target().support(y)), base: y }
}

/// Monad multiplication on the canonical pair `(outer, e)` of `Ext Ext X`.
pub fn mult(outer: &RestrictedMap, e: &ExtElem) -> Result<ExtElem, FreeError> {
    if outer.domain() != ext_support(e) {
        return Err(FreeError::DomainMismatch { expected: ext_support(e), found: outer.domain() });
    }
    Ok(ExtElem { pi: outer.after(&e.pi)?, base: e.base })
}

/// Every admissible map from `domain` into `pool`, in lexicographic order of
/// the image tuple over the sorted domain.
pub fn admissible_maps(sym: Symmetry, domain: &Support, pool: &Support) -> Vec<FiniteMap> {
    let dom = domain.to_vec();
    let pool = pool.to_vec();
    let mut out = Vec::new();
    let mut images: Vec<Atom> = Vec::with_capacity(dom.len());
    fn go(sym: Symmetry, dom: &[Atom], pool: &[Atom], images: &mut Vec<Atom>, out: &mut Vec<FiniteMap>) {
        if images.len() == dom.len() {
            out.push(dom.iter().copied().zip(images.iter().copied()).collect());
            return;
        }
        for &b in pool {
            let ok = match sym {
                Symmetry::Equality => !images.contains(&b),
                Symmetry::TotalOrder => images.last().is_none_or(|&last| last < b),
                Symmetry::Renaming => true,
            };
            if ok {
                images.push(b);
                go(sym, dom, pool, images, out);
                images.pop();
            }
        }
    }
    go(sym, &dom, &pool, &mut images, &mut out);
    out
}

/// The pool-bounded part of `Ext X`: all `(π, x)` with `π` admissible from
/// `s(x)` into `pool`.
pub fn ext_enumerate(sym: Symmetry, x: &SuppSet, pool: &Support) -> Vec<ExtElem> {
    x.ids()
        .flat_map(|base| {
            admissible_maps(sym, x.support(base), pool)
                .into_iter()
                .map(move |map| ExtElem { pi: RestrictedMap { sym, map }, base })
        })
        .collect()
}

/// A nominal set given by decidable equality, an action and supports.
pub trait NominalCarrier {
    type Value: Clone + fmt::Debug;

    fn symmetry(&self) -> Symmetry;
    fn equal(&self, a: &Self::Value, b: &Self::Value) -> bool;
    fn act(&self, g: &GlobalMap, v: &Self::Value) -> Self::Value;
    fn supp(&self, v: &Self::Value) -> Support;
}

/// `Ext X` itself as a nominal carrier.
pub struct ExtCarrier<'a> {
    pub sym: Symmetry,
    pub set: &'a SuppSet,
}

impl NominalCarrier for ExtCarrier<'_> {
    type Value = ExtElem;

    fn symmetry(&self) -> Symmetry {
        self.sym
    }

    fn equal(&self, a: &ExtElem, b: &ExtElem) -> bool {
        a == b
    }

    fn act(&self, g: &GlobalMap, v: &ExtElem) -> ExtElem {
        act(g, v).expect("carrier symmetry matches")
    }

    fn supp(&self, v: &ExtElem) -> Support {
        ext_support(v)
    }
}

/// Finite sets of atoms with the pointwise action.
pub struct AtomSets(pub Symmetry);

impl NominalCarrier for AtomSets {
    type Value = Support;

    fn symmetry(&self) -> Symmetry {
        self.0
    }

    fn equal(&self, a: &Support, b: &Support) -> bool {
        a == b
    }

    fn act(&self, g: &GlobalMap, v: &Support) -> Support {
        v.image(g)
    }

    fn supp(&self, v: &Support) -> Support {
        v.clone()
    }
}

/// The unique equivariant map `Ext X → V` extending `f: X → V` along the
/// unit. Requires `supp(f(x)) ⊆ s_X(x)` for every `x`.
pub struct Extension<'c, C: NominalCarrier> {
    carrier: &'c C,
    values: Vec<C::Value>,
    names: Vec<String>,
}

impl<'c, C: NominalCarrier> Extension<'c, C> {
    pub fn new(carrier: &'c C, x: &SuppSet, f: impl Fn(ElemId) -> C::Value) -> Result<Self, FreeError> {
        let values: Vec<C::Value> = x.ids().map(&f).collect();
        for (e, v) in values.iter().enumerate() {
            let image = carrier.supp(v);
            if !image.is_subset(x.support(e)) {
                return Err(FreeError::SupportNotContained {
                    element: x.name(e).to_string(),
                    image,
                    support: x.support(e).clone(),
                });
            }
        }
        Ok(Extension { carrier, values, names: x.ids().map(|e| x.name(e).to_string()).collect() })
    }

    /// `(π, x) ↦ m · f(x)` for a global `m` with `m|_{s(x)} = π`; a second
    /// representative is tried and must give the same result.
    pub fn apply(&self, e: &ExtElem) -> Result<C::Value, FreeError> {
        let v = &self.values[e.base];
        let sym = self.carrier.symmetry();
        let first = self.carrier.act(&extend_to_global(sym, e.pi.map())?, v);
        let second = self.carrier.act(&alternate_extension(sym, e.pi.map())?, v);
        if !self.carrier.equal(&first, &second) {
            return Err(FreeError::NotWellDefined(self.names[e.base].clone()));
        }
        Ok(first)
    }
}

/// One-shot form of [`Extension::apply`].
pub fn extend<C: NominalCarrier>(
    carrier: &C,
    x: &SuppSet,
    f: impl Fn(ElemId) -> C::Value,
    e: &ExtElem,
) -> Result<C::Value, FreeError> {
    Extension::new(carrier, x, f)?.apply(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suppset::check_supported_map;

    const EQ: Symmetry = Symmetry::Equality;

    fn rm(pairs: &[(u64, u64)]) -> RestrictedMap {
        RestrictedMap::new(EQ, FiniteMap::nats(pairs.iter().copied())).unwrap()
    }

    fn gen(s: &[u64]) -> SuppSet {
        SuppSet::new([("x", Support::nats(s.iter().copied()))]).unwrap()
    }

    #[test]
    fn restrict_examples() {
        let id = GlobalMap::identity(EQ);
        assert_eq!(restrict(&id, &Support::nats([1, 2])), rm(&[(1, 1), (2, 2)]));
        assert_eq!(restrict(&GlobalMap::swap(0, 1), &Support::nats([0, 1])), rm(&[(0, 1), (1, 0)]));
        let c = GlobalMap::cycle(&[0, 2, 1]).unwrap();
        assert_eq!(restrict(&c, &Support::nats([0])), rm(&[(0, 2)]));
    }

    #[test]
    fn support_and_action() {
        let x = gen(&[0, 1]);
        let e = ExtElem::new(&x, rm(&[(0, 4), (1, 7)]), 0).unwrap();
        assert_eq!(ext_support(&e), Support::nats([4, 7]));
        let empty = SuppSet::new([("y", Support::new())]).unwrap();
        assert_eq!(ext_support(&unit(EQ, &empty, 0)), Support::new());
        assert_eq!(ext_support(&unit(EQ, &x, 0)), Support::nats([0, 1]));

        let u = unit(EQ, &x, 0);
        assert_eq!(act(&GlobalMap::identity(EQ), &u).unwrap(), u);
        assert_eq!(act(&GlobalMap::swap(0, 1), &u).unwrap().pi, rm(&[(0, 1), (1, 0)]));
        let x0 = gen(&[0]);
        let e = ExtElem::new(&x0, rm(&[(0, 1)]), 0).unwrap();
        assert_eq!(act(&GlobalMap::swap(1, 2), &e).unwrap().pi, rm(&[(0, 2)]));
    }

    #[test]
    fn unit_examples() {
        let x = gen(&[1, 2]);
        assert_eq!(unit(EQ, &x, 0).pi, rm(&[(1, 1), (2, 2)]));
    }

    #[test]
    fn ext_map_examples() {
        let x = gen(&[0, 1]);
        let y = SuppSet::new([("y", Support::nats([0]))]).unwrap();
        let f = check_supported_map(&[0], &x, &y).unwrap();
        let e = ExtElem::new(&x, rm(&[(0, 4), (1, 7)]), 0).unwrap();
        assert_eq!(ext_map(&f, &e).pi, rm(&[(0, 4)]));
        assert_eq!(ext_map(&SuppMap::identity(&x), &e), e);
        assert_eq!(ext_map(&f, &unit(EQ, &x, 0)), unit(EQ, &y, 0));
    }

    #[test]
    fn extend_examples() {
        let x = gen(&[0, 1]);
        let carrier = AtomSets(EQ);
        let f = |_| Support::nats([0, 1]);
        let e = ExtElem::new(&x, rm(&[(0, 4), (1, 7)]), 0).unwrap();
        assert_eq!(extend(&carrier, &x, f, &e).unwrap(), Support::nats([4, 7]));
        assert_eq!(extend(&carrier, &x, f, &unit(EQ, &x, 0)).unwrap(), Support::nats([0, 1]));
        let g = GlobalMap::cycle(&[4, 9, 2]).unwrap();
        let lhs = extend(&carrier, &x, f, &act(&g, &e).unwrap()).unwrap();
        assert_eq!(lhs, carrier.act(&g, &extend(&carrier, &x, f, &e).unwrap()));
        let err = extend(&carrier, &x, |_| Support::nats([3]), &e).unwrap_err();
        assert!(matches!(err, FreeError::SupportNotContained { .. }));
    }

    #[test]
    fn mult_examples() {
        let x = gen(&[0, 1]);
        let e = ExtElem::new(&x, rm(&[(0, 4), (1, 7)]), 0).unwrap();
        let id = RestrictedMap::identity(EQ, &ext_support(&e));
        assert_eq!(mult(&id, &e).unwrap(), e);
        let g = GlobalMap::cycle(&[0, 3, 5]).unwrap();
        let u = unit(EQ, &x, 0);
        assert_eq!(mult(&restrict(&g, &ext_support(&u)), &u).unwrap().pi, restrict(&g, x.support(0)));
        // associativity: both bracketings of o2 ∘ o1 ∘ π
        let o1 = rm(&[(4, 1), (7, 8)]);
        let o2 = rm(&[(1, 2), (8, 0)]);
        let left = mult(&o2.after(&o1).unwrap(), &e).unwrap();
        let right = mult(&o2, &mult(&o1, &e).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.pi, rm(&[(0, 2), (1, 0)]));
        assert!(mult(&rm(&[(4, 4)]), &e).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let x = gen(&[0, 1]);
        let pool = Support::nats([5, 6, 7]);
        assert_eq!(ext_enumerate(EQ, &x, &pool).len(), 6);
        assert_eq!(ext_enumerate(Symmetry::Renaming, &x, &pool).len(), 9);
        let xq = SuppSet::new([("x", Support::from_iter([Atom::int(0), Atom::int(1)]))]).unwrap();
        let qpool: Support = [5, 6, 7].into_iter().map(Atom::int).collect();
        assert_eq!(ext_enumerate(Symmetry::TotalOrder, &xq, &qpool).len(), 3);
    }

    #[test]
    fn supports_exactly_above_ext_support() {
        // S supports e iff every pair of maps agreeing on S acts equally on e
        let x = gen(&[0, 1]);
        let e = ExtElem::new(&x, rm(&[(0, 2), (1, 3)]), 0).unwrap();
        let pool = Support::nats(0..5);
        let maps = admissible_maps(EQ, &pool, &pool);
        for s in [vec![], vec![2], vec![2, 3], vec![1, 2, 3], vec![3, 4]] {
            let s = Support::nats(s);
            let supports = maps.iter().all(|m| {
                maps.iter().filter(|n| m.restrict(&s) == n.restrict(&s)).all(|n| {
                    let gm = extend_to_global(EQ, m).unwrap();
                    let gn = extend_to_global(EQ, n).unwrap();
                    act(&gm, &e).unwrap() == act(&gn, &e).unwrap()
                })
            });
            assert_eq!(supports, ext_support(&e).is_subset(&s), "S = {s}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let x = gen(&[0, 1]);
        let e = ExtElem::new(&x, rm(&[(0, 4), (1, 7)]), 0).unwrap();
        let j = e.to_json(&x);
        assert_eq!(j, serde_json::json!({"pi": {"0": 4, "1": 7}, "base": "x"}));
        assert_eq!(ExtElem::from_json(&j, EQ, &x).unwrap(), e);
        let bad = serde_json::json!({"pi": {"0": 4}, "base": "x"});
        assert!(ExtElem::from_json(&bad, EQ, &x).is_err());
    }
}
