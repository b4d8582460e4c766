//! Finite supported sets and supported maps.
//!
//! A supported set pairs every element with a finite set of atoms; a
//! supported map may only shrink supports. The (co)limit, exponential,
//! image and classifier constructions below are the finite instances of the
//! categorical ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atoms::Support;

/// Index of an element inside its [`SuppSet`].
pub type ElemId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuppError {
    #[error("duplicate element id {0:?}")]
    DuplicateId(String),
    #[error("unknown element id {0:?}")]
    UnknownId(String),
    #[error("map is not total: {0} of {1} source elements mapped")]
    NotTotal(usize, usize),
    #[error("maps are not parallel")]
    NotParallel,
    #[error("maps are not composable")]
    NotComposable,
    #[error("{0}")]
    Violation(#[from] SupportViolation),
    #[error("map is not injective")]
    NotInjective,
    #[error("map is not support-reflecting at {0:?}")]
    NotSupportReflecting(String),
    #[error("family is not uniformly supported: union exceeds {0} atoms")]
    NotUniformlySupported(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub id: String,
    pub support: Support,
}

/// A finite carrier with a support function.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "SuppSetJson", into = "SuppSetJson")]
pub struct SuppSet {
    elements: Vec<Element>,
    index: HashMap<String, ElemId>,
}

impl PartialEq for SuppSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for SuppSet {}

#[derive(Serialize, Deserialize)]
struct SuppSetJson {
    elements: Vec<Element>,
}

impl TryFrom<SuppSetJson> for SuppSet {
    type Error = SuppError;
    fn try_from(j: SuppSetJson) -> Result<Self, SuppError> {
        SuppSet::new(j.elements.into_iter().map(|e| (e.id, e.support)))
    }
}

impl From<SuppSet> for SuppSetJson {
    fn from(s: SuppSet) -> Self {
        SuppSetJson { elements: s.elements }
    }
}

impl SuppSet {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = (S, Support)>) -> Result<SuppSet, SuppError> {
        let mut set = SuppSet::default();
        for (id, support) in elements {
            set.push(id.into(), support)?;
        }
        Ok(set)
    }

    pub fn empty() -> SuppSet {
        SuppSet::default()
    }

    /// The terminal object: one element with empty support.
    pub fn terminal() -> SuppSet {
        SuppSet::new([("*", Support::new())]).unwrap()
    }

    /// The two-element set `{0, 1}` with empty supports.
    pub fn two() -> SuppSet {
        SuppSet::new([("0", Support::new()), ("1", Support::new())]).unwrap()
    }

    pub fn push(&mut self, id: String, support: Support) -> Result<ElemId, SuppError> {
        if self.index.contains_key(&id) {
            return Err(SuppError::DuplicateId(id));
        }
        let ix = self.elements.len();
        self.index.insert(id.clone(), ix);
        self.elements.push(Element { id, support });
        Ok(ix)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn support(&self, x: ElemId) -> &Support {
        &self.elements[x].support
    }

    pub fn name(&self, x: ElemId) -> &str {
        &self.elements[x].id
    }

    pub fn lookup(&self, id: &str) -> Result<ElemId, SuppError> {
        self.index.get(id).copied().ok_or_else(|| SuppError::UnknownId(id.to_string()))
    }

    /// The union of all supports.
    pub fn all_atoms(&self) -> Support {
        self.elements.iter().fold(Support::new(), |acc, e| acc.union(&e.support))
    }

    pub fn max_support_size(&self) -> usize {
        self.elements.iter().map(|e| e.support.len()).max().unwrap_or(0)
    }
}

/// One element at which a candidate map grows the support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub element: String,
    pub image: String,
    pub source_support: Support,
    pub image_support: Support,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("not a supported map: support grows at {}", self.elements().join(", "))]
pub struct SupportViolation {
    pub violations: Vec<Violation>,
}

impl SupportViolation {
    pub fn elements(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.element.clone()).collect()
    }
}

/// A function between supported sets with `s_Y(f(x)) ⊆ s_X(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuppMap {
    source: SuppSet,
    target: SuppSet,
    map: Vec<ElemId>,
}

#[derive(Serialize, Deserialize)]
struct SuppMapJson {
    map: BTreeMap<String, String>,
}

impl SuppMap {
    pub fn source(&self) -> &SuppSet {
        &self.source
    }

    pub fn target(&self) -> &SuppSet {
        &self.target
    }

    pub fn apply(&self, x: ElemId) -> ElemId {
        self.map[x]
    }

    pub fn mapping(&self) -> &[ElemId] {
        &self.map
    }

    pub fn identity(x: &SuppSet) -> SuppMap {
        SuppMap { source: x.clone(), target: x.clone(), map: x.ids().collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SuppMap) -> Result<SuppMap, SuppError> {
        if first.target != self.source {
            return Err(SuppError::NotComposable);
        }
        Ok(SuppMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `s_Y(f(x)) = s_X(x)` everywhere.
    pub fn is_support_reflecting(&self) -> bool {
        self.source.ids().all(|x| self.source.support(x) == self.target.support(self.map[x]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .source
            .ids()
            .map(|x| (self.source.name(x).to_string(), self.target.name(self.map[x]).to_string()))
            .collect();
        serde_json::to_value(SuppMapJson { map }).expect("string map serializes")
    }

    /// Parses `{"map": {id: id}}` against the given source and target and
    /// checks the support condition.
    pub fn from_json(value: &serde_json::Value, x: &SuppSet, y: &SuppSet) -> Result<SuppMap, SuppError> {
        let j: SuppMapJson = serde_json::from_value(value.clone()).map_err(|e| SuppError::UnknownId(e.to_string()))?;
        let mut map = vec![None; x.len()];
        for (a, b) in &j.map {
            map[x.lookup(a)?] = Some(y.lookup(b)?);
        }
        let total: Vec<ElemId> = map.iter().flatten().copied().collect();
        if total.len() != x.len() {
            return Err(SuppError::NotTotal(total.len(), x.len()));
        }
        Ok(check_supported_map(&total, x, y)?)
    }
}

impl fmt::Display for SuppMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for x in self.source.ids() {
            if x > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}↦{}", self.source.name(x), self.target.name(self.map[x]))?;
        }
        f.write_str("}")
    }
}

/// Checks `s_Y(f(x)) ⊆ s_X(x)` for the total function `f` (given by its
/// images, indexed by source element).
pub fn check_supported_map(f: &[ElemId], x: &SuppSet, y: &SuppSet) -> Result<SuppMap, SupportViolation> {
    assert_eq!(f.len(), x.len(), "function must be total on the source");
    let violations: Vec<Violation> = x
        .ids()
        .filter(|&e| !y.support(f[e]).is_subset(x.support(e)))
        .map(|e| Violation {
            element: x.name(e).to_string(),
            image: y.name(f[e]).to_string(),
            source_support: x.support(e).clone(),
            image_support: y.support(f[e]).clone(),
        })
        .collect();
    if violations.is_empty() {
        Ok(SuppMap { source: x.clone(), target: y.clone(), map: f.to_vec() })
    } else {
        Err(SupportViolation { violations })
    }
}

/// Every supported map from `x` to `y`, in lexicographic order of images.
pub fn supported_maps(x: &SuppSet, y: &SuppSet) -> Vec<SuppMap> {
    let choices: Vec<Vec<ElemId>> =
        x.ids().map(|e| y.ids().filter(|&t| y.support(t).is_subset(x.support(e))).collect()).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(x.len());
    fn go(choices: &[Vec<ElemId>], current: &mut Vec<ElemId>, out: &mut Vec<Vec<ElemId>>) {
        if current.len() == choices.len() {
            out.push(current.clone());
            return;
        }
        for &c in &choices[current.len()] {
            current.push(c);
            go(choices, current, out);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    go(&choices, &mut current, &mut raw);
    for m in raw {
        out.push(SuppMap { source: x.clone(), target: y.clone(), map: m });
    }
    out
}

pub struct Product {
    pub set: SuppSet,
    pub left: SuppMap,
    pub right: SuppMap,
}

impl Product {
    pub fn pair(&self, x: ElemId, y: ElemId) -> ElemId {
        x * self.right.target.len() + y
    }
}

/// `X × Y` with `s(x, y) = s_X(x) ∪ s_Y(y)`.
pub fn product(x: &SuppSet, y: &SuppSet) -> Product {
    let mut set = SuppSet::empty();
    let (mut l, mut r) = (Vec::new(), Vec::new());
    for a in x.ids() {
        for b in y.ids() {
            let id = format!("({},{})", x.name(a), y.name(b));
            set.push(id, x.support(a).union(y.support(b))).expect("pair ids are distinct");
            l.push(a);
            r.push(b);
        }
    }
    Product {
        left: SuppMap { source: set.clone(), target: x.clone(), map: l },
        right: SuppMap { source: set.clone(), target: y.clone(), map: r },
        set,
    }
}

pub struct Coproduct {
    pub set: SuppSet,
    pub left: SuppMap,
    pub right: SuppMap,
}

/// Disjoint union; injected elements keep their supports.
pub fn coproduct(x: &SuppSet, y: &SuppSet) -> Coproduct {
    let mut set = SuppSet::empty();
    for a in x.ids() {
        set.push(format!("inl({})", x.name(a)), x.support(a).clone()).expect("distinct");
    }
    for b in y.ids() {
        set.push(format!("inr({})", y.name(b)), y.support(b).clone()).expect("distinct");
    }
    Coproduct {
        left: SuppMap { source: x.clone(), target: set.clone(), map: x.ids().collect() },
        right: SuppMap { source: y.clone(), target: set.clone(), map: y.ids().map(|b| b + x.len()).collect() },
        set,
    }
}

/// A quotient `X ↠ X/~`, with each class named by its least member.
pub struct Quotient {
    pub set: SuppSet,
    pub epi: SuppMap,
    pub classes: Vec<Vec<ElemId>>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

fn quotient_by(x: &SuppSet, pairs: impl IntoIterator<Item = (ElemId, ElemId)>) -> Quotient {
    let mut parent: Vec<usize> = x.ids().collect();
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut class_of = vec![usize::MAX; x.len()];
    let mut classes: Vec<Vec<ElemId>> = Vec::new();
    for e in x.ids() {
        let root = find(&mut parent, e);
        if class_of[root] == usize::MAX {
            class_of[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of[root]].push(e);
    }
    let mut set = SuppSet::empty();
    for class in &classes {
        let support = class.iter().skip(1).fold(x.support(class[0]).clone(), |acc, &m| acc.intersection(x.support(m)));
        set.push(x.name(class[0]).to_string(), support).expect("class names are distinct");
    }
    let map = x.ids().map(|e| class_of[find(&mut parent, e)]).collect();
    Quotient { epi: SuppMap { source: x.clone(), target: set.clone(), map }, set, classes }
}

fn check_parallel(f: &SuppMap, g: &SuppMap) -> Result<(), SuppError> {
    if f.source != g.source || f.target != g.target {
        return Err(SuppError::NotParallel);
    }
    Ok(())
}

/// The coequalizer of `f, g: R ⇉ X`; each class carries the intersection of
/// its members' supports.
pub fn coequalizer(f: &SuppMap, g: &SuppMap) -> Result<Quotient, SuppError> {
    check_parallel(f, g)?;
    Ok(quotient_by(&f.target, f.source.ids().map(|r| (f.apply(r), g.apply(r)))))
}

/// The equalizer `{x | f(x) = g(x)}` with inherited supports.
pub fn equalizer(f: &SuppMap, g: &SuppMap) -> Result<(SuppSet, SuppMap), SuppError> {
    check_parallel(f, g)?;
    let x = &f.source;
    let keep: Vec<ElemId> = x.ids().filter(|&e| f.apply(e) == g.apply(e)).collect();
    let set = SuppSet::new(keep.iter().map(|&e| (x.name(e).to_string(), x.support(e).clone())))?;
    let incl = SuppMap { source: set.clone(), target: x.clone(), map: keep };
    Ok((set, incl))
}

pub struct Exponential {
    pub set: SuppSet,
    /// The function represented by each element, as images indexed by `E`.
    pub functions: Vec<Vec<ElemId>>,
}

/// Support of a function `f: E → X` as an element of `X^E`:
/// `⋃_e s_X(f(e)) \ s_E(e)`.
pub fn function_support(e: &SuppSet, x: &SuppSet, f: &[ElemId]) -> Support {
    e.ids().fold(Support::new(), |acc, i| acc.union(&x.support(f[i]).difference(e.support(i))))
}

/// All functions `E → X`.
pub fn exponential(e: &SuppSet, x: &SuppSet) -> Exponential {
    let mut functions: Vec<Vec<ElemId>> = vec![Vec::new()];
    for _ in e.ids() {
        functions = functions
            .into_iter()
            .flat_map(|f| {
                x.ids().map(move |t| {
                    let mut g = f.clone();
                    g.push(t);
                    g
                })
            })
            .collect();
    }
    let mut set = SuppSet::empty();
    for f in &functions {
        let id =
            format!("[{}]", e.ids().map(|i| format!("{}↦{}", e.name(i), x.name(f[i]))).collect::<Vec<_>>().join(","));
        set.push(id, function_support(e, x, f)).expect("function ids are distinct");
    }
    Exponential { set, functions }
}

/// Isomorphisms are exactly the support-reflecting bijections.
pub fn is_iso(f: &SuppMap) -> bool {
    f.is_injective() && f.is_surjective() && f.is_support_reflecting()
}

/// The characteristic map `χ: X → 2` of a regular (support-reflecting)
/// monomorphism.
pub fn classify_regular_subobject(m: &SuppMap) -> Result<SuppMap, SuppError> {
    if !m.is_injective() {
        return Err(SuppError::NotInjective);
    }
    if let Some(s) = m.source.ids().find(|&s| m.source.support(s) != m.target.support(m.apply(s))) {
        return Err(SuppError::NotSupportReflecting(m.source.name(s).to_string()));
    }
    let mut chi = vec![0; m.target.len()];
    for &x in &m.map {
        chi[x] = 1;
    }
    Ok(check_supported_map(&chi, &m.target, &SuppSet::two())?)
}

/// The map `1 → 2` picking `1`.
pub fn truth() -> SuppMap {
    SuppMap { source: SuppSet::terminal(), target: SuppSet::two(), map: vec![1] }
}

/// Image factorization `X ↠ Im ↣ Y` where the image inherits supports from
/// the source, `s(i) = ⋂{s_X(x) | e(x) = i}`; the epi is regular.
pub fn image_from_source(f: &SuppMap) -> (SuppSet, SuppMap, SuppMap) {
    let q = quotient_by(&f.source, pairs_with_equal_image(f));
    let m = q.classes.iter().map(|c| f.apply(c[0])).collect();
    let mono = SuppMap { source: q.set.clone(), target: f.target.clone(), map: m };
    (q.set, q.epi, mono)
}

/// Image factorization where the image inherits supports from the target,
/// `s(i) = s_Y(m(i))`; the mono is regular.
pub fn image_from_target(f: &SuppMap) -> (SuppSet, SuppMap, SuppMap) {
    let mut hit: Vec<ElemId> = f.map.clone();
    hit.sort_unstable();
    hit.dedup();
    let set = SuppSet::new(hit.iter().map(|&y| (f.target.name(y).to_string(), f.target.support(y).clone())))
        .expect("distinct target ids");
    let epi = SuppMap {
        source: f.source.clone(),
        target: set.clone(),
        map: f.map.iter().map(|y| hit.binary_search(y).unwrap()).collect(),
    };
    let mono = SuppMap { source: set.clone(), target: f.target.clone(), map: hit };
    (set, epi, mono)
}

fn pairs_with_equal_image(f: &SuppMap) -> Vec<(ElemId, ElemId)> {
    let mut first: HashMap<ElemId, ElemId> = HashMap::new();
    let mut pairs = Vec::new();
    for x in f.source.ids() {
        match first.get(&f.apply(x)) {
            Some(&y) => pairs.push((y, x)),
            None => {
                first.insert(f.apply(x), x);
            }
        }
    }
    pairs
}

/// Support of a finite subset: the union of member supports.
pub fn pf_support(x: &SuppSet, subset: &[ElemId]) -> Support {
    subset.iter().fold(Support::new(), |acc, &e| acc.union(x.support(e)))
}

/// Support of a possibly infinite family of supports, as its union.
/// Reports failure once the union exceeds `limit` atoms.
pub fn ufs_support(family: impl IntoIterator<Item = Support>, limit: usize) -> Result<Support, SuppError> {
    let mut acc = Support::new();
    for s in family {
        acc = acc.union(&s);
        if acc.len() > limit {
            return Err(SuppError::NotUniformlySupported(limit));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::Atom;

    fn set(elems: &[(&str, &[u64])]) -> SuppSet {
        SuppSet::new(elems.iter().map(|(id, s)| (*id, Support::nats(s.iter().copied())))).unwrap()
    }

    #[test]
    fn supported_map_examples() {
        let x = set(&[("x", &[0])]);
        assert!(check_supported_map(&[0], &x, &x).is_ok());
        let y = set(&[("y", &[])]);
        assert!(check_supported_map(&[0], &x, &y).is_ok());
        let err = check_supported_map(&[0], &y, &x).unwrap_err();
        assert_eq!(err.elements(), vec!["y".to_string()]);
    }

    #[test]
    fn product_and_coproduct() {
        let x = set(&[("x", &[0])]);
        let y = set(&[("y", &[1])]);
        let p = product(&x, &y);
        assert_eq!(p.set.support(p.pair(0, 0)), &Support::nats([0, 1]));
        assert!(check_supported_map(p.left.mapping(), &p.set, &x).is_ok());
        let one = product(&x, &SuppSet::terminal());
        let iso = check_supported_map(one.left.mapping(), &one.set, &x).unwrap();
        assert!(is_iso(&iso));

        let c = coproduct(&x, &y);
        assert_eq!(c.set.support(0), &Support::nats([0]));
        assert_eq!(c.set.support(1), &Support::nats([1]));
        assert!(c.left.is_injective() && c.left.is_support_reflecting());
        let e = coproduct(&SuppSet::empty(), &x);
        assert!(is_iso(&e.right));
    }

    #[test]
    fn coequalizer_intersects() {
        let x = set(&[("x", &[0, 1]), ("y", &[1, 2]), ("z", &[1, 3])]);
        let r = set(&[("r1", &[0, 1, 2, 3]), ("r2", &[0, 1, 2, 3])]);
        let f = check_supported_map(&[0, 1], &r, &x).unwrap();
        let g = check_supported_map(&[1, 2], &r, &x).unwrap();
        let q = coequalizer(&f, &g).unwrap();
        assert_eq!(q.set.len(), 1);
        assert_eq!(q.set.support(0), &Support::nats([1]));
        let same = coequalizer(&f, &f).unwrap();
        assert_eq!(same.set.len(), 3);
    }

    #[test]
    fn equalizer_examples() {
        let x = set(&[("x", &[0]), ("y", &[1])]);
        let two = SuppSet::two();
        let f = check_supported_map(&[0, 0], &x, &two).unwrap();
        let g = check_supported_map(&[1, 0], &x, &two).unwrap();
        let (e, incl) = equalizer(&f, &g).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.name(0), "y");
        assert!(incl.is_support_reflecting());
        assert_eq!(equalizer(&f, &f).unwrap().0.len(), 2);
    }

    #[test]
    fn exponential_examples() {
        let e = set(&[("e", &[0])]);
        let x = set(&[("x1", &[0]), ("x2", &[1])]);
        let exp = exponential(&e, &x);
        assert_eq!(exp.set.support(0), &Support::new());
        assert_eq!(exp.set.support(1), &Support::nats([1]));
        let unit = exponential(&SuppSet::empty(), &x);
        assert_eq!(unit.set.len(), 1);
        assert!(unit.set.support(0).is_empty());
        let e2 = set(&[("a", &[]), ("b", &[2])]);
        assert_eq!(exponential(&e2, &x).set.len(), 4);
    }

    #[test]
    fn iso_examples() {
        let x = set(&[("x", &[0])]);
        let y = set(&[("y", &[])]);
        assert!(is_iso(&SuppMap::identity(&x)));
        assert!(!is_iso(&check_supported_map(&[0], &x, &y).unwrap()));
        let z = set(&[("z", &[0])]);
        assert!(is_iso(&check_supported_map(&[0], &x, &z).unwrap()));
    }

    #[test]
    fn classifier_examples() {
        let x = set(&[("x", &[0]), ("y", &[1])]);
        let chi = classify_regular_subobject(&SuppMap::identity(&x)).unwrap();
        assert_eq!(chi.mapping(), &[1, 1]);
        let empty = check_supported_map(&[], &SuppSet::empty(), &x).unwrap();
        assert_eq!(classify_regular_subobject(&empty).unwrap().mapping(), &[0, 0]);
        let s = set(&[("s", &[0, 1])]);
        let m = check_supported_map(&[0], &s, &x).unwrap();
        assert!(matches!(classify_regular_subobject(&m), Err(SuppError::NotSupportReflecting(_))));
    }

    #[test]
    fn image_factorizations() {
        let x = set(&[("a", &[0, 1]), ("b", &[1, 2]), ("c", &[3])]);
        let y = set(&[("p", &[1]), ("q", &[])]);
        let f = check_supported_map(&[0, 0, 1], &x, &y).unwrap();
        let (im, e, m) = image_from_source(&f);
        assert_eq!(im.support(0), &Support::nats([1]));
        assert_eq!(m.after(&e).unwrap().mapping(), f.mapping());
        let (im2, e2, m2) = image_from_target(&f);
        assert_eq!(im2.len(), 2);
        assert!(m2.is_support_reflecting());
        assert_eq!(m2.after(&e2).unwrap().mapping(), f.mapping());
    }

    #[test]
    fn pf_and_ufs() {
        let x = set(&[("x", &[0]), ("y", &[1, 2])]);
        assert_eq!(pf_support(&x, &[0, 1]), Support::nats([0, 1, 2]));
        assert_eq!(pf_support(&x, &[]), Support::new());
        assert_eq!(pf_support(&x, &[1]), Support::nats([1, 2]));
        assert!(ufs_support((0..).map(|n| Support::singleton(Atom::Nat(n))), 100).is_err());
        assert_eq!(ufs_support((0..10).map(|n| Support::nats([n % 3])), 100).unwrap(), Support::nats([0, 1, 2]));
    }

    #[test]
    fn json_shapes() {
        let x: SuppSet = serde_json::from_str(r#"{"elements":[{"id":"x","support":[0,2]}]}"#).unwrap();
        assert_eq!(x.support(0), &Support::nats([0, 2]));
        let back: SuppSet = serde_json::from_value(serde_json::to_value(&x).unwrap()).unwrap();
        assert_eq!(back, x);
        let f = SuppMap::identity(&x);
        let parsed = SuppMap::from_json(&f.to_json(), &x, &x).unwrap();
        assert_eq!(parsed, f);
        assert!(serde_json::from_str::<SuppSet>(r#"{"elements":[{"id":"x","support":[]},{"id":"x","support":[]}]}"#)
            .is_err());
    }
}
