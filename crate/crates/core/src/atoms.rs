//! Atom domains, the three data symmetries and their materialized monoid
//! elements.
//!
//! Equality and renaming symmetries work over natural-number atoms, the
//! order symmetry over exact rationals. A [`GlobalMap`] is always stored
//! finitely: a finite-support function for the first two, a list of
//! breakpoints of a piecewise-linear order automorphism for the third.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = Rational64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtomError {
    #[error("atom {atom} does not belong to the {sym} symmetry")]
    WrongDomain { sym: Symmetry, atom: Atom },
    #[error("cannot compose maps of different symmetries ({0} and {1})")]
    MixedSymmetry(Symmetry, Symmetry),
    #[error("map {map} is not admissible for the {sym} symmetry")]
    NotAdmissible { sym: Symmetry, map: String },
    #[error("atom {0} lies in the set that must stay fixed")]
    AtomInFixedSet(Atom),
    #[error("entries do not describe a finite permutation")]
    NotBijective,
    #[error("breakpoints are not strictly increasing")]
    NotMonotone,
    #[error("cannot parse atom from {0:?}")]
    Parse(String),
    #[error("unknown symmetry {0:?}")]
    UnknownSymmetry(String),
    #[error("unknown map kind {0:?}")]
    UnknownKind(String),
}

/// A data value: a natural number, or an exact rational for the order
/// symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Nat(u64),
    Rat(Rational),
}

impl Atom {
    pub fn nat(n: u64) -> Atom {
        Atom::Nat(n)
    }

    /// The rational `numer / denom`, reduced.
    pub fn rat(numer: i64, denom: i64) -> Atom {
        Atom::Rat(Rational::new(numer, denom))
    }

    /// An integer viewed as a rational atom.
    pub fn int(n: i64) -> Atom {
        Atom::Rat(Rational::from_integer(n))
    }

    pub fn as_nat(self) -> Option<u64> {
        match self {
            Atom::Nat(n) => Some(n),
            Atom::Rat(_) => None,
        }
    }

    pub fn as_rational(self) -> Rational {
        match self {
            Atom::Nat(n) => Rational::from_integer(n as i64),
            Atom::Rat(q) => q,
        }
    }

    pub fn belongs_to(self, sym: Symmetry) -> bool {
        matches!(
            (sym, self),
            (Symmetry::TotalOrder, Atom::Rat(_)) | (Symmetry::Equality | Symmetry::Renaming, Atom::Nat(_))
        )
    }

    /// Converts an atom read from untyped input into the domain of `sym`.
    /// Naturals are accepted as rationals for the order symmetry; integral
    /// non-negative rationals are accepted as naturals for the others.
    pub fn coerce(self, sym: Symmetry) -> Result<Atom, AtomError> {
        match (sym, self) {
            (Symmetry::TotalOrder, Atom::Nat(n)) => Ok(Atom::int(n as i64)),
            (Symmetry::TotalOrder, a @ Atom::Rat(_)) => Ok(a),
            (_, a @ Atom::Nat(_)) => Ok(a),
            (_, Atom::Rat(q)) if q.is_integer() && !q.is_negative() => Ok(Atom::Nat(q.to_integer() as u64)),
            (_, atom) => Err(AtomError::WrongDomain { sym, atom }),
        }
    }

    /// Parses `"n"` as a natural and `"p/q"` or a negative integer as a
    /// rational.
    pub fn parse(s: &str) -> Result<Atom, AtomError> {
        let s = s.trim();
        let err = || AtomError::Parse(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| err())?;
            let q: i64 = q.trim().parse().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            return Ok(Atom::rat(p, q));
        }
        if let Ok(n) = s.parse::<u64>() {
            return Ok(Atom::Nat(n));
        }
        s.parse::<i64>().map(Atom::int).map_err(|_| err())
    }

    /// Parses an atom and coerces it into the domain of `sym`.
    pub fn parse_in(sym: Symmetry, s: &str) -> Result<Atom, AtomError> {
        Atom::parse(s)?.coerce(sym)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Nat(n) => write!(f, "{n}"),
            Atom::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl FromStr for Atom {
    type Err = AtomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::parse(s)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Atom::Nat(n) => serializer.serialize_u64(*n),
            Atom::Rat(_) => serializer.collect_str(self),
        }
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Nat(u64),
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Nat(n) => Ok(Atom::Nat(n)),
            Raw::Int(i) => Ok(Atom::int(i)),
            Raw::Str(s) => Atom::parse(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// The data symmetry, i.e. the monoid of admissible renamings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// Finite permutations of natural-number atoms.
    Equality,
    /// Order automorphisms of the rationals.
    TotalOrder,
    /// Finite-support functions on natural-number atoms.
    Renaming,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::Equality, Symmetry::TotalOrder, Symmetry::Renaming];

    pub fn is_group(self) -> bool {
        !matches!(self, Symmetry::Renaming)
    }

    /// The `i`-th atom of the canonical enumeration used for pools.
    pub fn atom(self, i: u64) -> Atom {
        match self {
            Symmetry::TotalOrder => Atom::int(i as i64),
            _ => Atom::Nat(i),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Equality => "equality",
            Symmetry::TotalOrder => "total-order",
            Symmetry::Renaming => "renaming",
        })
    }
}

impl FromStr for Symmetry {
    type Err = AtomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "equality" | "eq" | "perm" => Ok(Symmetry::Equality),
            "total-order" | "totalorder" | "order" | "total_order" => Ok(Symmetry::TotalOrder),
            "renaming" | "fin" => Ok(Symmetry::Renaming),
            _ => Err(AtomError::UnknownSymmetry(s.to_string())),
        }
    }
}

/// A finite set of atoms in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Support(BTreeSet<Atom>);

impl Support {
    pub fn new() -> Support {
        Support::default()
    }

    pub fn singleton(a: Atom) -> Support {
        Support(BTreeSet::from([a]))
    }

    pub fn nats(ns: impl IntoIterator<Item = u64>) -> Support {
        ns.into_iter().map(Atom::Nat).collect()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: &Atom) -> bool {
        self.0.remove(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Atom> + ExactSizeIterator + Clone {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Atom> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Atom> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &Support) -> Support {
        Support(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Support) -> Support {
        Support(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Support) -> Support {
        Support(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.is_subset(&other.0)
    }

    /// The pointwise image under `g`.
    pub fn image(&self, g: &GlobalMap) -> Support {
        self.iter().map(|a| g.apply(*a)).collect()
    }

    pub fn to_vec(&self) -> Vec<Atom> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<Atom> for Support {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Support(iter.into_iter().collect())
    }
}

impl Extend<Atom> for Support {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a Support {
    type Item = &'a Atom;
    type IntoIter = std::collections::btree_set::Iter<'a, Atom>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// A map defined on a finite set of atoms; the domain is the key set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteMap(BTreeMap<Atom, Atom>);

impl FiniteMap {
    pub fn new() -> FiniteMap {
        FiniteMap::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Atom, Atom)>) -> FiniteMap {
        FiniteMap(pairs.into_iter().collect())
    }

    pub fn nats(pairs: impl IntoIterator<Item = (u64, u64)>) -> FiniteMap {
        FiniteMap::from_pairs(pairs.into_iter().map(|(a, b)| (Atom::Nat(a), Atom::Nat(b))))
    }

    /// The identity on `s`.
    pub fn identity_on(s: &Support) -> FiniteMap {
        FiniteMap(s.iter().map(|a| (*a, *a)).collect())
    }

    pub fn get(&self, a: &Atom) -> Option<Atom> {
        self.0.get(a).copied()
    }

    pub fn insert(&mut self, a: Atom, b: Atom) -> Option<Atom> {
        self.0.insert(a, b)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.0.iter().map(|(a, b)| (*a, *b))
    }

    pub fn domain(&self) -> Support {
        self.0.keys().copied().collect()
    }

    pub fn image(&self) -> Support {
        self.0.values().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.0.len()
    }

    /// Strictly increasing with respect to the atom order.
    pub fn is_strictly_monotone(&self) -> bool {
        let values: Vec<Atom> = self.0.values().copied().collect();
        values.windows(2).all(|w| w[0] < w[1])
    }

    /// The restriction to `s ∩ dom`.
    pub fn restrict(&self, s: &Support) -> FiniteMap {
        FiniteMap(self.0.iter().filter(|(a, _)| s.contains(a)).map(|(a, b)| (*a, *b)).collect())
    }

    /// `self ∘ inner`, defined where `inner`'s image lies in this map's domain.
    pub fn after(&self, inner: &FiniteMap) -> Option<FiniteMap> {
        inner.iter().map(|(a, b)| self.get(&b).map(|c| (a, c))).collect::<Option<_>>().map(FiniteMap)
    }

    /// Applies `g` to every value.
    pub fn post_apply(&self, g: &GlobalMap) -> FiniteMap {
        FiniteMap(self.0.iter().map(|(a, b)| (*a, g.apply(*b))).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }
}

impl FromIterator<(Atom, Atom)> for FiniteMap {
    fn from_iter<I: IntoIterator<Item = (Atom, Atom)>>(iter: I) -> Self {
        FiniteMap(iter.into_iter().collect())
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for FiniteMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (a, b) in &self.0 {
            m.serialize_entry(&a.to_string(), b)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for FiniteMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, Atom>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(k, v)| Atom::parse(&k).map(|k| (k, v)))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Finite permutation; only moved atoms are stored.
    Perm(BTreeMap<Atom, Atom>),
    /// Finite-support function; only moved atoms are stored.
    FinMap(BTreeMap<Atom, Atom>),
    /// Piecewise-linear order automorphism. Breakpoints are strictly
    /// increasing in both coordinates, the outermost ones are fixed points
    /// and no breakpoint is collinear with its neighbours.
    Pwl(Vec<(Rational, Rational)>),
}

/// A monoid element of one of the three symmetries, stored finitely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GlobalMapJson", into = "GlobalMapJson")]
pub struct GlobalMap(Repr);

impl GlobalMap {
    pub fn identity(sym: Symmetry) -> GlobalMap {
        GlobalMap(match sym {
            Symmetry::Equality => Repr::Perm(BTreeMap::new()),
            Symmetry::Renaming => Repr::FinMap(BTreeMap::new()),
            Symmetry::TotalOrder => Repr::Pwl(Vec::new()),
        })
    }

    pub fn symmetry(&self) -> Symmetry {
        match self.0 {
            Repr::Perm(_) => Symmetry::Equality,
            Repr::FinMap(_) => Symmetry::Renaming,
            Repr::Pwl(_) => Symmetry::TotalOrder,
        }
    }

    /// A finite permutation given by its graph on the moved atoms (fixed
    /// entries are allowed and dropped).
    pub fn permutation(entries: impl IntoIterator<Item = (Atom, Atom)>) -> Result<GlobalMap, AtomError> {
        let map: BTreeMap<Atom, Atom> = entries.into_iter().filter(|(a, b)| a != b).collect();
        for (&a, &b) in &map {
            if !a.belongs_to(Symmetry::Equality) || !b.belongs_to(Symmetry::Equality) {
                let atom = if a.belongs_to(Symmetry::Equality) { b } else { a };
                return Err(AtomError::WrongDomain { sym: Symmetry::Equality, atom });
            }
        }
        let keys: BTreeSet<Atom> = map.keys().copied().collect();
        let values: BTreeSet<Atom> = map.values().copied().collect();
        if keys != values || values.len() != map.len() {
            return Err(AtomError::NotBijective);
        }
        Ok(GlobalMap(Repr::Perm(map)))
    }

    /// A finite-support function of the renaming symmetry.
    pub fn renaming(entries: impl IntoIterator<Item = (Atom, Atom)>) -> Result<GlobalMap, AtomError> {
        let map: BTreeMap<Atom, Atom> = entries.into_iter().filter(|(a, b)| a != b).collect();
        if let Some((a, b)) =
            map.iter().find(|(a, b)| !a.belongs_to(Symmetry::Renaming) || !b.belongs_to(Symmetry::Renaming))
        {
            let atom = if a.belongs_to(Symmetry::Renaming) { *b } else { *a };
            return Err(AtomError::WrongDomain { sym: Symmetry::Renaming, atom });
        }
        Ok(GlobalMap(Repr::FinMap(map)))
    }

    /// The piecewise-linear order automorphism through the given points,
    /// which must be strictly increasing in both coordinates. Fixed anchor
    /// points are added below and above so that the map is the identity
    /// outside a bounded interval.
    pub fn piecewise_linear(points: impl IntoIterator<Item = (Rational, Rational)>) -> Result<GlobalMap, AtomError> {
        let mut pts: Vec<(Rational, Rational)> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return Err(AtomError::NotMonotone);
        }
        Ok(GlobalMap(Repr::Pwl(normalize_pwl(pts))))
    }

    /// The transposition `(a b)` in the equality or renaming symmetry.
    pub fn transposition(sym: Symmetry, a: Atom, b: Atom) -> Result<GlobalMap, AtomError> {
        match sym {
            Symmetry::Equality => GlobalMap::permutation([(a, b), (b, a)]),
            Symmetry::Renaming => GlobalMap::renaming([(a, b), (b, a)]),
            Symmetry::TotalOrder => Err(AtomError::NotAdmissible { sym, map: format!("({a} {b})") }),
        }
    }

    /// The equality-symmetry swap of two naturals.
    pub fn swap(a: u64, b: u64) -> GlobalMap {
        GlobalMap::permutation([(Atom::Nat(a), Atom::Nat(b)), (Atom::Nat(b), Atom::Nat(a))])
            .expect("a swap is a permutation")
    }

    /// The cycle `c[0] ↦ c[1] ↦ … ↦ c[n-1] ↦ c[0]` on naturals.
    pub fn cycle(c: &[u64]) -> Result<GlobalMap, AtomError> {
        let n = c.len();
        GlobalMap::permutation((0..n).map(|i| (Atom::Nat(c[i]), Atom::Nat(c[(i + 1) % n]))))
    }

    pub fn is_identity(&self) -> bool {
        match &self.0 {
            Repr::Perm(m) | Repr::FinMap(m) => m.is_empty(),
            Repr::Pwl(p) => p.is_empty(),
        }
    }

    /// Atoms that are not fixed, for the two discrete symmetries.
    pub fn moved(&self) -> Option<Support> {
        match &self.0 {
            Repr::Perm(m) | Repr::FinMap(m) => Some(m.keys().copied().collect()),
            Repr::Pwl(_) => None,
        }
    }

    /// Stored graph entries (moved atoms, or breakpoints).
    pub fn entries(&self) -> Vec<(Atom, Atom)> {
        match &self.0 {
            Repr::Perm(m) | Repr::FinMap(m) => m.iter().map(|(a, b)| (*a, *b)).collect(),
            Repr::Pwl(p) => p.iter().map(|(x, y)| (Atom::Rat(*x), Atom::Rat(*y))).collect(),
        }
    }

    pub fn apply(&self, a: Atom) -> Atom {
        match &self.0 {
            Repr::Perm(m) | Repr::FinMap(m) => m.get(&a).copied().unwrap_or(a),
            Repr::Pwl(p) => {
                if p.is_empty() {
                    return a;
                }
                Atom::Rat(eval_pwl(p, a.as_rational()))
            }
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &GlobalMap) -> Result<GlobalMap, AtomError> {
        match (&self.0, &other.0) {
            (Repr::Perm(g), Repr::Perm(h)) => Ok(GlobalMap(Repr::Perm(compose_discrete(g, h)))),
            (Repr::FinMap(g), Repr::FinMap(h)) => Ok(GlobalMap(Repr::FinMap(compose_discrete(g, h)))),
            (Repr::Pwl(g), Repr::Pwl(h)) => {
                let mut xs: BTreeSet<Rational> = h.iter().map(|(x, _)| *x).collect();
                xs.extend(g.iter().map(|(gx, _)| eval_pwl_inverse(h, *gx)));
                let pts = xs.into_iter().map(|x| (x, eval_pwl(g, eval_pwl(h, x)))).collect();
                Ok(GlobalMap(Repr::Pwl(normalize_pwl(pts))))
            }
            _ => Err(AtomError::MixedSymmetry(self.symmetry(), other.symmetry())),
        }
    }

    /// The inverse, when the map is invertible.
    pub fn inverse(&self) -> Option<GlobalMap> {
        match &self.0 {
            Repr::Perm(m) => Some(GlobalMap(Repr::Perm(m.iter().map(|(a, b)| (*b, *a)).collect()))),
            Repr::FinMap(m) => {
                let keys: BTreeSet<Atom> = m.keys().copied().collect();
                let values: BTreeSet<Atom> = m.values().copied().collect();
                (keys == values && values.len() == m.len())
                    .then(|| GlobalMap(Repr::FinMap(m.iter().map(|(a, b)| (*b, *a)).collect())))
            }
            Repr::Pwl(p) => Some(GlobalMap(Repr::Pwl(p.iter().map(|(x, y)| (*y, *x)).collect()))),
        }
    }

    /// Pointwise restriction to `s`.
    pub fn restrict_to(&self, s: &Support) -> FiniteMap {
        s.iter().map(|a| (*a, self.apply(*a))).collect()
    }
}

impl fmt::Display for GlobalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.0 {
            Repr::Perm(_) => "perm",
            Repr::FinMap(_) => "finmap",
            Repr::Pwl(_) => "pwl",
        };
        write!(f, "{kind}[")?;
        for (i, (a, b)) in self.entries().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
struct GlobalMapJson {
    kind: String,
    entries: Vec<(Atom, Atom)>,
}

impl From<GlobalMap> for GlobalMapJson {
    fn from(g: GlobalMap) -> Self {
        let kind = match g.0 {
            Repr::Perm(_) => "perm",
            Repr::FinMap(_) => "finmap",
            Repr::Pwl(_) => "pwl",
        };
        GlobalMapJson { kind: kind.to_string(), entries: g.entries() }
    }
}

impl TryFrom<GlobalMapJson> for GlobalMap {
    type Error = AtomError;
    fn try_from(j: GlobalMapJson) -> Result<Self, Self::Error> {
        match j.kind.as_str() {
            "perm" => GlobalMap::permutation(j.entries),
            "finmap" => GlobalMap::renaming(j.entries),
            "pwl" => {
                GlobalMap::piecewise_linear(j.entries.into_iter().map(|(a, b)| (a.as_rational(), b.as_rational())))
            }
            other => Err(AtomError::UnknownKind(other.to_string())),
        }
    }
}

fn compose_discrete(g: &BTreeMap<Atom, Atom>, h: &BTreeMap<Atom, Atom>) -> BTreeMap<Atom, Atom> {
    let apply = |m: &BTreeMap<Atom, Atom>, a: Atom| m.get(&a).copied().unwrap_or(a);
    h.keys().chain(g.keys()).map(|&a| (a, apply(g, apply(h, a)))).filter(|(a, b)| a != b).collect()
}

fn eval_pwl(p: &[(Rational, Rational)], x: Rational) -> Rational {
    interpolate(p.iter().map(|&(x, y)| (x, y)), p.len(), x)
}

fn eval_pwl_inverse(p: &[(Rational, Rational)], y: Rational) -> Rational {
    interpolate(p.iter().map(|&(x, y)| (y, x)), p.len(), y)
}

fn interpolate(pts: impl Iterator<Item = (Rational, Rational)> + Clone, n: usize, x: Rational) -> Rational {
    if n == 0 {
        return x;
    }
    let mut prev: Option<(Rational, Rational)> = None;
    for (px, py) in pts {
        if x == px {
            return py;
        }
        if x < px {
            return match prev {
                // outermost breakpoints are fixed, so the tails are the identity
                None => x,
                Some((qx, qy)) => qy + (x - qx) * (py - qy) / (px - qx),
            };
        }
        prev = Some((px, py));
    }
    x
}

fn normalize_pwl(mut pts: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    if pts.is_empty() {
        return pts;
    }
    let one = Rational::one();
    let (x0, y0) = pts[0];
    if x0 != y0 {
        let lo = x0.min(y0) - one;
        pts.insert(0, (lo, lo));
    }
    let (xn, yn) = *pts.last().unwrap();
    if xn != yn {
        let hi = xn.max(yn) + one;
        pts.push((hi, hi));
    }
    let slope = |a: (Rational, Rational), b: (Rational, Rational)| (b.1 - a.1) / (b.0 - a.0);
    loop {
        let n = pts.len();
        let removable = (0..n).find(|&i| {
            let left = if i == 0 { one } else { slope(pts[i - 1], pts[i]) };
            let right = if i + 1 == n { one } else { slope(pts[i], pts[i + 1]) };
            left == right
        });
        match removable {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }
    pts
}

fn check_domain(sym: Symmetry, p: &FiniteMap) -> Result<(), AtomError> {
    match p.iter().flat_map(|(a, b)| [a, b]).find(|a| !a.belongs_to(sym)) {
        Some(atom) => Err(AtomError::WrongDomain { sym, atom }),
        None => Ok(()),
    }
}

/// Whether `p` is the restriction of some monoid element of `sym`.
pub fn is_admissible(sym: Symmetry, p: &FiniteMap) -> Result<bool, AtomError> {
    check_domain(sym, p)?;
    Ok(match sym {
        Symmetry::Equality => p.is_injective(),
        Symmetry::TotalOrder => p.is_strictly_monotone(),
        Symmetry::Renaming => true,
    })
}

/// A deterministic global extension of the admissible partial map `p`.
///
/// Equality closes the open chains of `p` by pairing the images outside the
/// domain with the domain atoms outside the image, both in sorted order.
pub fn extend_to_global(sym: Symmetry, p: &FiniteMap) -> Result<GlobalMap, AtomError> {
    if !is_admissible(sym, p)? {
        return Err(AtomError::NotAdmissible { sym, map: p.to_string() });
    }
    match sym {
        Symmetry::Equality => {
            let dom = p.domain();
            let img = p.image();
            let closing = img.difference(&dom).to_vec().into_iter().zip(dom.difference(&img).to_vec());
            GlobalMap::permutation(p.iter().chain(closing))
        }
        Symmetry::Renaming => GlobalMap::renaming(p.iter()),
        Symmetry::TotalOrder => GlobalMap::piecewise_linear(p.iter().map(|(a, b)| (a.as_rational(), b.as_rational()))),
    }
}

/// A second, different global extension of `p`: the deterministic one,
/// precomposed with a lock-free witness that fixes `dom(p)` and moves the
/// next fresh atom.
pub fn alternate_extension(sym: Symmetry, p: &FiniteMap) -> Result<GlobalMap, AtomError> {
    let base = extend_to_global(sym, p)?;
    let dom = p.domain();
    let shift = lock_free_witness(sym, &dom, fresh(sym, &dom.union(&p.image())))?;
    base.compose(&shift)
}

/// The target `b` of the order-symmetry witness: `a + ½·min_{x∈R} |a − x|`,
/// or `a + 1` for empty `R`.
pub fn order_witness_target(r: &Support, a: Rational) -> Rational {
    let half = Rational::new(1, 2);
    match r.iter().map(|x| (a - x.as_rational()).abs()).min() {
        Some(d) => a + half * d,
        None => a + Rational::one(),
    }
}

/// A monoid element fixing every atom of `r` and moving `a`.
pub fn lock_free_witness(sym: Symmetry, r: &Support, a: Atom) -> Result<GlobalMap, AtomError> {
    if r.contains(&a) {
        return Err(AtomError::AtomInFixedSet(a));
    }
    if let Some(atom) = r.iter().copied().chain([a]).find(|x| !x.belongs_to(sym)) {
        return Err(AtomError::WrongDomain { sym, atom });
    }
    match sym {
        Symmetry::Equality | Symmetry::Renaming => {
            let mut avoid = r.clone();
            avoid.insert(a);
            GlobalMap::transposition(sym, a, fresh(sym, &avoid))
        }
        Symmetry::TotalOrder => {
            let b = order_witness_target(r, a.as_rational());
            let pts = r.iter().map(|x| (x.as_rational(), x.as_rational())).chain([(a.as_rational(), b)]);
            GlobalMap::piecewise_linear(pts)
        }
    }
}

/// An atom outside `avoid`: the least missing natural, or `max + 1` for the
/// order symmetry.
pub fn fresh(sym: Symmetry, avoid: &Support) -> Atom {
    match sym {
        Symmetry::TotalOrder => match avoid.iter().map(|a| a.as_rational()).max() {
            Some(m) => Atom::Rat(m + Rational::one()),
            None => Atom::Rat(Rational::zero()),
        },
        _ => {
            let mut n = 0;
            while avoid.contains(&Atom::Nat(n)) {
                n += 1;
            }
            Atom::Nat(n)
        }
    }
}

/// `k` distinct fresh atoms for `avoid`, in increasing order.
pub fn fresh_many(sym: Symmetry, avoid: &Support, k: usize) -> Vec<Atom> {
    let mut avoid = avoid.clone();
    (0..k)
        .map(|_| {
            let a = fresh(sym, &avoid);
            avoid.insert(a);
            a
        })
        .collect()
}
