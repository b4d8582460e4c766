use nomsup_core::suppset::{coproduct, equalizer, exponential, image_from_source, image_from_target, product};
use nomsup_core::{
    shipped, Atom, FinPresentation, FiniteMap, GlobalMap, RegisterAutomaton, SuppMap, SuppSet, Support, Symmetry,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn roundtrip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(v: &T) {
    let text = serde_json::to_string(v).unwrap();
    assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), v, "{text}");
}

fn set(supports: &[&[u64]]) -> SuppSet {
    SuppSet::new(supports.iter().enumerate().map(|(i, s)| (format!("e{i}"), Support::nats(s.iter().copied())))).unwrap()
}

#[test]
fn serde_roundtrips() {
    roundtrip(&Atom::rat(-3, 4));
    roundtrip(&Atom::Nat(12));
    roundtrip(&Support::nats([1, 5, 9]));
    roundtrip(&FiniteMap::nats([(0, 3), (2, 1)]));
    roundtrip(&GlobalMap::cycle(&[0, 4, 2]).unwrap());
    roundtrip(&GlobalMap::piecewise_linear([(Atom::int(0).as_rational(), Atom::rat(1, 2).as_rational())]).unwrap());
    roundtrip(&set(&[&[0], &[0, 1], &[]]));
    roundtrip(&Symmetry::TotalOrder);
}

#[test]
fn document_roundtrips() {
    for ra in [shipped::first_repeat(), shipped::increasing()] {
        assert_eq!(RegisterAutomaton::from_json(&ra.to_json()).unwrap(), ra);
    }
    let p = shipped::pairs();
    assert_eq!(FinPresentation::from_json(&p.to_json()).unwrap(), p);
    let x = set(&[&[0, 1], &[1]]);
    let y = set(&[&[1], &[]]);
    let f = SuppMap::from_json(&serde_json::json!({"map": {"e0": "e0", "e1": "e1"}}), &x, &y).unwrap();
    assert_eq!(SuppMap::from_json(&f.to_json(), &x, &y).unwrap(), f);
}

#[test]
fn limits_and_colimits_have_the_expected_supports() {
    let x = set(&[&[0], &[1, 2]]);
    let y = set(&[&[2], &[]]);
    let p = product(&x, &y);
    assert_eq!(p.set.len(), 4);
    assert_eq!(p.set.support(p.pair(1, 0)), &Support::nats([1, 2]));
    assert_eq!(p.set.support(p.pair(0, 0)), &Support::nats([0, 2]));
    let c = coproduct(&x, &y);
    assert_eq!(c.set.len(), 4);
    assert_eq!(c.set.support(c.right.apply(0)), &Support::nats([2]));

    let f = SuppMap::from_json(&serde_json::json!({"map": {"e0": "e1", "e1": "e0"}}), &x, &y).unwrap();
    let g = SuppMap::from_json(&serde_json::json!({"map": {"e0": "e1", "e1": "e1"}}), &x, &y).unwrap();
    let (eq, incl) = equalizer(&f, &g).unwrap();
    assert_eq!(eq.len(), 1);
    assert!(incl.is_support_reflecting());

    let (src, _, _) = image_from_source(&g);
    let (tgt, _, _) = image_from_target(&g);
    assert_eq!(src.support(0), &Support::nats([]));
    assert_eq!(tgt.support(0), &Support::nats([]));
    let (src, _, _) = image_from_source(&f);
    assert_eq!(src.len(), 2);
    assert_eq!(src.support(1), &Support::nats([1, 2]));

    let e = exponential(&set(&[&[0]]), &set(&[&[0], &[1]]));
    assert_eq!(e.set.len(), 2);
}
