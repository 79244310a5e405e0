use preab_core::checker::{infer, Atom, FactBase, InferenceError, Property, Support};
use proptest::prelude::*;

const ALL: [Property; 14] = [
    Property::LeftSemiAbelian,
    Property::RightSemiAbelian,
    Property::SemiAbelian,
    Property::LeftQuasiAbelian,
    Property::RightQuasiAbelian,
    Property::QuasiAbelian,
    Property::LeftIntegral,
    Property::RightIntegral,
    Property::Integral,
    Property::EnoughProjectives,
    Property::EnoughInjectives,
    Property::EnoughQuasiProjectives,
    Property::EnoughQuasiInjectives,
    Property::AdmissibleIntersections,
];

fn declared(atoms: &[Atom]) -> FactBase {
    atoms.iter().map(|a| (*a, Support::Declared)).collect()
}

fn atoms() -> impl Strategy<Value = Vec<Atom>> {
    prop::collection::vec((0..ALL.len(), any::<bool>()), 0..5)
        .prop_map(|v| v.into_iter().map(|(i, holds)| Atom { property: ALL[i], holds }).collect())
}

#[test]
fn semi_abelian_but_not_integral() {
    let input = [Atom::yes(Property::SemiAbelian), Atom::no(Property::Integral)];
    let out = infer(&declared(&input)).unwrap();
    let mut expected: Vec<Atom> = input.to_vec();
    expected.extend([
        Atom::no(Property::LeftIntegral),
        Atom::no(Property::RightIntegral),
        Atom::no(Property::EnoughProjectives),
        Atom::no(Property::EnoughInjectives),
    ]);
    expected.sort();
    let got: Vec<Atom> = out.atoms().copied().collect();
    assert_eq!(got, expected);
    for a in &expected[..] {
        if !input.contains(a) {
            assert!(matches!(out.support(a), Some(Support::Inferred { .. })));
        }
    }
}

#[test]
fn quasi_abelian_closure() {
    let out = infer(&declared(&[Atom::yes(Property::QuasiAbelian)])).unwrap();
    for p in [Property::SemiAbelian, Property::LeftQuasiAbelian, Property::RightQuasiAbelian, Property::AdmissibleIntersections] {
        assert!(out.contains(&Atom::yes(p)));
    }
}

#[test]
fn certificate_contradiction_through_inference() {
    let mut base = FactBase::new();
    base.insert(Atom::yes(Property::EnoughProjectives), Support::Certificate);
    base.insert(Atom::no(Property::LeftIntegral), Support::Certificate);
    assert_eq!(infer(&base), Err(InferenceError::Contradiction(Property::LeftIntegral)));
}

proptest! {
    #[test]
    fn closure_is_extensive_and_idempotent(a in atoms()) {
        let base = declared(&a);
        let once = infer(&base).unwrap();
        prop_assert!(base.is_subset_of(&once));
        prop_assert_eq!(infer(&once).unwrap(), once);
    }

    #[test]
    fn closure_is_monotone(a in atoms(), b in atoms()) {
        let small = declared(&a);
        let mut both = a.clone();
        both.extend(b);
        let big = declared(&both);
        prop_assert!(infer(&small).unwrap().is_subset_of(&infer(&big).unwrap()));
    }
}
