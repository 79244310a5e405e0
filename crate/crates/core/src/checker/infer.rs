//! Forward chaining over signed property atoms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Property;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub property: Property,
    pub holds: bool,
}

impl Atom {
    pub fn yes(property: Property) -> Self {
        Atom { property, holds: true }
    }

    pub fn no(property: Property) -> Self {
        Atom { property, holds: false }
    }

    pub fn negated(self) -> Self {
        Atom { property: self.property, holds: !self.holds }
    }
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.holds {
            write!(f, "{}", self.property.name())
        } else {
            write!(f, "not {}", self.property.name())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "support", rename_all = "kebab-case")]
pub enum Support {
    /// Backed by a re-verifiable counterexample.
    Certificate,
    /// Stated by the caller.
    Declared,
    /// No counterexample on the probe corpus; not a proof.
    ProbePass,
    Inferred { rule: String, premises: Vec<Atom> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactBase {
    facts: BTreeMap<Atom, Support>,
}

impl FactBase {
    pub fn new() -> Self {
        FactBase::default()
    }

    /// Adds a fact unless the atom is already present.
    pub fn insert(&mut self, atom: Atom, support: Support) -> bool {
        if self.facts.contains_key(&atom) {
            return false;
        }
        self.facts.insert(atom, support);
        true
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.facts.contains_key(atom)
    }

    pub fn support(&self, atom: &Atom) -> Option<&Support> {
        self.facts.get(atom)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.facts.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &Support)> {
        self.facts.iter()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn is_subset_of(&self, other: &FactBase) -> bool {
        self.atoms().all(|a| other.contains(a))
    }

    /// Backed by certificates all the way down.
    pub fn certified(&self, atom: &Atom) -> bool {
        match self.facts.get(atom) {
            Some(Support::Certificate) => true,
            Some(Support::Inferred { premises, .. }) => premises.iter().all(|p| self.certified(p)),
            _ => false,
        }
    }
}

impl FromIterator<(Atom, Support)> for FactBase {
    fn from_iter<I: IntoIterator<Item = (Atom, Support)>>(iter: I) -> Self {
        let mut base = FactBase::new();
        for (a, s) in iter {
            base.insert(a, s);
        }
        base
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InferenceError {
    #[error("certificate-backed facts contradict each other on {0:?}")]
    Contradiction(Property),
}

struct Rule {
    name: String,
    premises: Vec<Atom>,
    conclusion: Atom,
}

fn rule(premises: &[Atom], conclusion: Atom) -> Rule {
    let lhs: Vec<String> = premises.iter().map(|a| a.to_string()).collect();
    Rule { name: format!("{} => {}", lhs.join(" and "), conclusion), premises: premises.to_vec(), conclusion }
}

fn rules() -> Vec<Rule> {
    use Property::*;
    let y = Atom::yes;
    let n = Atom::no;
    let mut out = Vec::new();
    // sided implications, stated for both sides
    for (lsa, lqa, li, eqp, ep) in [
        (LeftSemiAbelian, LeftQuasiAbelian, LeftIntegral, EnoughQuasiProjectives, EnoughProjectives),
        (RightSemiAbelian, RightQuasiAbelian, RightIntegral, EnoughQuasiInjectives, EnoughInjectives),
    ] {
        out.push(rule(&[y(lqa)], y(lsa)));
        out.push(rule(&[y(li)], y(lsa)));
        out.push(rule(&[y(eqp)], y(lqa)));
        out.push(rule(&[y(ep)], y(li)));
        out.push(rule(&[n(lsa)], n(lqa)));
        out.push(rule(&[n(lsa)], n(li)));
        out.push(rule(&[n(lqa)], n(eqp)));
        out.push(rule(&[n(li)], n(ep)));
    }
    out.push(rule(&[y(QuasiAbelian)], y(SemiAbelian)));
    out.push(rule(&[y(Integral)], y(SemiAbelian)));
    out.push(rule(&[n(SemiAbelian)], n(QuasiAbelian)));
    out.push(rule(&[n(SemiAbelian)], n(Integral)));
    // left and right agree under semi-abelianness
    for (l, r, both) in [(LeftQuasiAbelian, RightQuasiAbelian, QuasiAbelian), (LeftIntegral, RightIntegral, Integral)] {
        out.push(rule(&[y(SemiAbelian), y(l)], y(r)));
        out.push(rule(&[y(SemiAbelian), y(r)], y(l)));
        out.push(rule(&[y(SemiAbelian), n(l)], n(r)));
        out.push(rule(&[y(SemiAbelian), n(r)], n(l)));
        out.push(rule(&[y(SemiAbelian), n(both)], n(l)));
        out.push(rule(&[y(SemiAbelian), n(both)], n(r)));
    }
    out.push(rule(&[y(QuasiAbelian)], y(AdmissibleIntersections)));
    out.push(rule(&[y(AdmissibleIntersections)], y(QuasiAbelian)));
    out.push(rule(&[n(QuasiAbelian)], n(AdmissibleIntersections)));
    out.push(rule(&[n(AdmissibleIntersections)], n(QuasiAbelian)));
    // two-sided properties as conjunctions
    for (l, r, both) in [
        (LeftSemiAbelian, RightSemiAbelian, SemiAbelian),
        (LeftQuasiAbelian, RightQuasiAbelian, QuasiAbelian),
        (LeftIntegral, RightIntegral, Integral),
    ] {
        out.push(rule(&[y(l), y(r)], y(both)));
        out.push(rule(&[n(l)], n(both)));
        out.push(rule(&[n(r)], n(both)));
        out.push(rule(&[n(both), y(l)], n(r)));
        out.push(rule(&[n(both), y(r)], n(l)));
    }
    for (l, r, both) in [(LeftQuasiAbelian, RightQuasiAbelian, QuasiAbelian), (LeftIntegral, RightIntegral, Integral)] {
        out.push(rule(&[y(both)], y(l)));
        out.push(rule(&[y(both)], y(r)));
    }
    out
}

/// Closure of `facts` under the implication rules. Monotone and idempotent.
pub fn infer(facts: &FactBase) -> Result<FactBase, InferenceError> {
    let rules = rules();
    let mut base = facts.clone();
    loop {
        let mut changed = false;
        for r in &rules {
            if !base.contains(&r.conclusion) && r.premises.iter().all(|p| base.contains(p)) {
                base.insert(r.conclusion, Support::Inferred { rule: r.name.clone(), premises: r.premises.clone() });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let clash = base
        .atoms()
        .filter(|a| a.holds)
        .find(|a| base.contains(&a.negated()) && base.certified(a) && base.certified(&a.negated()))
        .map(|a| a.property);
    match clash {
        Some(p) => Err(InferenceError::Contradiction(p)),
        None => Ok(base),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Property::*;

    fn declared(atoms: &[Atom]) -> FactBase {
        atoms.iter().map(|a| (*a, Support::Declared)).collect()
    }

    #[test]
    fn empty_closure_is_empty() {
        assert!(infer(&FactBase::new()).unwrap().is_empty());
    }

    #[test]
    fn quasi_abelian_closure() {
        let out = infer(&declared(&[Atom::yes(QuasiAbelian)])).unwrap();
        for p in [SemiAbelian, LeftQuasiAbelian, RightQuasiAbelian, AdmissibleIntersections] {
            assert!(out.contains(&Atom::yes(p)), "{p:?}");
        }
    }

    #[test]
    fn certified_contradiction_is_reported() {
        let mut base = FactBase::new();
        base.insert(Atom::yes(QuasiAbelian), Support::Certificate);
        base.insert(Atom::no(LeftQuasiAbelian), Support::Certificate);
        assert_eq!(infer(&base), Err(InferenceError::Contradiction(LeftQuasiAbelian)));
    }

    #[test]
    fn declared_contradiction_is_kept() {
        let base = declared(&[Atom::yes(QuasiAbelian), Atom::no(LeftQuasiAbelian)]);
        let out = infer(&base).unwrap();
        assert!(out.contains(&Atom::yes(LeftQuasiAbelian)));
    }
}
