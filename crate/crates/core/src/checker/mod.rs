//! Probe-based deciders for the sided stability properties, plus inference over
//! the known implications between them.
//!
//! A pass only means no counterexample was found in the corpus. A failure comes
//! with a [`PropertyCertificate`] that re-verifies through an
//! [`Oracle`](crate::oracle::Oracle).

pub mod certificate;
pub mod infer;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{Category, CategoryError, Engine, SquareWitness};

pub use certificate::{
    ai_template, property_template, verify, verify_ai, verify_property, AiCertificate, Certificate, Check, PropertyCertificate, Step,
    StructureKind, VerifyError,
};
pub use infer::{infer, Atom, FactBase, InferenceError, Support};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    LeftSemiAbelian,
    RightSemiAbelian,
    SemiAbelian,
    LeftQuasiAbelian,
    RightQuasiAbelian,
    QuasiAbelian,
    LeftIntegral,
    RightIntegral,
    Integral,
    EnoughProjectives,
    EnoughInjectives,
    EnoughQuasiProjectives,
    EnoughQuasiInjectives,
    AdmissibleIntersections,
    /// Object-level: a given object is projective.
    Projective,
    /// Object-level: a given object is quasi-projective.
    QuasiProjective,
}

impl Property {
    /// The six properties decided from pullback/pushout and factorization probes.
    pub const STABILITY: [Property; 6] = [
        Property::LeftSemiAbelian,
        Property::RightSemiAbelian,
        Property::LeftQuasiAbelian,
        Property::RightQuasiAbelian,
        Property::LeftIntegral,
        Property::RightIntegral,
    ];

    pub const CERTIFIABLE: [Property; 8] = [
        Property::LeftSemiAbelian,
        Property::RightSemiAbelian,
        Property::LeftQuasiAbelian,
        Property::RightQuasiAbelian,
        Property::LeftIntegral,
        Property::RightIntegral,
        Property::Projective,
        Property::QuasiProjective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::LeftSemiAbelian => "left-semi-abelian",
            Property::RightSemiAbelian => "right-semi-abelian",
            Property::SemiAbelian => "semi-abelian",
            Property::LeftQuasiAbelian => "left-quasi-abelian",
            Property::RightQuasiAbelian => "right-quasi-abelian",
            Property::QuasiAbelian => "quasi-abelian",
            Property::LeftIntegral => "left-integral",
            Property::RightIntegral => "right-integral",
            Property::Integral => "integral",
            Property::EnoughProjectives => "enough-projectives",
            Property::EnoughInjectives => "enough-injectives",
            Property::EnoughQuasiProjectives => "enough-quasi-projectives",
            Property::EnoughQuasiInjectives => "enough-quasi-injectives",
            Property::AdmissibleIntersections => "admissible-intersections",
            Property::Projective => "projective",
            Property::QuasiProjective => "quasi-projective",
        }
    }

    /// The formal dual: left and right swap, projective and injective swap.
    pub fn dual(self) -> Property {
        use Property::*;
        match self {
            LeftSemiAbelian => RightSemiAbelian,
            RightSemiAbelian => LeftSemiAbelian,
            LeftQuasiAbelian => RightQuasiAbelian,
            RightQuasiAbelian => LeftQuasiAbelian,
            LeftIntegral => RightIntegral,
            RightIntegral => LeftIntegral,
            EnoughProjectives => EnoughInjectives,
            EnoughInjectives => EnoughProjectives,
            EnoughQuasiProjectives => EnoughQuasiInjectives,
            EnoughQuasiInjectives => EnoughQuasiProjectives,
            other => other,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict<M> {
    /// No counterexample among `probes` tested cases.
    PassOnCorpus { probes: usize },
    Certificate { certificate: PropertyCertificate<M> },
}

impl<M> Verdict<M> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::PassOnCorpus { .. })
    }

    pub fn certificate(&self) -> Option<&PropertyCertificate<M>> {
        match self {
            Verdict::Certificate { certificate } => Some(certificate),
            Verdict::PassOnCorpus { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("the probe corpus is empty")]
    EmptyCorpus,
    #[error("{0:?} is not decided by a probe checker")]
    NotAProbeProperty(Property),
    #[error(transparent)]
    Engine(#[from] CategoryError),
}

/// Which pairs of probes get tested together.
///
/// Small corpora are paired exhaustively. Larger ones pair each probe with the
/// next `partners` compatible probes in corpus order, wrapping around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPolicy {
    pub exhaustive_limit: usize,
    pub partners: usize,
}

impl Default for PairPolicy {
    fn default() -> Self {
        PairPolicy { exhaustive_limit: 64, partners: 4 }
    }
}

/// Groups indices by key, keeping first-appearance order.
pub(crate) fn group_by_key<K: PartialEq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut reps: Vec<&K> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        match reps.iter().position(|r| *r == k) {
            Some(g) => groups[g].push(i),
            None => {
                reps.push(k);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Ordered `(i, j)` pairs with `active[i]` and `keys[i] == keys[j]`.
pub(crate) fn probe_pairs<K: PartialEq>(keys: &[K], active: &[bool], policy: &PairPolicy) -> Vec<(usize, usize)> {
    let exhaustive = keys.len() <= policy.exhaustive_limit;
    let mut pairs = Vec::new();
    for group in group_by_key(keys) {
        for (pos, &i) in group.iter().enumerate() {
            if !active[i] {
                continue;
            }
            if exhaustive || group.len() <= policy.partners {
                pairs.extend(group.iter().map(|&j| (i, j)));
            } else {
                pairs.extend((1..=policy.partners).map(|step| (i, group[(pos + step) % group.len()])));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

fn instance_of<C: Category>(cat: &C) -> String {
    cat.instance_id()
}

fn named<M>(entries: Vec<(&str, M)>) -> BTreeMap<String, M> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn certificate<M>(instance: String, property: Property, morphisms: BTreeMap<String, M>) -> PropertyCertificate<M> {
    PropertyCertificate {
        property,
        instance,
        morphisms,
        transcript: certificate::property_template(property).expect("certifiable property"),
    }
}

fn non_empty<M>(corpus: &[M]) -> Result<(), CheckError> {
    if corpus.is_empty() {
        Err(CheckError::EmptyCorpus)
    } else {
        Ok(())
    }
}

fn semi_abelian<C: Category>(cat: &C, corpus: &[C::Morphism], left: bool) -> Result<Verdict<C::Morphism>, CheckError> {
    non_empty(corpus)?;
    let property = if left { Property::LeftSemiAbelian } else { Property::RightSemiAbelian };
    let found = corpus.par_iter().find_map_first(|f| {
        let fac = match cat.factorize(f) {
            Ok(fac) => fac,
            Err(e) => return Some(Err(e)),
        };
        let ok = if left { cat.is_mono(&fac.parallel) } else { cat.is_epi(&fac.parallel) };
        if ok {
            return None;
        }
        let morphisms = named(vec![
            ("f", f.clone()),
            ("kernel", cat.kernel(f).arrow),
            ("coimage", fac.coimage.arrow),
            ("cokernel", cat.cokernel(f).arrow),
            ("image", fac.image.arrow),
            ("parallel", fac.parallel),
        ]);
        Some(Ok(certificate(instance_of(cat), property, morphisms)))
    });
    match found {
        None => Ok(Verdict::PassOnCorpus { probes: corpus.len() }),
        Some(Ok(certificate)) => Ok(Verdict::Certificate { certificate }),
        Some(Err(e)) => Err(e.into()),
    }
}

pub fn check_left_semi_abelian<C: Category>(cat: &C, corpus: &[C::Morphism]) -> Result<Verdict<C::Morphism>, CheckError> {
    semi_abelian(cat, corpus, true)
}

pub fn check_right_semi_abelian<C: Category>(cat: &C, corpus: &[C::Morphism]) -> Result<Verdict<C::Morphism>, CheckError> {
    semi_abelian(cat, corpus, false)
}

/// Tests whether the class cut out by `member` is stable under pullback
/// (`pullback = true`) or pushout along every paired probe.
fn stability<C, P>(
    cat: &C,
    corpus: &[C::Morphism],
    policy: &PairPolicy,
    property: Property,
    pullback: bool,
    member: P,
) -> Result<Verdict<C::Morphism>, CheckError>
where
    C: Category,
    P: Fn(&C::Morphism) -> bool + Sync,
{
    non_empty(corpus)?;
    let keys: Vec<C::Object> = corpus
        .iter()
        .map(|f| if pullback { cat.target(f) } else { cat.source(f) })
        .collect();
    let active: Vec<bool> = corpus.par_iter().map(&member).collect();
    let pairs = probe_pairs(&keys, &active, policy);
    let found = pairs.par_iter().find_map_first(|&(i, j)| {
        let (f, g) = (&corpus[i], &corpus[j]);
        let sq: SquareWitness<_, _> = match if pullback { cat.pullback(f, g) } else { cat.pushout(f, g) } {
            Ok(sq) => sq,
            Err(e) => return Some(Err(e)),
        };
        if member(&sq.f_prime) {
            return None;
        }
        let morphisms = named(vec![("f", sq.f), ("g", sq.g), ("f_prime", sq.f_prime), ("g_prime", sq.g_prime)]);
        Some(Ok(certificate(instance_of(cat), property, morphisms)))
    });
    match found {
        None => Ok(Verdict::PassOnCorpus { probes: pairs.len() }),
        Some(Ok(certificate)) => Ok(Verdict::Certificate { certificate }),
        Some(Err(e)) => Err(e.into()),
    }
}

pub fn check_left_quasi_abelian<C: Category>(cat: &C, corpus: &[C::Morphism], policy: &PairPolicy) -> Result<Verdict<C::Morphism>, CheckError> {
    stability(cat, corpus, policy, Property::LeftQuasiAbelian, true, |f| cat.is_cokernel_morphism(f))
}

pub fn check_right_quasi_abelian<C: Category>(cat: &C, corpus: &[C::Morphism], policy: &PairPolicy) -> Result<Verdict<C::Morphism>, CheckError> {
    stability(cat, corpus, policy, Property::RightQuasiAbelian, false, |f| cat.is_kernel_morphism(f))
}

pub fn check_left_integral<C: Category>(cat: &C, corpus: &[C::Morphism], policy: &PairPolicy) -> Result<Verdict<C::Morphism>, CheckError> {
    stability(cat, corpus, policy, Property::LeftIntegral, true, |f| cat.is_epi(f))
}

pub fn check_right_integral<C: Category>(cat: &C, corpus: &[C::Morphism], policy: &PairPolicy) -> Result<Verdict<C::Morphism>, CheckError> {
    stability(cat, corpus, policy, Property::RightIntegral, false, |f| cat.is_mono(f))
}

pub fn check_property<C: Category>(
    cat: &C,
    property: Property,
    corpus: &[C::Morphism],
    policy: &PairPolicy,
) -> Result<Verdict<C::Morphism>, CheckError> {
    match property {
        Property::LeftSemiAbelian => check_left_semi_abelian(cat, corpus),
        Property::RightSemiAbelian => check_right_semi_abelian(cat, corpus),
        Property::LeftQuasiAbelian => check_left_quasi_abelian(cat, corpus, policy),
        Property::RightQuasiAbelian => check_right_quasi_abelian(cat, corpus, policy),
        Property::LeftIntegral => check_left_integral(cat, corpus, policy),
        Property::RightIntegral => check_right_integral(cat, corpus, policy),
        other => Err(CheckError::NotAProbeProperty(other)),
    }
}

/// Direct check of the factorization form: `f = i ∘ p` with `i` monic and `p`
/// a cokernel (left), or `i` a kernel and `p` epic (right). Returns `(i, p)`.
pub fn direct_factorization<C: Category>(cat: &C, f: &C::Morphism, left: bool) -> Option<(C::Morphism, C::Morphism)> {
    let fac = cat.factorize(f).ok()?;
    if left {
        let i = cat.compose(&fac.image.arrow, &fac.parallel).ok()?;
        let p = fac.coimage.arrow;
        (cat.is_mono(&i) && cat.is_cokernel_morphism(&p)).then_some((i, p))
    } else {
        let p = cat.compose(&fac.parallel, &fac.coimage.arrow).ok()?;
        let i = fac.image.arrow;
        (cat.is_kernel_morphism(&i) && cat.is_epi(&p)).then_some((i, p))
    }
}

fn projectivity<C, P>(
    cat: &C,
    object: &C::Object,
    corpus: &[C::Morphism],
    property: Property,
    applies: P,
) -> Result<Verdict<C::Morphism>, CheckError>
where
    C: Category,
    P: Fn(&C::Morphism) -> bool + Sync,
{
    non_empty(corpus)?;
    let active: Vec<usize> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, e)| applies(e).then_some(i))
        .collect();
    let found = active.par_iter().find_map_first(|&i| {
        let e = &corpus[i];
        cat.hom_generators(object, &cat.target(e))
            .into_iter()
            .find(|h| cat.lift(h, e).is_none())
            .map(|h| certificate(instance_of(cat), property, named(vec![("e", e.clone()), ("h", h)])))
    });
    Ok(match found {
        None => Verdict::PassOnCorpus { probes: active.len() },
        Some(certificate) => Verdict::Certificate { certificate },
    })
}

/// `Hom(P, e)` is surjective for every epimorphism `e` in the corpus.
pub fn is_projective_probe<C: Category>(cat: &C, object: &C::Object, corpus: &[C::Morphism]) -> Result<Verdict<C::Morphism>, CheckError> {
    projectivity(cat, object, corpus, Property::Projective, |e| cat.is_epi(e))
}

/// `Hom(P, e)` is surjective for every cokernel `e` in the corpus.
pub fn is_quasi_projective_probe<C: Category>(
    cat: &C,
    object: &C::Object,
    corpus: &[C::Morphism],
) -> Result<Verdict<C::Morphism>, CheckError> {
    projectivity(cat, object, corpus, Property::QuasiProjective, |e| cat.is_cokernel_morphism(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_pairs_for_small_corpora() {
        let keys = [0, 1, 0, 0];
        let active = [true, true, false, true];
        let pairs = probe_pairs(&keys, &active, &PairPolicy::default());
        assert_eq!(pairs, vec![(0, 0), (0, 2), (0, 3), (1, 1), (3, 0), (3, 2), (3, 3)]);
    }

    #[test]
    fn cyclic_partners_for_large_corpora() {
        let keys = vec![0; 10];
        let active = vec![true; 10];
        let policy = PairPolicy { exhaustive_limit: 4, partners: 2 };
        let pairs = probe_pairs(&keys, &active, &policy);
        assert_eq!(pairs.len(), 20);
        assert!(pairs.contains(&(9, 0)) && pairs.contains(&(9, 1)));
    }

    #[test]
    fn duals_are_involutive() {
        for p in Property::STABILITY {
            assert_eq!(p.dual().dual(), p);
            assert_ne!(p.dual(), p);
        }
    }
}
