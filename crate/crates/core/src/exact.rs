//! Exact structures on an instance and the admissible-intersection property.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{Category, CategoryError, Engine};
use crate::checker::certificate::ai_template;
use crate::checker::{probe_pairs, AiCertificate, CheckError, PairPolicy, StructureKind};

/// A kernel-cokernel pair `A -f-> B -g-> C`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Conflation<M> {
    pub inflation: M,
    pub deflation: M,
}

#[derive(Clone, Debug)]
pub enum ExactStructure<M> {
    /// Every kernel-cokernel pair.
    AllPairs,
    /// Split kernel-cokernel pairs only.
    Split,
    /// Pairs isomorphic to one in the list.
    Custom(Vec<Conflation<M>>),
}

impl<M> ExactStructure<M> {
    pub fn kind(&self) -> StructureKind {
        match self {
            ExactStructure::AllPairs => StructureKind::AllPairs,
            ExactStructure::Split => StructureKind::Split,
            ExactStructure::Custom(_) => StructureKind::Custom,
        }
    }
}

pub fn is_kernel_cokernel_pair<C: Category>(cat: &C, f: &C::Morphism, g: &C::Morphism) -> bool {
    cat.target(f) == cat.source(g) && cat.is_kernel_of(f, g) && cat.is_cokernel_of(g, f)
}

fn listed<C: Category>(cat: &C, list: &[Conflation<C::Morphism>], f: &C::Morphism) -> bool {
    list.iter().any(|c| cat.isomorphism_over(&c.inflation, f).is_some())
}

pub fn is_conflation<C: Category>(
    cat: &C,
    f: &C::Morphism,
    g: &C::Morphism,
    structure: &ExactStructure<C::Morphism>,
) -> bool {
    if !is_kernel_cokernel_pair(cat, f, g) {
        return false;
    }
    match structure {
        ExactStructure::AllPairs => true,
        ExactStructure::Split => cat.retraction(f).is_some(),
        ExactStructure::Custom(list) => listed(cat, list, f),
    }
}

pub fn conflation<C: Category>(
    cat: &C,
    f: &C::Morphism,
    g: &C::Morphism,
    structure: &ExactStructure<C::Morphism>,
) -> Option<Conflation<C::Morphism>> {
    is_conflation(cat, f, g, structure).then(|| Conflation { inflation: f.clone(), deflation: g.clone() })
}

pub fn is_admissible_mono<C: Category>(cat: &C, f: &C::Morphism, structure: &ExactStructure<C::Morphism>) -> bool {
    match structure {
        ExactStructure::AllPairs => cat.is_kernel_morphism(f),
        ExactStructure::Split => cat.retraction(f).is_some(),
        ExactStructure::Custom(list) => cat.is_kernel_morphism(f) && listed(cat, list, f),
    }
}

pub fn is_admissible_epi<C: Category>(cat: &C, g: &C::Morphism, structure: &ExactStructure<C::Morphism>) -> bool {
    match structure {
        ExactStructure::AllPairs => cat.is_cokernel_morphism(g),
        ExactStructure::Split => cat.section(g).is_some(),
        ExactStructure::Custom(list) => cat.is_cokernel_morphism(g) && listed(cat, list, &cat.kernel(g).arrow),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    IdentityConflations,
    MonoComposition,
    EpiComposition,
    PushoutStability,
    PullbackStability,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AxiomVerdict<M> {
    PassOnCorpus { probes: usize },
    Violation { axiom: Axiom, morphisms: BTreeMap<String, M> },
}

impl<M> AxiomVerdict<M> {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomVerdict::PassOnCorpus { .. })
    }
}

fn violation<M>(axiom: Axiom, entries: Vec<(&str, M)>) -> AxiomVerdict<M> {
    AxiomVerdict::Violation { axiom, morphisms: entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect() }
}

/// `(i, j)` with `target(corpus[i]) = source(corpus[j])`, both flagged. Large
/// corpora pair each `i` with a few partners chosen cyclically.
fn composable_pairs<C: Category>(cat: &C, corpus: &[C::Morphism], flags: &[bool], policy: &PairPolicy) -> Vec<(usize, usize)> {
    let sources: Vec<C::Object> = corpus.iter().map(|g| cat.source(g)).collect();
    let exhaustive = corpus.len() <= policy.exhaustive_limit;
    let mut pairs = Vec::new();
    for i in (0..corpus.len()).filter(|&i| flags[i]) {
        let t = cat.target(&corpus[i]);
        let partners: Vec<usize> = (0..corpus.len()).filter(|&j| flags[j] && sources[j] == t).collect();
        if exhaustive || partners.len() <= policy.partners {
            pairs.extend(partners.iter().map(|&j| (i, j)));
        } else {
            let start = i % partners.len();
            pairs.extend((0..policy.partners).map(|k| (i, partners[(start + k) % partners.len()])));
        }
    }
    pairs
}

/// Probe-checks the exact-category axioms: identity conflations, composition
/// closure of admissible monos and epis, pushout stability of admissible monos
/// and pullback stability of admissible epis.
pub fn check_exact_axioms<C: Category>(
    cat: &C,
    structure: &ExactStructure<C::Morphism>,
    corpus: &[C::Morphism],
    policy: &PairPolicy,
) -> Result<AxiomVerdict<C::Morphism>, CheckError> {
    if corpus.is_empty() {
        return Err(CheckError::EmptyCorpus);
    }
    let mut probes = 0;
    let mut objects: Vec<C::Object> = Vec::new();
    for f in corpus {
        for a in [cat.source(f), cat.target(f)] {
            if !objects.contains(&a) {
                objects.push(a);
            }
        }
    }
    let zero = cat.zero_object();
    for a in &objects {
        probes += 1;
        let id = cat.identity(a);
        let to_zero = cat.zero_morphism(a, &zero);
        let from_zero = cat.zero_morphism(&zero, a);
        if !is_conflation(cat, &id, &to_zero, structure) {
            return Ok(violation(Axiom::IdentityConflations, vec![("f", id), ("g", to_zero)]));
        }
        if !is_conflation(cat, &from_zero, &id, structure) {
            return Ok(violation(Axiom::IdentityConflations, vec![("f", from_zero), ("g", id)]));
        }
    }

    let monos: Vec<bool> = corpus.par_iter().map(|f| is_admissible_mono(cat, f, structure)).collect();
    let epis: Vec<bool> = corpus.par_iter().map(|g| is_admissible_epi(cat, g, structure)).collect();

    // g ∘ f for admissible f, g with target(f) = source(g)
    for (axiom, flags, member) in [
        (Axiom::MonoComposition, &monos, is_admissible_mono::<C> as fn(&C, &C::Morphism, &ExactStructure<C::Morphism>) -> bool),
        (Axiom::EpiComposition, &epis, is_admissible_epi::<C>),
    ] {
        let pairs = composable_pairs(cat, corpus, flags, policy);
        probes += pairs.len();
        let found = pairs.par_iter().find_map_first(|&(i, j)| {
            let gf = cat.compose_unchecked(&corpus[j], &corpus[i]);
            (!member(cat, &gf, structure)).then_some((i, j, gf))
        });
        if let Some((i, j, gf)) = found {
            return Ok(violation(axiom, vec![("f", corpus[i].clone()), ("g", corpus[j].clone()), ("composite", gf)]));
        }
    }

    for (axiom, pullback) in [(Axiom::PushoutStability, false), (Axiom::PullbackStability, true)] {
        let keys: Vec<C::Object> = corpus
            .iter()
            .map(|f| if pullback { cat.target(f) } else { cat.source(f) })
            .collect();
        let active = if pullback { &epis } else { &monos };
        let pairs = probe_pairs(&keys, active, policy);
        probes += pairs.len();
        let found = pairs.par_iter().find_map_first(|&(i, j)| {
            let sq = match if pullback { cat.pullback(&corpus[i], &corpus[j]) } else { cat.pushout(&corpus[i], &corpus[j]) } {
                Ok(sq) => sq,
                Err(e) => return Some(Err(e)),
            };
            let ok = if pullback {
                is_admissible_epi(cat, &sq.f_prime, structure)
            } else {
                is_admissible_mono(cat, &sq.f_prime, structure)
            };
            (!ok).then(|| Ok(sq))
        });
        match found {
            None => {}
            Some(Err(e)) => return Err(e.into()),
            Some(Ok(sq)) => {
                return Ok(violation(
                    axiom,
                    vec![("f", sq.f), ("g", sq.g), ("f_prime", sq.f_prime), ("g_prime", sq.g_prime)],
                ))
            }
        }
    }
    Ok(AxiomVerdict::PassOnCorpus { probes })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TrickError {
    #[error("the pair is not a kernel-cokernel pair")]
    NotAKernelCokernelPair,
    #[error("the pair already belongs to the exact structure")]
    InStructure,
    #[error("the structure does not admit the coordinate sections")]
    SectionsNotAdmissible,
    #[error("a pullback leg is not isomorphic to the inflation")]
    LegNotIsomorphic,
    #[error(transparent)]
    Engine(#[from] CategoryError),
}

/// For a kernel-cokernel pair `A -f-> B -g-> C` outside the structure, pulls
/// back the sections `c = (1, g)` and `d = (1, 0)` of `B ⊕ C` and certifies that
/// the legs are isomorphic to `f`, hence not admissible.
pub fn section_trick_refute<C: Category>(
    cat: &C,
    f: &C::Morphism,
    g: &C::Morphism,
    structure: &ExactStructure<C::Morphism>,
) -> Result<AiCertificate<C::Morphism>, TrickError> {
    if !is_kernel_cokernel_pair(cat, f, g) {
        return Err(TrickError::NotAKernelCokernelPair);
    }
    if is_conflation(cat, f, g, structure) {
        return Err(TrickError::InStructure);
    }
    let b = cat.target(f);
    let bp = cat.biproduct(&b, &cat.target(g));
    let [i1, i2] = &bp.injections;
    let c = cat.add(i1, &cat.compose(i2, g)?)?;
    let d = i1.clone();
    if !is_admissible_mono(cat, &c, structure) || !is_admissible_mono(cat, &d, structure) {
        return Err(TrickError::SectionsNotAdmissible);
    }
    let sq = cat.pullback(&c, &d)?;
    let (a, leg_b) = (sq.g_prime, sq.f_prime);
    let phi_a = cat.isomorphism_over(&a, f).ok_or(TrickError::LegNotIsomorphic)?;
    let phi_b = cat.isomorphism_over(&leg_b, f).ok_or(TrickError::LegNotIsomorphic)?;
    let failing_leg = if !is_admissible_mono(cat, &a, structure) {
        "a"
    } else if !is_admissible_mono(cat, &leg_b, structure) {
        "b"
    } else {
        return Err(TrickError::InStructure);
    };
    let morphisms = [
        ("f", f.clone()),
        ("g", g.clone()),
        ("c", c),
        ("d", d),
        ("a", a),
        ("b", leg_b),
        ("phi_a", phi_a),
        ("phi_b", phi_b),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(AiCertificate {
        instance: cat.instance_id(),
        structure: structure.kind(),
        failing_leg: failing_leg.to_string(),
        section_trick: true,
        morphisms,
        transcript: ai_template(failing_leg, true),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AiVerdict<M> {
    PassOnCorpus { probes: usize },
    Certificate { certificate: AiCertificate<M> },
}

impl<M> AiVerdict<M> {
    pub fn passed(&self) -> bool {
        matches!(self, AiVerdict::PassOnCorpus { .. })
    }

    pub fn certificate(&self) -> Option<&AiCertificate<M>> {
        match self {
            AiVerdict::Certificate { certificate } => Some(certificate),
            AiVerdict::PassOnCorpus { .. } => None,
        }
    }
}

/// Pulls back paired admissible monos with a common target and tests both
/// legs. Kernels outside the structure are first tried with the section trick.
pub fn check_admissible_intersections<C: Category>(
    cat: &C,
    structure: &ExactStructure<C::Morphism>,
    corpus: &[C::Morphism],
    policy: &PairPolicy,
) -> Result<AiVerdict<C::Morphism>, CheckError> {
    if corpus.is_empty() {
        return Err(CheckError::EmptyCorpus);
    }
    let admissible: Vec<bool> = corpus.par_iter().map(|f| is_admissible_mono(cat, f, structure)).collect();

    let trick = corpus.par_iter().zip(admissible.par_iter()).find_map_first(|(f, &adm)| {
        if adm || !cat.is_kernel_morphism(f) {
            return None;
        }
        let g = cat.cokernel(f).arrow;
        section_trick_refute(cat, f, &g, structure).ok()
    });
    if let Some(certificate) = trick {
        return Ok(AiVerdict::Certificate { certificate });
    }

    let keys: Vec<C::Object> = corpus.iter().map(|f| cat.target(f)).collect();
    let pairs = probe_pairs(&keys, &admissible, policy);
    let pairs: Vec<(usize, usize)> = pairs.into_iter().filter(|&(_, j)| admissible[j]).collect();
    let found = pairs.par_iter().find_map_first(|&(i, j)| {
        let (c, d) = (&corpus[i], &corpus[j]);
        let sq = match cat.pullback(c, d) {
            Ok(sq) => sq,
            Err(e) => return Some(Err(e)),
        };
        let leg = if !is_admissible_mono(cat, &sq.g_prime, structure) {
            "a"
        } else if !is_admissible_mono(cat, &sq.f_prime, structure) {
            "b"
        } else {
            return None;
        };
        let morphisms = [("c", c.clone()), ("d", d.clone()), ("a", sq.g_prime), ("b", sq.f_prime)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        Some(Ok(AiCertificate {
            instance: cat.instance_id(),
            structure: structure.kind(),
            failing_leg: leg.to_string(),
            section_trick: false,
            morphisms,
            transcript: ai_template(leg, false),
        }))
    });
    match found {
        None => Ok(AiVerdict::PassOnCorpus { probes: corpus.len() + pairs.len() }),
        Some(Ok(certificate)) => Ok(AiVerdict::Certificate { certificate }),
        Some(Err(e)) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::verify_ai;
    use crate::instances::fgab::{quotient, times};
    use crate::instances::{FgAb, LinearMap, VectQ};
    use crate::linalg::rat_matrix;

    fn lm(rows: usize, cols: usize, entries: &[i64]) -> LinearMap {
        LinearMap::new(rat_matrix(rows, cols, entries))
    }

    #[test]
    fn biproduct_pair_is_a_conflation_in_both_structures() {
        let cat = VectQ;
        let bp = cat.biproduct(&crate::instances::Dim(1), &crate::instances::Dim(2));
        let (i1, p2) = (&bp.injections[0], &bp.projections[1]);
        assert!(is_conflation(&cat, i1, p2, &ExactStructure::AllPairs));
        assert!(is_conflation(&cat, i1, p2, &ExactStructure::Split));
    }

    #[test]
    fn doubling_is_admissible_only_in_all_pairs() {
        let cat = FgAb;
        let (f, g) = (times(2), quotient(2));
        assert!(is_conflation(&cat, &f, &g, &ExactStructure::AllPairs));
        assert!(!is_conflation(&cat, &f, &g, &ExactStructure::Split));
        assert!(is_admissible_mono(&cat, &f, &ExactStructure::AllPairs));
        assert!(!is_admissible_mono(&cat, &f, &ExactStructure::Split));
    }

    #[test]
    fn nonzero_composite_is_not_a_conflation() {
        let cat = VectQ;
        let f = lm(2, 1, &[1, 0]);
        let g = lm(1, 2, &[1, 0]);
        assert!(!is_conflation(&cat, &f, &g, &ExactStructure::AllPairs));
    }

    #[test]
    fn non_monic_morphism_is_not_admissible() {
        let f = lm(1, 2, &[1, 1]);
        assert!(!is_admissible_mono(&VectQ, &f, &ExactStructure::AllPairs));
        assert!(!is_admissible_mono(&VectQ, &f, &ExactStructure::Split));
    }

    #[test]
    fn coordinate_sections_are_admissible() {
        let cat = FgAb;
        let g = quotient(2);
        let bp = cat.biproduct(&cat.target(&times(2)), &cat.target(&g));
        let [i1, i2] = &bp.injections;
        let c = cat.add(i1, &cat.compose(i2, &g).unwrap()).unwrap();
        for s in [ExactStructure::AllPairs, ExactStructure::Split] {
            assert!(is_admissible_mono(&cat, &c, &s));
            assert!(is_admissible_mono(&cat, i1, &s));
        }
    }

    #[test]
    fn section_trick_on_doubling() {
        let cat = FgAb;
        let cert = section_trick_refute(&cat, &times(2), &quotient(2), &ExactStructure::Split).unwrap();
        assert_eq!(cert.failing_leg, "a");
        verify_ai(&cat, &cert).unwrap();
    }

    #[test]
    fn section_trick_not_applicable_inside_structure() {
        let cat = FgAb;
        assert_eq!(
            section_trick_refute(&cat, &times(2), &quotient(2), &ExactStructure::AllPairs).unwrap_err(),
            TrickError::InStructure
        );
        let f = lm(2, 1, &[0, 1]);
        let g = lm(1, 2, &[1, 0]);
        assert_eq!(
            section_trick_refute(&VectQ, &f, &g, &ExactStructure::AllPairs).unwrap_err(),
            TrickError::InStructure
        );
    }

    #[test]
    fn split_pair_not_applicable_under_split() {
        let cat = VectQ;
        let bp = cat.biproduct(&crate::instances::Dim(1), &crate::instances::Dim(1));
        let err = section_trick_refute(&cat, &bp.injections[0], &bp.projections[1], &ExactStructure::Split);
        assert_eq!(err.unwrap_err(), TrickError::InStructure);
    }

    #[test]
    fn custom_structure_without_composites_violates_closure() {
        let cat = VectQ;
        let f = lm(2, 1, &[1, 0]);
        let g = lm(3, 2, &[1, 0, 0, 1, 0, 0]);
        let mut list = Vec::new();
        for n in 0..4 {
            let a = crate::instances::Dim(n);
            list.push(Conflation { inflation: cat.identity(&a), deflation: cat.zero_morphism(&a, &cat.zero_object()) });
            list.push(Conflation { inflation: cat.zero_morphism(&cat.zero_object(), &a), deflation: cat.identity(&a) });
        }
        for m in [&f, &g] {
            list.push(Conflation { inflation: m.clone(), deflation: cat.cokernel(m).arrow });
        }
        let s = ExactStructure::Custom(list);
        let verdict = check_exact_axioms(&cat, &s, &[f, g], &PairPolicy::default()).unwrap();
        match verdict {
            AxiomVerdict::Violation { axiom, .. } => assert_eq!(axiom, Axiom::MonoComposition),
            other => panic!("{other:?}"),
        }
    }
}
