use preab_core::category::{Category, Engine};
use preab_core::checker::{verify_ai, PairPolicy, StructureKind};
use preab_core::corpus::{fgab_curated, pairvect_curated, vectq_exhaustive};
use preab_core::exact::{
    check_admissible_intersections, check_exact_axioms, is_admissible_epi, is_admissible_mono, is_conflation,
    ExactStructure,
};
use preab_core::instances::{FgAb, PairVect, VectQ};

fn axioms_hold<C: Category>(cat: &C, structure: &ExactStructure<C::Morphism>, corpus: &[C::Morphism]) {
    let v = check_exact_axioms(cat, structure, corpus, &PairPolicy::default()).unwrap();
    assert!(v.passed(), "{}: {v:?}", cat.instance_id());
}

fn intersections_hold<C: Category>(cat: &C, structure: &ExactStructure<C::Morphism>, corpus: &[C::Morphism]) {
    let v = check_admissible_intersections(cat, structure, corpus, &PairPolicy::default()).unwrap();
    assert!(v.passed(), "{}: {v:?}", cat.instance_id());
}

#[test]
fn maximal_structures_satisfy_the_axioms() {
    axioms_hold(&VectQ, &ExactStructure::AllPairs, &vectq_exhaustive());
    axioms_hold(&FgAb, &ExactStructure::AllPairs, &fgab_curated());
    axioms_hold(&PairVect, &ExactStructure::AllPairs, &pairvect_curated());
}

#[test]
fn split_structures_satisfy_the_axioms() {
    axioms_hold(&VectQ, &ExactStructure::Split, &vectq_exhaustive());
    axioms_hold(&FgAb, &ExactStructure::Split, &fgab_curated());
}

#[test]
fn quasi_abelian_instances_have_admissible_intersections() {
    intersections_hold(&VectQ, &ExactStructure::AllPairs, &vectq_exhaustive());
    intersections_hold(&FgAb, &ExactStructure::AllPairs, &fgab_curated());
    intersections_hold(&PairVect, &ExactStructure::AllPairs, &pairvect_curated());
}

#[test]
fn split_vector_spaces_have_admissible_intersections() {
    intersections_hold(&VectQ, &ExactStructure::Split, &vectq_exhaustive());
}

#[test]
fn split_abelian_groups_fail_admissible_intersections() {
    let v = check_admissible_intersections(&FgAb, &ExactStructure::Split, &fgab_curated(), &PairPolicy::default())
        .unwrap();
    let cert = v.certificate().expect("certificate");
    assert!(cert.section_trick);
    assert_eq!(cert.structure, StructureKind::Split);
    verify_ai(&FgAb, cert).unwrap();
}

#[test]
fn conflations_are_kernel_cokernel_pairs() {
    for structure in [ExactStructure::AllPairs, ExactStructure::Split] {
        for f in fgab_curated() {
            let g = FgAb.cokernel(&f).arrow;
            if is_conflation(&FgAb, &f, &g, &structure) {
                assert!(FgAb.is_kernel_morphism(&f) && FgAb.is_cokernel_morphism(&g));
                assert!(FgAb.is_zero_morphism(&FgAb.compose(&g, &f).unwrap()));
                assert!(is_admissible_mono(&FgAb, &f, &structure));
                assert!(is_admissible_epi(&FgAb, &g, &structure));
            }
        }
    }
}
