use preab_core::category::{Category, Engine};
use preab_core::checker::{
    check_property, direct_factorization, property_template, is_projective_probe, is_quasi_projective_probe, verify_property, PairPolicy,
    Property, PropertyCertificate, Verdict,
};
use preab_core::corpus::{fgab_curated, pairvect_curated, vectq_exhaustive};
use preab_core::fixtures::Mock;
use preab_core::instances::pairvect::monic_epic_witness;
use preab_core::instances::{Dim, FgAb, LinearMap, PairObj, PairVect, Product, VectQ};
use preab_core::oracle::Oracle;

fn all_pass<C: Category>(cat: &C, corpus: &[C::Morphism]) {
    for p in Property::STABILITY {
        let v = check_property(cat, p, corpus, &PairPolicy::default()).unwrap();
        assert!(v.passed(), "{} {p:?}: {v:?}", cat.instance_id());
    }
}

fn certificate<C: Category>(cat: &C, p: Property, corpus: &[C::Morphism]) -> Option<PropertyCertificate<C::Morphism>> {
    match check_property(cat, p, corpus, &PairPolicy::default()) {
        Ok(Verdict::Certificate { certificate }) => Some(certificate),
        _ => None,
    }
}

#[test]
fn abelian_instances_pass() {
    all_pass(&VectQ, &vectq_exhaustive());
    all_pass(&FgAb, &fgab_curated());
}

#[test]
fn pairvect_passes_on_curated_corpus() {
    all_pass(&PairVect, &pairvect_curated());
}

#[test]
fn monic_epic_witness_verdicts() {
    let w = monic_epic_witness();
    assert!(PairVect.is_mono(&w));
    assert!(PairVect.is_epi(&w));
    assert!(!PairVect.is_isomorphism(&w));
    assert!(!PairVect.is_kernel_morphism(&w));
    assert!(!PairVect.is_cokernel_morphism(&w));
    assert!(PairVect.re_is_mono(&w) && PairVect.re_is_epi(&w) && !PairVect.re_is_iso(&w));
    assert!(!PairVect.re_is_kernel(&w) && !PairVect.re_is_cokernel(&w));
}

#[test]
fn every_checker_has_a_failure_path() {
    let corpus = vectq_exhaustive();
    let mocks = [Mock::CLOSURE, Mock::LAZY, Mock::CLOSURE.dualized(), Mock::LAZY.dualized()];
    for p in Property::STABILITY {
        let found: Vec<_> = mocks.iter().filter_map(|m| certificate(m, p, &corpus).map(|c| (m, c))).collect();
        assert!(!found.is_empty(), "{p:?}");
        for (m, c) in found {
            verify_property(m, &c).unwrap();
        }
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let mut c = certificate(&Mock::CLOSURE, Property::LeftIntegral, &vectq_exhaustive()).unwrap();
    c.property = Property::RightIntegral;
    assert!(verify_property(&Mock::CLOSURE, &c).is_err());
    let mut c = certificate(&Mock::CLOSURE, Property::LeftIntegral, &vectq_exhaustive()).unwrap();
    let g = c.morphisms["g"].clone();
    c.morphisms.insert("f".into(), g);
    assert!(verify_property(&Mock::CLOSURE, &c).is_err());
}

fn transpose(f: &LinearMap) -> LinearMap {
    LinearMap::new(f.matrix.transpose())
}

#[test]
fn failures_transfer_to_the_dual() {
    let corpus = vectq_exhaustive();
    let dual_corpus: Vec<LinearMap> = corpus.iter().map(transpose).collect();
    for m in [Mock::CLOSURE, Mock::LAZY] {
        let d = m.dualized();
        for p in Property::STABILITY {
            let here = certificate(&m, p, &corpus);
            let there = certificate(&d, p.dual(), &dual_corpus);
            assert_eq!(here.is_some(), there.is_some(), "{m:?} {p:?}");
            if let (Some(c), false) = (here, matches!(p, Property::LeftSemiAbelian | Property::RightSemiAbelian)) {
                let moved = PropertyCertificate {
                    property: p.dual(),
                    transcript: property_template(p.dual()).unwrap(),
                    ..c.map(d.instance_id(), transpose)
                };
                if let Err(e) = verify_property(&d, &moved) { panic!("{m:?} {p:?}: {e:?}\n{:?}", moved.morphisms.keys().collect::<Vec<_>>()); }
            }
        }
    }
}

#[test]
fn mock_failure_lifts_to_product() {
    let c = certificate(&Mock::CLOSURE, Property::LeftIntegral, &vectq_exhaustive()).unwrap();
    let cat = Product(Mock::CLOSURE, FgAb);
    let lifted = c.map(cat.instance_id(), |f| cat.with_zero_second(f));
    verify_property(&cat, &lifted).unwrap();
}

#[test]
fn direct_factorization_agrees_with_parallel_morphism() {
    for f in vectq_exhaustive() {
        assert!(direct_factorization(&VectQ, &f, true).is_some());
        assert!(direct_factorization(&VectQ, &f, false).is_some());
    }
    for f in pairvect_curated() {
        let par = PairVect.parallel_morphism(&f).unwrap();
        assert_eq!(direct_factorization(&PairVect, &f, true).is_some(), PairVect.is_mono(&par));
        assert_eq!(direct_factorization(&PairVect, &f, false).is_some(), PairVect.is_epi(&par));
    }
    let c = certificate(&Mock::LAZY, Property::LeftSemiAbelian, &vectq_exhaustive()).unwrap();
    assert!(direct_factorization(&Mock::LAZY, &c.morphisms["f"], true).is_none());
}

#[test]
fn projectivity_in_pairvect() {
    let p = PairObj::full(1);
    let v = is_projective_probe(&PairVect, &p, &[monic_epic_witness()]).unwrap();
    let cert = v.certificate().expect("not projective");
    verify_property(&PairVect, cert).unwrap();
    assert!(!PairVect.is_zero_morphism(&cert.morphisms["h"]));

    let cokernels: Vec<_> = pairvect_curated().into_iter().filter(|e| PairVect.is_cokernel_morphism(e)).collect();
    assert!(!cokernels.is_empty());
    assert!(is_quasi_projective_probe(&PairVect, &p, &cokernels).unwrap().passed());
}

#[test]
fn every_vector_space_is_projective() {
    let corpus = vectq_exhaustive();
    for n in 0..=3 {
        assert!(is_projective_probe(&VectQ, &Dim(n), &corpus).unwrap().passed());
        assert!(is_quasi_projective_probe(&VectQ, &Dim(n), &corpus).unwrap().passed());
    }
}

#[test]
fn empty_corpus_is_an_error() {
    assert!(check_property(&VectQ, Property::LeftIntegral, &[], &PairPolicy::default()).is_err());
    assert!(check_property(&VectQ, Property::Integral, &vectq_exhaustive(), &PairPolicy::default()).is_err());
}
