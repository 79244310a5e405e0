use preab_core::category::{Category, Engine, SquareWitness};
use preab_core::corpus::{fgab_curated, pairvect_curated, pairvect_random, product_random, vectq_exhaustive, vectq_random};
use preab_core::instances::{FgAb, PairVect, Product, VectQ};
use proptest::prelude::*;

/// The per-morphism universal-property suite. Returns a description of the
/// first violation.
fn suite<C: Category>(cat: &C, f: &C::Morphism, probes: &[C::Morphism]) -> Result<(), String> {
    let ker = cat.kernel(f);
    let cok = cat.cokernel(f);
    if !cat.is_zero_morphism(&cat.compose(f, &ker.arrow).unwrap()) || !cat.is_zero_morphism(&cat.compose(&cok.arrow, f).unwrap()) {
        return Err(format!("nonzero composite for {f:?}"));
    }
    cat.check_kernel_universal(f, &ker, probes).map_err(|v| format!("{}: {:?}", v.reason, v.probe))?;
    cat.check_cokernel_universal(f, &cok, probes).map_err(|v| format!("{}: {:?}", v.reason, v.probe))?;
    let fac = cat.factorize(f).map_err(|e| e.to_string())?;
    let back = cat.compose_chain(&[&fac.image.arrow, &fac.parallel, &fac.coimage.arrow]).map_err(|e| e.to_string())?;
    if !cat.equal(&back, f) {
        return Err(format!("factorization does not recompose for {f:?}"));
    }
    if cat.is_mono(f) != cat.is_zero_object(&ker.object) || cat.is_epi(f) != cat.is_zero_object(&cok.object) {
        return Err("mono/epi disagree with kernel/cokernel".into());
    }
    for g in probes.iter().filter(|g| cat.target(g) == cat.target(f)).take(6) {
        let sq: SquareWitness<_, _> = cat.pullback(f, g).map_err(|e| e.to_string())?;
        let mut cones: Vec<(C::Morphism, C::Morphism)> = probes
            .iter()
            .filter(|u| cat.target(u) == sq.corner)
            .map(|u| (cat.compose_unchecked(&sq.g_prime, u), cat.compose_unchecked(&sq.f_prime, u)))
            .collect();
        for x in probes.iter().filter(|x| cat.target(x) == cat.source(f)).take(8) {
            for y in probes.iter().filter(|y| cat.target(y) == cat.source(g) && cat.source(y) == cat.source(x)).take(8) {
                cones.push((x.clone(), y.clone()));
            }
        }
        let z = cat.zero_object();
        cones.push((cat.zero_morphism(&z, &cat.source(f)), cat.zero_morphism(&z, &cat.source(g))));
        cat.check_pullback_universal(&sq, &cones).map_err(|v| format!("{}: {:?}", v.reason, v.probe))?;
    }
    for g in probes.iter().filter(|g| cat.source(g) == cat.source(f)).take(6) {
        let sq = cat.pushout(f, g).map_err(|e| e.to_string())?;
        if !cat.square_commutes(&sq) {
            return Err(format!("pushout square of {f:?} and {g:?} does not commute"));
        }
    }
    Ok(())
}

fn run_all<C: Category>(cat: &C, corpus: &[C::Morphism]) {
    for f in corpus {
        if let Err(e) = suite(cat, f, corpus) {
            panic!("{}: {e}", cat.instance_id());
        }
    }
}

#[test]
fn vectq_exhaustive_corpus() {
    run_all(&VectQ, &vectq_exhaustive());
}

#[test]
fn pairvect_curated_corpus() {
    run_all(&PairVect, &pairvect_curated());
}

#[test]
fn fgab_curated_corpus() {
    run_all(&FgAb, &fgab_curated());
}

#[test]
fn vectq_parallel_morphisms_are_isomorphisms() {
    for f in vectq_exhaustive().iter().chain(&vectq_random(5, 200)) {
        assert!(VectQ.is_isomorphism(&VectQ.parallel_morphism(f).unwrap()), "{f:?}");
    }
}

#[test]
fn vectq_monos_are_kernels_and_epis_cokernels() {
    for f in vectq_exhaustive() {
        assert_eq!(VectQ.is_mono(&f), VectQ.is_kernel_morphism(&f));
        assert_eq!(VectQ.is_epi(&f), VectQ.is_cokernel_morphism(&f));
    }
}

#[test]
fn pairvect_kernels_and_cokernels_are_strict() {
    use preab_core::linalg::{column_space_contains, rank};
    for f in pairvect_curated().iter().chain(&pairvect_random(11, 150)) {
        let image_of_sub = f.matrix.matmul(&f.source.basis_columns());
        let target_sub = f.target.basis_columns();
        if PairVect.is_kernel_morphism(f) {
            assert!(PairVect.is_mono(f));
            // the source subspace is the full preimage of the target subspace
            let ann = f.target.annihilator();
            let preimage = preab_core::linalg::nullspace_basis(&ann.matmul(&f.matrix));
            assert_eq!(rank(&preimage), f.source.subspace_dim(), "{f:?}");
        }
        if PairVect.is_cokernel_morphism(f) {
            assert_eq!(rank(&f.matrix), f.target.dim);
            assert!(column_space_contains(&image_of_sub, &target_sub), "{f:?}");
        }
        let full_preimage = {
            let ann = f.target.annihilator();
            rank(&preab_core::linalg::nullspace_basis(&ann.matmul(&f.matrix))) == f.source.subspace_dim()
        };
        let onto = rank(&f.matrix) == f.target.dim && column_space_contains(&image_of_sub, &target_sub);
        assert_eq!(PairVect.is_kernel_morphism(f), rank(&f.matrix) == f.source.dim && full_preimage, "{f:?}");
        assert_eq!(PairVect.is_cokernel_morphism(f), onto, "{f:?}");
    }
}

#[test]
fn product_matches_components() {
    let cat = Product(VectQ, PairVect);
    let corpus = product_random(21, 200);
    for f in &corpus {
        let k = cat.kernel(f);
        assert_eq!(k.arrow.first, VectQ.kernel(&f.first).arrow);
        assert_eq!(k.arrow.second, PairVect.kernel(&f.second).arrow);
        let c = cat.cokernel(f);
        assert_eq!(c.arrow.first, VectQ.cokernel(&f.first).arrow);
        assert_eq!(c.arrow.second, PairVect.cokernel(&f.second).arrow);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vectq_random_suite(seed in any::<u64>()) {
        let corpus = vectq_random(seed, 12);
        for f in &corpus {
            prop_assert_eq!(suite(&VectQ, f, &corpus), Ok(()));
        }
    }

    #[test]
    fn pairvect_random_suite(seed in any::<u64>()) {
        let corpus = pairvect_random(seed, 12);
        for f in &corpus {
            prop_assert_eq!(suite(&PairVect, f, &corpus), Ok(()));
        }
    }

    #[test]
    fn product_random_suite(seed in any::<u64>()) {
        let corpus = product_random(seed, 8);
        for f in &corpus {
            prop_assert_eq!(suite(&Product(VectQ, PairVect), f, &corpus), Ok(()));
        }
    }
}
