use super::{
    Biproduct, Category, CategoryError, CokernelResult, KernelResult, SquareKind, SquareWitness,
};

/// `f = image ∘ parallel ∘ coimage`.
#[derive(Clone, Debug)]
pub struct Factorization<O, M> {
    pub coimage: CokernelResult<O, M>,
    pub image: KernelResult<O, M>,
    pub parallel: M,
}

/// A probe against which a claimed kernel or cokernel fails its universal property.
#[derive(Clone, Debug)]
pub struct UniversalViolation<M> {
    pub probe: M,
    pub reason: &'static str,
}

/// Derived constructions, available on every [`Category`].
pub trait Engine: Category {
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism, CategoryError> {
        if self.target(g) != self.source(f) {
            return Err(CategoryError::DomainMismatch(format!(
                "cannot compose {:?} after {:?}",
                self.source(f),
                self.target(g)
            )));
        }
        Ok(self.compose_unchecked(f, g))
    }

    /// Composes a chain right to left: `[a, b, c]` is `a ∘ b ∘ c`.
    fn compose_chain(&self, chain: &[&Self::Morphism]) -> Result<Self::Morphism, CategoryError> {
        let (last, rest) = chain
            .split_last()
            .ok_or_else(|| CategoryError::DomainMismatch("empty composite".into()))?;
        rest.iter()
            .rev()
            .try_fold((*last).clone(), |acc, f| self.compose(f, &acc))
    }

    fn parallel(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        self.source(f) == self.source(g) && self.target(f) == self.target(g)
    }

    fn add(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism, CategoryError> {
        if !self.parallel(f, g) {
            return Err(CategoryError::DomainMismatch("sum of non-parallel morphisms".into()));
        }
        Ok(self.add_unchecked(f, g))
    }

    fn subtract(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism, CategoryError> {
        self.add(f, &self.negate(g))
    }

    fn equal(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        self.parallel(f, g) && self.equal_unchecked(f, g)
    }

    fn is_zero_morphism(&self, f: &Self::Morphism) -> bool {
        let z = self.zero_morphism(&self.source(f), &self.target(f));
        self.equal_unchecked(f, &z)
    }

    /// The two-sided inverse of `f`, when `f` is an isomorphism.
    ///
    /// A left inverse, if it exists, is the inverse whenever `f` is invertible, so
    /// one solve plus one check decides.
    fn inverse(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        let (a, b) = (self.source(f), self.target(f));
        let left = self.extend(&self.identity(&a), f)?.particular;
        let back = self.compose_unchecked(f, &left);
        self.equal_unchecked(&back, &self.identity(&b)).then_some(left)
    }

    fn is_isomorphism(&self, f: &Self::Morphism) -> bool {
        self.inverse(f).is_some()
    }

    /// Isomorphic to the designated zero object.
    fn is_zero_object(&self, a: &Self::Object) -> bool {
        let z = self.zero_morphism(&self.zero_object(), a);
        self.is_isomorphism(&z)
    }

    /// Checks `π_k ∘ ι_k = id`, `π_j ∘ ι_k = 0` and `ι_1 π_1 + ι_2 π_2 = id`.
    fn biproduct_identities_hold(&self, a: &Self::Object, b: &Self::Object, bp: &Biproduct<Self::Object, Self::Morphism>) -> bool {
        let [i1, i2] = &bp.injections;
        let [p1, p2] = &bp.projections;
        let id_sum = self.add_unchecked(&self.compose_unchecked(i1, p1), &self.compose_unchecked(i2, p2));
        self.equal(&self.compose_unchecked(p1, i1), &self.identity(a))
            && self.equal(&self.compose_unchecked(p2, i2), &self.identity(b))
            && self.is_zero_morphism(&self.compose_unchecked(p1, i2))
            && self.is_zero_morphism(&self.compose_unchecked(p2, i1))
            && self.equal(&id_sum, &self.identity(&bp.object))
    }

    fn image(&self, f: &Self::Morphism) -> KernelResult<Self::Object, Self::Morphism> {
        self.kernel(&self.cokernel(f).arrow)
    }

    fn coimage(&self, f: &Self::Morphism) -> CokernelResult<Self::Object, Self::Morphism> {
        self.cokernel(&self.kernel(f).arrow)
    }

    /// The canonical morphism from the coimage to the image through which `f` factors.
    fn factorize(&self, f: &Self::Morphism) -> Result<Factorization<Self::Object, Self::Morphism>, CategoryError> {
        let coimage = self.coimage(f);
        let image = self.image(f);
        let through_coimage = self
            .extend(f, &coimage.arrow)
            .ok_or_else(|| CategoryError::NoFactorization("f does not factor through its coimage".into()))?
            .particular;
        let parallel = self
            .lift(&through_coimage, &image.arrow)
            .ok_or_else(|| CategoryError::NoFactorization("coimage factor does not factor through the image".into()))?
            .particular;
        let recomposed = self.compose_chain(&[&image.arrow, &parallel, &coimage.arrow])?;
        if !self.equal(&recomposed, f) {
            return Err(CategoryError::NoFactorization("recomposed factorization differs from f".into()));
        }
        Ok(Factorization { coimage, image, parallel })
    }

    fn parallel_morphism(&self, f: &Self::Morphism) -> Result<Self::Morphism, CategoryError> {
        Ok(self.factorize(f)?.parallel)
    }

    /// Pullback of `f: X -> Z` and `g: Y -> Z` as the kernel of `[f, -g]` on `X ⊕ Y`.
    fn pullback(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<SquareWitness<Self::Object, Self::Morphism>, CategoryError> {
        if self.target(f) != self.target(g) {
            return Err(CategoryError::DomainMismatch("pullback needs a common target".into()));
        }
        let bp = self.biproduct(&self.source(f), &self.source(g));
        let [p1, p2] = &bp.projections;
        let diff = self.add_unchecked(
            &self.compose_unchecked(f, p1),
            &self.negate(&self.compose_unchecked(g, p2)),
        );
        let k = self.kernel(&diff);
        Ok(SquareWitness {
            kind: SquareKind::Pullback,
            g_prime: self.compose_unchecked(p1, &k.arrow),
            f_prime: self.compose_unchecked(p2, &k.arrow),
            corner: k.object,
            f: f.clone(),
            g: g.clone(),
        })
    }

    /// Pushout of `f: X -> Y` and `g: X -> Z` as the cokernel of `(f, -g)ᵀ` into `Y ⊕ Z`.
    fn pushout(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<SquareWitness<Self::Object, Self::Morphism>, CategoryError> {
        if self.source(f) != self.source(g) {
            return Err(CategoryError::DomainMismatch("pushout needs a common source".into()));
        }
        let bp = self.biproduct(&self.target(f), &self.target(g));
        let [i1, i2] = &bp.injections;
        let diff = self.add_unchecked(
            &self.compose_unchecked(i1, f),
            &self.negate(&self.compose_unchecked(i2, g)),
        );
        let c = self.cokernel(&diff);
        Ok(SquareWitness {
            kind: SquareKind::Pushout,
            g_prime: self.compose_unchecked(&c.arrow, i1),
            f_prime: self.compose_unchecked(&c.arrow, i2),
            corner: c.object,
            f: f.clone(),
            g: g.clone(),
        })
    }

    fn square_commutes(&self, sq: &SquareWitness<Self::Object, Self::Morphism>) -> bool {
        match sq.kind {
            SquareKind::Pullback => self.equal(
                &self.compose_unchecked(&sq.f, &sq.g_prime),
                &self.compose_unchecked(&sq.g, &sq.f_prime),
            ),
            SquareKind::Pushout => self.equal(
                &self.compose_unchecked(&sq.g_prime, &sq.f),
                &self.compose_unchecked(&sq.f_prime, &sq.g),
            ),
        }
    }

    /// Mono iff the kernel vanishes (additive categories with kernels).
    fn is_mono(&self, f: &Self::Morphism) -> bool {
        self.is_zero_object(&self.kernel(f).object)
    }

    /// Epi iff the cokernel vanishes.
    fn is_epi(&self, f: &Self::Morphism) -> bool {
        self.is_zero_object(&self.cokernel(f).object)
    }

    /// The comparison `φ` with `f = ker(coker f) ∘ φ`, when it is an isomorphism.
    fn kernel_comparison(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        let k = self.image(f);
        let phi = self.lift(f, &k.arrow)?.particular;
        self.is_isomorphism(&phi).then_some(phi)
    }

    /// The comparison `ψ` with `g = ψ ∘ coker(ker g)`, when it is an isomorphism.
    fn cokernel_comparison(&self, g: &Self::Morphism) -> Option<Self::Morphism> {
        let c = self.coimage(g);
        let psi = self.extend(g, &c.arrow)?.particular;
        self.is_isomorphism(&psi).then_some(psi)
    }

    fn is_kernel_morphism(&self, f: &Self::Morphism) -> bool {
        self.kernel_comparison(f).is_some()
    }

    fn is_cokernel_morphism(&self, g: &Self::Morphism) -> bool {
        self.cokernel_comparison(g).is_some()
    }

    /// `k` is a kernel of `f`: `f ∘ k = 0` and `k` is isomorphic over `target(k)` to `ker f`.
    fn is_kernel_of(&self, k: &Self::Morphism, f: &Self::Morphism) -> bool {
        self.target(k) == self.source(f)
            && self.is_zero_morphism(&self.compose_unchecked(f, k))
            && self.isomorphism_over(&self.kernel(f).arrow, k).is_some()
    }

    fn is_cokernel_of(&self, c: &Self::Morphism, f: &Self::Morphism) -> bool {
        if self.source(c) != self.target(f) || !self.is_zero_morphism(&self.compose_unchecked(c, f)) {
            return false;
        }
        let q = self.cokernel(f).arrow;
        self.extend(c, &q).is_some_and(|s| self.is_isomorphism(&s.particular))
    }

    /// Generators of `Hom(a, b)`: every `u` solves `0 ∘ u = 0` into the zero object.
    fn hom_generators(&self, a: &Self::Object, b: &Self::Object) -> Vec<Self::Morphism> {
        let z = self.zero_object();
        let h = self.zero_morphism(a, &z);
        let k = self.zero_morphism(b, &z);
        self.lift(&h, &k)
            .map(|s| s.homogeneous)
            .unwrap_or_default()
            .into_iter()
            .filter(|u| !self.is_zero_morphism(u))
            .collect()
    }

    /// `r` with `r ∘ f = id`.
    fn retraction(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        self.extend(&self.identity(&self.source(f)), f).map(|s| s.particular)
    }

    /// `s` with `g ∘ s = id`.
    fn section(&self, g: &Self::Morphism) -> Option<Self::Morphism> {
        self.lift(&self.identity(&self.target(g)), g).map(|s| s.particular)
    }

    /// An isomorphism `φ: source(f) -> source(leg)` with `leg ∘ φ = f`.
    fn isomorphism_over(&self, leg: &Self::Morphism, f: &Self::Morphism) -> Option<Self::Morphism> {
        if self.target(leg) != self.target(f) {
            return None;
        }
        let phi = self.lift(f, leg)?.particular;
        self.is_isomorphism(&phi).then_some(phi)
    }

    /// Whether the factorization of `h` through `k` (`k ∘ u = h`) exists and is unique.
    fn unique_lift(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Self::Morphism> {
        let sol = self.lift(h, k)?;
        sol.homogeneous
            .iter()
            .all(|u| self.is_zero_morphism(u))
            .then_some(sol.particular)
    }

    fn unique_extension(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Self::Morphism> {
        let sol = self.extend(h, k)?;
        sol.homogeneous
            .iter()
            .all(|u| self.is_zero_morphism(u))
            .then_some(sol.particular)
    }

    /// Tests the kernel of `f` against probes `h` with `f ∘ h = 0`.
    fn check_kernel_universal(
        &self,
        f: &Self::Morphism,
        ker: &KernelResult<Self::Object, Self::Morphism>,
        probes: &[Self::Morphism],
    ) -> Result<usize, UniversalViolation<Self::Morphism>> {
        if !self.is_zero_morphism(&self.compose_unchecked(f, &ker.arrow)) {
            return Err(UniversalViolation { probe: ker.arrow.clone(), reason: "composite with kernel is nonzero" });
        }
        let mut tested = 0;
        for h in probes {
            if self.target(h) != self.source(f) || !self.is_zero_morphism(&self.compose_unchecked(f, h)) {
                continue;
            }
            tested += 1;
            if self.unique_lift(h, &ker.arrow).is_none() {
                return Err(UniversalViolation { probe: h.clone(), reason: "no unique factorization through the kernel" });
            }
        }
        Ok(tested)
    }

    /// Tests the cokernel of `f` against probes `h` with `h ∘ f = 0`.
    fn check_cokernel_universal(
        &self,
        f: &Self::Morphism,
        cok: &CokernelResult<Self::Object, Self::Morphism>,
        probes: &[Self::Morphism],
    ) -> Result<usize, UniversalViolation<Self::Morphism>> {
        if !self.is_zero_morphism(&self.compose_unchecked(&cok.arrow, f)) {
            return Err(UniversalViolation { probe: cok.arrow.clone(), reason: "composite with cokernel is nonzero" });
        }
        let mut tested = 0;
        for h in probes {
            if self.source(h) != self.target(f) || !self.is_zero_morphism(&self.compose_unchecked(h, f)) {
                continue;
            }
            tested += 1;
            if self.unique_extension(h, &cok.arrow).is_none() {
                return Err(UniversalViolation { probe: h.clone(), reason: "no unique factorization through the cokernel" });
            }
        }
        Ok(tested)
    }

    /// Tests a pullback square against probe cones `(x: T -> X, y: T -> Y)` with `f x = g y`.
    fn check_pullback_universal(
        &self,
        sq: &SquareWitness<Self::Object, Self::Morphism>,
        cones: &[(Self::Morphism, Self::Morphism)],
    ) -> Result<usize, UniversalViolation<Self::Morphism>> {
        if !self.square_commutes(sq) {
            return Err(UniversalViolation { probe: sq.f.clone(), reason: "square does not commute" });
        }
        let x_obj = self.source(&sq.f);
        let y_obj = self.source(&sq.g);
        let bp = self.biproduct(&x_obj, &y_obj);
        let [i1, i2] = &bp.injections;
        // mediating maps into P are the lifts of (x, y) through (g', f') into X ⊕ Y
        let legs = self.add_unchecked(
            &self.compose_unchecked(i1, &sq.g_prime),
            &self.compose_unchecked(i2, &sq.f_prime),
        );
        let mut tested = 0;
        for (x, y) in cones {
            if self.target(x) != x_obj || self.target(y) != y_obj || self.source(x) != self.source(y) {
                continue;
            }
            if !self.equal(&self.compose_unchecked(&sq.f, x), &self.compose_unchecked(&sq.g, y)) {
                continue;
            }
            tested += 1;
            let cone = self.add_unchecked(&self.compose_unchecked(i1, x), &self.compose_unchecked(i2, y));
            if self.unique_lift(&cone, &legs).is_none() {
                return Err(UniversalViolation { probe: x.clone(), reason: "cone has no unique mediating morphism" });
            }
        }
        Ok(tested)
    }
}

impl<C: Category + ?Sized> Engine for C {}
