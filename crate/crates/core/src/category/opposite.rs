use super::{Biproduct, Category, CategoryError, CokernelResult, KernelResult, Solutions};

/// The opposite category: same objects, arrows reversed.
#[derive(Clone, Debug)]
pub struct Opposite<C>(pub C);

impl<C: Category> Category for Opposite<C> {
    type Object = C::Object;
    type Morphism = C::Morphism;

    fn instance_id(&self) -> String {
        format!("op:{}", self.0.instance_id())
    }

    fn source(&self, f: &Self::Morphism) -> Self::Object {
        self.0.target(f)
    }

    fn target(&self, f: &Self::Morphism) -> Self::Object {
        self.0.source(f)
    }

    fn validate_object(&self, a: &Self::Object) -> Result<(), CategoryError> {
        self.0.validate_object(a)
    }

    fn validate_morphism(&self, f: &Self::Morphism) -> Result<(), CategoryError> {
        self.0.validate_morphism(f)
    }

    fn zero_object(&self) -> Self::Object {
        self.0.zero_object()
    }

    fn identity(&self, a: &Self::Object) -> Self::Morphism {
        self.0.identity(a)
    }

    fn zero_morphism(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism {
        self.0.zero_morphism(b, a)
    }

    fn compose_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism {
        self.0.compose_unchecked(g, f)
    }

    fn add_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism {
        self.0.add_unchecked(f, g)
    }

    fn negate(&self, f: &Self::Morphism) -> Self::Morphism {
        self.0.negate(f)
    }

    fn equal_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        self.0.equal_unchecked(f, g)
    }

    fn biproduct(&self, a: &Self::Object, b: &Self::Object) -> Biproduct<Self::Object, Self::Morphism> {
        let Biproduct { object, injections, projections } = self.0.biproduct(a, b);
        Biproduct { object, injections: projections, projections: injections }
    }

    fn kernel(&self, f: &Self::Morphism) -> KernelResult<Self::Object, Self::Morphism> {
        let c = self.0.cokernel(f);
        KernelResult { object: c.object, arrow: c.arrow }
    }

    fn cokernel(&self, f: &Self::Morphism) -> CokernelResult<Self::Object, Self::Morphism> {
        let k = self.0.kernel(f);
        CokernelResult { object: k.object, arrow: k.arrow }
    }

    fn lift(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Solutions<Self::Morphism>> {
        self.0.extend(h, k)
    }

    fn extend(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Solutions<Self::Morphism>> {
        self.0.lift(h, k)
    }
}
