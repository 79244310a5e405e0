//! The product of two categories, computed componentwise.

use serde::{Deserialize, Serialize};

use crate::category::{Biproduct, Category, CategoryError, CokernelResult, KernelResult, Solutions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Both<X, Y> {
    pub first: X,
    pub second: Y,
}

impl<X, Y> Both<X, Y> {
    pub fn new(first: X, second: Y) -> Self {
        Both { first, second }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Product<A, B>(pub A, pub B);

pub type PairOf<A, B> = Both<<A as Category>::Morphism, <B as Category>::Morphism>;

impl<A: Category, B: Category> Product<A, B> {
    /// Embeds an arrow of the first factor with the zero object in the second slot.
    pub fn with_zero_second(&self, f: &A::Morphism) -> PairOf<A, B> {
        let z = self.1.zero_object();
        Both::new(f.clone(), self.1.zero_morphism(&z, &z))
    }

    pub fn with_zero_first(&self, g: &B::Morphism) -> PairOf<A, B> {
        let z = self.0.zero_object();
        Both::new(self.0.zero_morphism(&z, &z), g.clone())
    }
}

impl<A: Category, B: Category> Category for Product<A, B> {
    type Object = Both<A::Object, B::Object>;
    type Morphism = Both<A::Morphism, B::Morphism>;

    fn instance_id(&self) -> String {
        format!("product:{}:{}", self.0.instance_id(), self.1.instance_id())
    }

    fn source(&self, f: &Self::Morphism) -> Self::Object {
        Both::new(self.0.source(&f.first), self.1.source(&f.second))
    }

    fn target(&self, f: &Self::Morphism) -> Self::Object {
        Both::new(self.0.target(&f.first), self.1.target(&f.second))
    }

    fn validate_object(&self, a: &Self::Object) -> Result<(), CategoryError> {
        self.0
            .validate_object(&a.first)
            .map_err(|e| CategoryError::ComponentMismatch(format!("first component: {e}")))?;
        self.1
            .validate_object(&a.second)
            .map_err(|e| CategoryError::ComponentMismatch(format!("second component: {e}")))
    }

    fn validate_morphism(&self, f: &Self::Morphism) -> Result<(), CategoryError> {
        self.0
            .validate_morphism(&f.first)
            .map_err(|e| CategoryError::ComponentMismatch(format!("first component: {e}")))?;
        self.1
            .validate_morphism(&f.second)
            .map_err(|e| CategoryError::ComponentMismatch(format!("second component: {e}")))
    }

    fn zero_object(&self) -> Self::Object {
        Both::new(self.0.zero_object(), self.1.zero_object())
    }

    fn identity(&self, a: &Self::Object) -> Self::Morphism {
        Both::new(self.0.identity(&a.first), self.1.identity(&a.second))
    }

    fn zero_morphism(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism {
        Both::new(self.0.zero_morphism(&a.first, &b.first), self.1.zero_morphism(&a.second, &b.second))
    }

    fn compose_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism {
        Both::new(self.0.compose_unchecked(&f.first, &g.first), self.1.compose_unchecked(&f.second, &g.second))
    }

    fn add_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism {
        Both::new(self.0.add_unchecked(&f.first, &g.first), self.1.add_unchecked(&f.second, &g.second))
    }

    fn negate(&self, f: &Self::Morphism) -> Self::Morphism {
        Both::new(self.0.negate(&f.first), self.1.negate(&f.second))
    }

    fn equal_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        self.0.equal_unchecked(&f.first, &g.first) && self.1.equal_unchecked(&f.second, &g.second)
    }

    fn biproduct(&self, a: &Self::Object, b: &Self::Object) -> Biproduct<Self::Object, Self::Morphism> {
        let x = self.0.biproduct(&a.first, &b.first);
        let y = self.1.biproduct(&a.second, &b.second);
        let [xi1, xi2] = x.injections;
        let [yi1, yi2] = y.injections;
        let [xp1, xp2] = x.projections;
        let [yp1, yp2] = y.projections;
        Biproduct {
            object: Both::new(x.object, y.object),
            injections: [Both::new(xi1, yi1), Both::new(xi2, yi2)],
            projections: [Both::new(xp1, yp1), Both::new(xp2, yp2)],
        }
    }

    fn kernel(&self, f: &Self::Morphism) -> KernelResult<Self::Object, Self::Morphism> {
        let x = self.0.kernel(&f.first);
        let y = self.1.kernel(&f.second);
        KernelResult { object: Both::new(x.object, y.object), arrow: Both::new(x.arrow, y.arrow) }
    }

    fn cokernel(&self, f: &Self::Morphism) -> CokernelResult<Self::Object, Self::Morphism> {
        let x = self.0.cokernel(&f.first);
        let y = self.1.cokernel(&f.second);
        CokernelResult { object: Both::new(x.object, y.object), arrow: Both::new(x.arrow, y.arrow) }
    }

    fn lift(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Solutions<Self::Morphism>> {
        let x = self.0.lift(&h.first, &k.first)?;
        let y = self.1.lift(&h.second, &k.second)?;
        Some(merge(&self.0, &self.1, x, y))
    }

    fn extend(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Solutions<Self::Morphism>> {
        let x = self.0.extend(&h.first, &k.first)?;
        let y = self.1.extend(&h.second, &k.second)?;
        Some(merge(&self.0, &self.1, x, y))
    }
}

fn merge<A: Category, B: Category>(
    a: &A,
    b: &B,
    x: Solutions<A::Morphism>,
    y: Solutions<B::Morphism>,
) -> Solutions<Both<A::Morphism, B::Morphism>> {
    let zero_a = a.zero_morphism(&a.source(&x.particular), &a.target(&x.particular));
    let zero_b = b.zero_morphism(&b.source(&y.particular), &b.target(&y.particular));
    let mut homogeneous: Vec<_> = x.homogeneous.into_iter().map(|u| Both::new(u, zero_b.clone())).collect();
    homogeneous.extend(y.homogeneous.into_iter().map(|v| Both::new(zero_a.clone(), v)));
    Solutions { particular: Both::new(x.particular, y.particular), homogeneous }
}
