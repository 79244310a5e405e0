//! Negative controls: `ℚ`-vector spaces with deliberately mis-specified
//! cokernels (or, in the dual variants, kernels). They are not pre-abelian, so
//! the checkers find genuine failures on them. Their oracle restates the
//! broken semantics as rank conditions.

use serde::{Deserialize, Serialize};

use crate::category::{Biproduct, Category, CategoryError, CokernelResult, KernelResult, Solutions};
use crate::instances::{Dim, LinearMap, VectQ};
use crate::linalg::{column_space_contains, left_annihilator, nullspace_basis, rank, RatMatrix};
use crate::oracle::Oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Twist {
    /// The cokernel of a nonzero `f` also kills the first basis vector.
    Closure,
    /// The cokernel of an injective `f` kills only its columns after the first.
    Lazy,
}

/// A broken copy of vect-q. With `dual` set, every construction is conjugated
/// by transposition, so kernels carry the twist instead of cokernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mock {
    pub twist: Twist,
    pub dual: bool,
}

impl Mock {
    pub const CLOSURE: Mock = Mock { twist: Twist::Closure, dual: false };
    pub const LAZY: Mock = Mock { twist: Twist::Lazy, dual: false };

    pub fn dualized(self) -> Mock {
        Mock { dual: !self.dual, ..self }
    }

    /// Columns spanning the subspace the twisted cokernel of `m` kills.
    fn killed(&self, m: &RatMatrix) -> RatMatrix {
        match self.twist {
            Twist::Closure => {
                if m.rows() == 0 || rank(m) == 0 {
                    m.clone()
                } else {
                    m.hstack(&RatMatrix::identity(m.rows()).col_range(0, 1))
                }
            }
            Twist::Lazy => {
                if m.cols() >= 1 && rank(m) == m.cols() {
                    m.col_range(1, m.cols())
                } else {
                    m.clone()
                }
            }
        }
    }

    fn twisted_cokernel(&self, m: &RatMatrix) -> RatMatrix {
        left_annihilator(&self.killed(m))
    }
}

fn transposed(f: &LinearMap) -> LinearMap {
    LinearMap::new(f.matrix.transpose())
}

impl Category for Mock {
    type Object = Dim;
    type Morphism = LinearMap;

    fn instance_id(&self) -> String {
        let twist = match self.twist {
            Twist::Closure => "closure",
            Twist::Lazy => "lazy",
        };
        if self.dual {
            format!("mock-{twist}-dual")
        } else {
            format!("mock-{twist}")
        }
    }

    fn source(&self, f: &LinearMap) -> Dim {
        f.source
    }

    fn target(&self, f: &LinearMap) -> Dim {
        f.target
    }

    fn validate_object(&self, a: &Dim) -> Result<(), CategoryError> {
        VectQ.validate_object(a)
    }

    fn validate_morphism(&self, f: &LinearMap) -> Result<(), CategoryError> {
        VectQ.validate_morphism(f)
    }

    fn zero_object(&self) -> Dim {
        Dim(0)
    }

    fn identity(&self, a: &Dim) -> LinearMap {
        VectQ.identity(a)
    }

    fn zero_morphism(&self, a: &Dim, b: &Dim) -> LinearMap {
        VectQ.zero_morphism(a, b)
    }

    fn compose_unchecked(&self, f: &LinearMap, g: &LinearMap) -> LinearMap {
        VectQ.compose_unchecked(f, g)
    }

    fn add_unchecked(&self, f: &LinearMap, g: &LinearMap) -> LinearMap {
        VectQ.add_unchecked(f, g)
    }

    fn negate(&self, f: &LinearMap) -> LinearMap {
        VectQ.negate(f)
    }

    fn equal_unchecked(&self, f: &LinearMap, g: &LinearMap) -> bool {
        VectQ.equal_unchecked(f, g)
    }

    fn biproduct(&self, a: &Dim, b: &Dim) -> Biproduct<Dim, LinearMap> {
        VectQ.biproduct(a, b)
    }

    fn kernel(&self, f: &LinearMap) -> KernelResult<Dim, LinearMap> {
        if self.dual {
            let q = self.twisted_cokernel(&f.matrix.transpose()).transpose();
            KernelResult { object: Dim(q.cols()), arrow: LinearMap::new(q) }
        } else {
            VectQ.kernel(f)
        }
    }

    fn cokernel(&self, f: &LinearMap) -> CokernelResult<Dim, LinearMap> {
        if self.dual {
            let k = VectQ.kernel(&transposed(f)).arrow;
            CokernelResult { object: k.source, arrow: transposed(&k) }
        } else {
            let q = self.twisted_cokernel(&f.matrix);
            CokernelResult { object: Dim(q.rows()), arrow: LinearMap::new(q) }
        }
    }

    fn lift(&self, h: &LinearMap, k: &LinearMap) -> Option<Solutions<LinearMap>> {
        VectQ.lift(h, k)
    }

    fn extend(&self, h: &LinearMap, k: &LinearMap) -> Option<Solutions<LinearMap>> {
        VectQ.extend(h, k)
    }
}

fn injective(m: &RatMatrix) -> bool {
    rank(m) == m.cols()
}

fn surjective(m: &RatMatrix) -> bool {
    rank(m) == m.rows()
}

fn same_span(a: &RatMatrix, b: &RatMatrix) -> bool {
    column_space_contains(a, b) && column_space_contains(b, a)
}

/// The twisted semantics on plain matrices, undualized.
struct Rules(Twist);

impl Rules {
    /// Columns spanning what the twisted cokernel of `m` kills.
    fn killed(&self, m: &RatMatrix) -> RatMatrix {
        match self.0 {
            Twist::Closure if rank(m) > 0 => {
                let mut e1 = RatMatrix::zeros(m.rows(), 1);
                e1.set(0, 0, num_rational::BigRational::from_integer(1.into()));
                m.hstack(&e1)
            }
            Twist::Lazy if m.cols() >= 1 && injective(m) => m.col_range(1, m.cols()),
            _ => m.clone(),
        }
    }

    fn closed_kernel(&self, c: &RatMatrix) -> bool {
        let k = nullspace_basis(c);
        same_span(&self.killed(&k), &k)
    }

    fn mono(&self, m: &RatMatrix) -> bool {
        injective(m)
    }

    fn epi(&self, m: &RatMatrix) -> bool {
        rank(&self.killed(m)) == m.rows()
    }

    /// Isomorphic over its target to the kernel of its own cokernel.
    fn kernel(&self, k: &RatMatrix) -> bool {
        injective(k) && same_span(&self.killed(k), k)
    }

    /// Isomorphic under its source to the cokernel of its own kernel.
    fn cokernel(&self, c: &RatMatrix) -> bool {
        surjective(c) && self.closed_kernel(c)
    }

    fn kernel_of(&self, k: &RatMatrix, f: &RatMatrix) -> bool {
        f.matmul(k).is_zero() && injective(k) && k.cols() + rank(f) == f.cols()
    }

    fn cokernel_of(&self, c: &RatMatrix, f: &RatMatrix) -> bool {
        let killed = self.killed(f);
        c.matmul(&killed).is_zero() && surjective(c) && c.rows() + rank(&killed) == c.cols()
    }

    fn pullback(&self, f: &RatMatrix, g: &RatMatrix, f_prime: &RatMatrix, g_prime: &RatMatrix) -> bool {
        let diff = f.hstack(&-g);
        let legs = g_prime.vstack(f_prime);
        diff.matmul(&legs).is_zero() && self.kernel_of(&legs, &diff)
    }

    fn pushout(&self, f: &RatMatrix, g: &RatMatrix, f_prime: &RatMatrix, g_prime: &RatMatrix) -> bool {
        let diff = f.vstack(&-g);
        let legs = g_prime.hstack(f_prime);
        self.cokernel_of(&legs, &diff)
    }
}

fn shaped(f: &LinearMap) -> bool {
    f.matrix.shape() == (f.target.0, f.source.0)
}

impl Oracle for Mock {
    type Arrow = LinearMap;

    fn re_compose(&self, f: &LinearMap, g: &LinearMap) -> Option<LinearMap> {
        (g.target == f.source).then(|| LinearMap { source: g.source, target: f.target, matrix: f.matrix.matmul(&g.matrix) })
    }

    fn re_equal(&self, f: &LinearMap, g: &LinearMap) -> bool {
        f.source == g.source && f.target == g.target && f.matrix == g.matrix
    }

    fn re_valid(&self, f: &LinearMap) -> bool {
        shaped(f)
    }

    fn re_is_mono(&self, f: &LinearMap) -> bool {
        let r = Rules(self.twist);
        if self.dual {
            r.epi(&f.matrix.transpose())
        } else {
            r.mono(&f.matrix)
        }
    }

    fn re_is_epi(&self, f: &LinearMap) -> bool {
        let r = Rules(self.twist);
        if self.dual {
            r.mono(&f.matrix.transpose())
        } else {
            r.epi(&f.matrix)
        }
    }

    fn re_is_iso(&self, f: &LinearMap) -> bool {
        injective(&f.matrix) && surjective(&f.matrix)
    }

    fn re_is_kernel(&self, f: &LinearMap) -> bool {
        let r = Rules(self.twist);
        if self.dual {
            r.cokernel(&f.matrix.transpose())
        } else {
            r.kernel(&f.matrix)
        }
    }

    fn re_is_cokernel(&self, f: &LinearMap) -> bool {
        let r = Rules(self.twist);
        if self.dual {
            r.kernel(&f.matrix.transpose())
        } else {
            r.cokernel(&f.matrix)
        }
    }

    fn re_is_kernel_of(&self, k: &LinearMap, f: &LinearMap) -> bool {
        let r = Rules(self.twist);
        k.target == f.source
            && if self.dual {
                r.cokernel_of(&k.matrix.transpose(), &f.matrix.transpose())
            } else {
                r.kernel_of(&k.matrix, &f.matrix)
            }
    }

    fn re_is_cokernel_of(&self, c: &LinearMap, f: &LinearMap) -> bool {
        let r = Rules(self.twist);
        c.source == f.target
            && if self.dual {
                r.kernel_of(&c.matrix.transpose(), &f.matrix.transpose())
            } else {
                r.cokernel_of(&c.matrix, &f.matrix)
            }
    }

    fn re_is_pullback(&self, f: &LinearMap, g: &LinearMap, f_prime: &LinearMap, g_prime: &LinearMap) -> bool {
        if f.target != g.target || g_prime.target != f.source || f_prime.target != g.source || f_prime.source != g_prime.source {
            return false;
        }
        let r = Rules(self.twist);
        if self.dual {
            let t = |m: &LinearMap| m.matrix.transpose();
            r.pushout(&t(f), &t(g), &t(f_prime), &t(g_prime))
        } else {
            r.pullback(&f.matrix, &g.matrix, &f_prime.matrix, &g_prime.matrix)
        }
    }

    fn re_is_pushout(&self, f: &LinearMap, g: &LinearMap, f_prime: &LinearMap, g_prime: &LinearMap) -> bool {
        if f.source != g.source || g_prime.source != f.target || f_prime.source != g.target || f_prime.target != g_prime.target {
            return false;
        }
        let r = Rules(self.twist);
        if self.dual {
            let t = |m: &LinearMap| m.matrix.transpose();
            r.pullback(&t(f), &t(g), &t(f_prime), &t(g_prime))
        } else {
            r.pushout(&f.matrix, &g.matrix, &f_prime.matrix, &g_prime.matrix)
        }
    }

    fn re_lifts(&self, h: &LinearMap, k: &LinearMap) -> bool {
        h.target == k.target && column_space_contains(&k.matrix, &h.matrix)
    }

    fn re_has_retraction(&self, f: &LinearMap) -> bool {
        injective(&f.matrix)
    }
}
