use super::Oracle;
use crate::instances::pairvect::{PairMap, PairObj, PairVect};
use crate::linalg::{column_space_contains, intersection_dim, rank, RatMatrix};

/// A subspace given by spanning columns, not necessarily independent.
struct Sub {
    ambient: usize,
    span: RatMatrix,
}

impl Sub {
    fn of(p: &PairObj) -> Self {
        Sub { ambient: p.dim, span: p.subspace.transpose() }
    }

    fn dim(&self) -> usize {
        rank(&self.span)
    }

    fn direct_sum(&self, other: &Sub) -> Sub {
        Sub { ambient: self.ambient + other.ambient, span: self.span.block_diag(&other.span) }
    }
}

/// A pair-space arrow in raw form.
struct Raw<'a> {
    m: &'a RatMatrix,
    src: Sub,
    tgt: Sub,
}

impl Raw<'_> {
    fn carries(&self) -> bool {
        self.m.shape() == (self.tgt.ambient, self.src.ambient)
            && column_space_contains(&self.tgt.span, &self.m.matmul(&self.src.span))
    }

    fn injective(&self) -> bool {
        rank(self.m) == self.m.cols()
    }

    fn surjective(&self) -> bool {
        rank(self.m) == self.m.rows()
    }

    /// The source subspace is all of `m⁻¹(target subspace)`.
    fn full_preimage(&self) -> bool {
        intersection_dim(self.m, &self.tgt.span) == self.src.dim()
    }

    /// The source subspace maps onto the target subspace.
    fn onto_subspace(&self) -> bool {
        rank(&self.m.matmul(&self.src.span)) == self.tgt.dim()
    }

    fn kernel_of(&self, f: &Raw) -> bool {
        self.carries()
            && self.m.rows() == f.m.cols()
            && f.m.matmul(self.m).is_zero()
            && self.injective()
            && self.m.cols() + rank(f.m) == f.m.cols()
            && self.full_preimage()
    }

    fn cokernel_of(&self, f: &Raw) -> bool {
        self.carries()
            && self.m.cols() == f.m.rows()
            && self.m.matmul(f.m).is_zero()
            && self.surjective()
            && self.m.rows() + rank(f.m) == f.m.rows()
            && self.onto_subspace()
    }
}

fn raw(f: &PairMap) -> Raw<'_> {
    Raw { m: &f.matrix, src: Sub::of(&f.source), tgt: Sub::of(&f.target) }
}

impl Oracle for PairVect {
    type Arrow = PairMap;

    fn re_compose(&self, f: &PairMap, g: &PairMap) -> Option<PairMap> {
        (g.target == f.source).then(|| PairMap {
            source: g.source.clone(),
            target: f.target.clone(),
            matrix: f.matrix.matmul(&g.matrix),
        })
    }

    fn re_equal(&self, f: &PairMap, g: &PairMap) -> bool {
        f.source == g.source && f.target == g.target && f.matrix == g.matrix
    }

    fn re_valid(&self, f: &PairMap) -> bool {
        raw(f).carries()
    }

    fn re_is_mono(&self, f: &PairMap) -> bool {
        raw(f).injective()
    }

    fn re_is_epi(&self, f: &PairMap) -> bool {
        raw(f).surjective()
    }

    fn re_is_iso(&self, f: &PairMap) -> bool {
        let r = raw(f);
        r.injective() && r.surjective() && r.onto_subspace()
    }

    fn re_is_kernel(&self, f: &PairMap) -> bool {
        let r = raw(f);
        r.injective() && r.full_preimage()
    }

    fn re_is_cokernel(&self, f: &PairMap) -> bool {
        let r = raw(f);
        r.surjective() && r.onto_subspace()
    }

    fn re_is_kernel_of(&self, k: &PairMap, f: &PairMap) -> bool {
        k.target == f.source && raw(k).kernel_of(&raw(f))
    }

    fn re_is_cokernel_of(&self, c: &PairMap, f: &PairMap) -> bool {
        c.source == f.target && raw(c).cokernel_of(&raw(f))
    }

    fn re_is_pullback(&self, f: &PairMap, g: &PairMap, f_prime: &PairMap, g_prime: &PairMap) -> bool {
        if f.target != g.target || g_prime.target != f.source || f_prime.target != g.source || f_prime.source != g_prime.source {
            return false;
        }
        let sum = Sub::of(&f.source).direct_sum(&Sub::of(&g.source));
        let legs_m = g_prime.matrix.vstack(&f_prime.matrix);
        let diff_m = f.matrix.hstack(&-&g.matrix);
        let legs = Raw { m: &legs_m, src: Sub::of(&g_prime.source), tgt: sum };
        let diff = Raw {
            m: &diff_m,
            src: Sub::of(&f.source).direct_sum(&Sub::of(&g.source)),
            tgt: Sub::of(&f.target),
        };
        legs.kernel_of(&diff)
    }

    fn re_is_pushout(&self, f: &PairMap, g: &PairMap, f_prime: &PairMap, g_prime: &PairMap) -> bool {
        if f.source != g.source || g_prime.source != f.target || f_prime.source != g.target || f_prime.target != g_prime.target {
            return false;
        }
        let legs_m = g_prime.matrix.hstack(&f_prime.matrix);
        let diff_m = f.matrix.vstack(&-&g.matrix);
        let legs = Raw {
            m: &legs_m,
            src: Sub::of(&f.target).direct_sum(&Sub::of(&g.target)),
            tgt: Sub::of(&g_prime.target),
        };
        let diff = Raw {
            m: &diff_m,
            src: Sub::of(&f.source),
            tgt: Sub::of(&f.target).direct_sum(&Sub::of(&g.target)),
        };
        legs.cokernel_of(&diff)
    }

    /// `k u = h` is solvable by a compatible `u` exactly when `h` lands in the
    /// image of `k` and `h(U)` lands in `k(U_k)`.
    fn re_lifts(&self, h: &PairMap, k: &PairMap) -> bool {
        if h.target != k.target {
            return false;
        }
        let hu = h.matrix.matmul(&Sub::of(&h.source).span);
        let ku = k.matrix.matmul(&Sub::of(&k.source).span);
        column_space_contains(&k.matrix, &h.matrix) && column_space_contains(&ku, &hu)
    }

    fn re_has_retraction(&self, f: &PairMap) -> bool {
        let r = raw(f);
        r.injective() && r.full_preimage()
    }
}
