use super::Oracle;
use crate::instances::vectq::{LinearMap, VectQ};
use crate::linalg::{column_space_contains, rank, RatMatrix};

fn injective(m: &RatMatrix) -> bool {
    rank(m) == m.cols()
}

fn surjective(m: &RatMatrix) -> bool {
    rank(m) == m.rows()
}

fn shaped(f: &LinearMap) -> bool {
    f.matrix.shape() == (f.target.0, f.source.0)
}

impl Oracle for VectQ {
    type Arrow = LinearMap;

    fn re_compose(&self, f: &LinearMap, g: &LinearMap) -> Option<LinearMap> {
        (g.target == f.source).then(|| LinearMap {
            source: g.source,
            target: f.target,
            matrix: f.matrix.matmul(&g.matrix),
        })
    }

    fn re_equal(&self, f: &LinearMap, g: &LinearMap) -> bool {
        f.source == g.source && f.target == g.target && f.matrix == g.matrix
    }

    fn re_valid(&self, f: &LinearMap) -> bool {
        shaped(f)
    }

    fn re_is_mono(&self, f: &LinearMap) -> bool {
        injective(&f.matrix)
    }

    fn re_is_epi(&self, f: &LinearMap) -> bool {
        surjective(&f.matrix)
    }

    fn re_is_iso(&self, f: &LinearMap) -> bool {
        injective(&f.matrix) && surjective(&f.matrix)
    }

    fn re_is_kernel(&self, f: &LinearMap) -> bool {
        injective(&f.matrix)
    }

    fn re_is_cokernel(&self, f: &LinearMap) -> bool {
        surjective(&f.matrix)
    }

    fn re_is_kernel_of(&self, k: &LinearMap, f: &LinearMap) -> bool {
        k.target == f.source
            && f.matrix.matmul(&k.matrix).is_zero()
            && injective(&k.matrix)
            && k.source.0 + rank(&f.matrix) == f.source.0
    }

    fn re_is_cokernel_of(&self, c: &LinearMap, f: &LinearMap) -> bool {
        c.source == f.target
            && c.matrix.matmul(&f.matrix).is_zero()
            && surjective(&c.matrix)
            && c.target.0 + rank(&f.matrix) == f.target.0
    }

    fn re_is_pullback(&self, f: &LinearMap, g: &LinearMap, f_prime: &LinearMap, g_prime: &LinearMap) -> bool {
        if f.target != g.target || g_prime.target != f.source || f_prime.target != g.source || f_prime.source != g_prime.source {
            return false;
        }
        if f.matrix.matmul(&g_prime.matrix) != g.matrix.matmul(&f_prime.matrix) {
            return false;
        }
        let legs = g_prime.matrix.vstack(&f_prime.matrix);
        let diff = f.matrix.hstack(&-&g.matrix);
        injective(&legs) && legs.cols() + rank(&diff) == diff.cols()
    }

    fn re_is_pushout(&self, f: &LinearMap, g: &LinearMap, f_prime: &LinearMap, g_prime: &LinearMap) -> bool {
        if f.source != g.source || g_prime.source != f.target || f_prime.source != g.target || f_prime.target != g_prime.target {
            return false;
        }
        if g_prime.matrix.matmul(&f.matrix) != f_prime.matrix.matmul(&g.matrix) {
            return false;
        }
        let legs = g_prime.matrix.hstack(&f_prime.matrix);
        let diff = f.matrix.vstack(&-&g.matrix);
        surjective(&legs) && legs.rows() + rank(&diff) == diff.rows()
    }

    fn re_lifts(&self, h: &LinearMap, k: &LinearMap) -> bool {
        h.target == k.target && column_space_contains(&k.matrix, &h.matrix)
    }

    fn re_has_retraction(&self, f: &LinearMap) -> bool {
        injective(&f.matrix)
    }
}
