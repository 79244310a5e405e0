use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Oracle;
use crate::instances::fgab::{FgAb, Hom};
use crate::linalg::{integer_nullspace, lattice_contains, IntMatrix};

/// A homomorphism `ℤ^n / src -> ℤ^m / tgt` given by an `m x n` matrix, where
/// `src` and `tgt` are arbitrary relation matrices.
struct Raw {
    m: IntMatrix,
    src: IntMatrix,
    tgt: IntMatrix,
}

fn columns_in(lattice: &IntMatrix, m: &IntMatrix) -> bool {
    (0..m.cols()).all(|j| {
        let col = m.column(j);
        col.iter().all(Zero::is_zero) || lattice_contains(lattice, &col)
    })
}

fn unit(n: usize, j: usize) -> Vec<BigInt> {
    (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

impl Raw {
    fn of(f: &Hom) -> Self {
        Raw { m: f.matrix.clone(), src: f.source.relations(), tgt: f.target.relations() }
    }

    fn shaped(&self) -> bool {
        self.m.shape() == (self.tgt.rows(), self.src.rows())
    }

    fn well_defined(&self) -> bool {
        self.shaped() && columns_in(&self.tgt, &self.m.matmul(&self.src))
    }

    fn is_zero(&self) -> bool {
        columns_in(&self.tgt, &self.m)
    }

    /// Generators of `{x : m x ∈ span(tgt)}`.
    fn preimage_of_zero(&self) -> IntMatrix {
        let n = self.m.cols();
        integer_nullspace(&self.m.hstack(&-&self.tgt)).row_range(0, n)
    }

    fn mono(&self) -> bool {
        columns_in(&self.src, &self.preimage_of_zero())
    }

    fn epi(&self) -> bool {
        let span = self.m.hstack(&self.tgt);
        (0..self.m.rows()).all(|j| lattice_contains(&span, &unit(self.m.rows(), j)))
    }

    fn kernel_of(&self, f: &Raw) -> bool {
        let composite = Raw { m: f.m.matmul(&self.m), src: self.src.clone(), tgt: f.tgt.clone() };
        self.well_defined()
            && self.m.rows() == f.m.cols()
            && composite.is_zero()
            && self.mono()
            && columns_in(&self.m.hstack(&self.tgt), &f.preimage_of_zero())
    }

    fn cokernel_of(&self, f: &Raw) -> bool {
        let composite = Raw { m: self.m.matmul(&f.m), src: f.src.clone(), tgt: self.tgt.clone() };
        self.well_defined()
            && self.m.cols() == f.m.rows()
            && composite.is_zero()
            && self.epi()
            && columns_in(&f.m.hstack(&f.tgt), &self.preimage_of_zero())
    }
}

fn diagonal_entries(rel: &IntMatrix) -> Vec<BigInt> {
    (0..rel.rows()).map(|i| rel.get(i, i).clone()).collect()
}

impl Oracle for FgAb {
    type Arrow = Hom;

    fn re_compose(&self, f: &Hom, g: &Hom) -> Option<Hom> {
        (g.target == f.source).then(|| Hom {
            source: g.source.clone(),
            target: f.target.clone(),
            matrix: f.matrix.matmul(&g.matrix),
        })
    }

    fn re_equal(&self, f: &Hom, g: &Hom) -> bool {
        f.source == g.source
            && f.target == g.target
            && f.matrix.shape() == g.matrix.shape()
            && columns_in(&f.target.relations(), &(&f.matrix - &g.matrix))
    }

    fn re_valid(&self, f: &Hom) -> bool {
        Raw::of(f).well_defined()
    }

    fn re_is_mono(&self, f: &Hom) -> bool {
        Raw::of(f).mono()
    }

    fn re_is_epi(&self, f: &Hom) -> bool {
        Raw::of(f).epi()
    }

    fn re_is_iso(&self, f: &Hom) -> bool {
        let r = Raw::of(f);
        r.mono() && r.epi()
    }

    fn re_is_kernel(&self, f: &Hom) -> bool {
        Raw::of(f).mono()
    }

    fn re_is_cokernel(&self, f: &Hom) -> bool {
        Raw::of(f).epi()
    }

    fn re_is_kernel_of(&self, k: &Hom, f: &Hom) -> bool {
        k.target == f.source && Raw::of(k).kernel_of(&Raw::of(f))
    }

    fn re_is_cokernel_of(&self, c: &Hom, f: &Hom) -> bool {
        c.source == f.target && Raw::of(c).cokernel_of(&Raw::of(f))
    }

    fn re_is_pullback(&self, f: &Hom, g: &Hom, f_prime: &Hom, g_prime: &Hom) -> bool {
        if f.target != g.target || g_prime.target != f.source || f_prime.target != g.source || f_prime.source != g_prime.source {
            return false;
        }
        let sum = f.source.relations().block_diag(&g.source.relations());
        let legs = Raw {
            m: g_prime.matrix.vstack(&f_prime.matrix),
            src: g_prime.source.relations(),
            tgt: sum.clone(),
        };
        let diff = Raw { m: f.matrix.hstack(&-&g.matrix), src: sum, tgt: f.target.relations() };
        legs.kernel_of(&diff)
    }

    fn re_is_pushout(&self, f: &Hom, g: &Hom, f_prime: &Hom, g_prime: &Hom) -> bool {
        if f.source != g.source || g_prime.source != f.target || f_prime.source != g.target || f_prime.target != g_prime.target {
            return false;
        }
        let sum = f.target.relations().block_diag(&g.target.relations());
        let legs = Raw {
            m: g_prime.matrix.hstack(&f_prime.matrix),
            src: sum.clone(),
            tgt: g_prime.target.relations(),
        };
        let diff = Raw { m: f.matrix.vstack(&-&g.matrix), src: f.source.relations(), tgt: sum };
        legs.cokernel_of(&diff)
    }

    /// Generator by generator: the image of `x_i` must be hit by some `a` whose
    /// order divides that of `x_i`.
    fn re_lifts(&self, h: &Hom, k: &Hom) -> bool {
        if h.target != k.target {
            return false;
        }
        let (a, b) = (k.source.generators(), k.target.generators());
        let rel_a = k.source.relations();
        let rel_b = k.target.relations();
        diagonal_entries(&h.source.relations()).iter().enumerate().all(|(i, d)| {
            // [k | R_B | 0 ; d I | 0 | -R_A] (a, w, z) = (h e_i, 0)
            let top = k.matrix.hstack(&rel_b).hstack(&IntMatrix::zeros(b, a));
            let bottom = IntMatrix::identity(a)
                .scale(d)
                .hstack(&IntMatrix::zeros(a, b))
                .hstack(&-&rel_a);
            let mut rhs = h.matrix.column(i);
            rhs.extend(std::iter::repeat_n(BigInt::zero(), a));
            lattice_contains(&top.vstack(&bottom), &rhs)
        })
    }

    /// Row by row: `ρ f ≡ e_j` modulo the `j`-th factor with `ρ` killing the target relations.
    fn re_has_retraction(&self, f: &Hom) -> bool {
        let (a, b) = (f.source.generators(), f.target.generators());
        let rel_b = f.target.relations();
        diagonal_entries(&f.source.relations()).iter().enumerate().all(|(j, d)| {
            // [fᵀ | d I | 0 ; R_B | 0 | -d I] (ρ, w, z) = (e_j, 0)
            let top = f.matrix.transpose().hstack(&IntMatrix::identity(a).scale(d)).hstack(&IntMatrix::zeros(a, b));
            let bottom = rel_b
                .hstack(&IntMatrix::zeros(b, a))
                .hstack(&-&IntMatrix::identity(b).scale(d));
            let mut rhs = unit(a, j);
            rhs.extend(std::iter::repeat_n(BigInt::zero(), b));
            lattice_contains(&top.vstack(&bottom), &rhs)
        })
    }
}
