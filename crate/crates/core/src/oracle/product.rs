use super::Oracle;
use crate::instances::product::{Both, Product};

impl<A: Oracle, B: Oracle> Oracle for Product<A, B> {
    type Arrow = Both<A::Arrow, B::Arrow>;

    fn re_compose(&self, f: &Self::Arrow, g: &Self::Arrow) -> Option<Self::Arrow> {
        Some(Both::new(self.0.re_compose(&f.first, &g.first)?, self.1.re_compose(&f.second, &g.second)?))
    }

    fn re_equal(&self, f: &Self::Arrow, g: &Self::Arrow) -> bool {
        self.0.re_equal(&f.first, &g.first) && self.1.re_equal(&f.second, &g.second)
    }

    fn re_valid(&self, f: &Self::Arrow) -> bool {
        self.0.re_valid(&f.first) && self.1.re_valid(&f.second)
    }

    fn re_is_mono(&self, f: &Self::Arrow) -> bool {
        self.0.re_is_mono(&f.first) && self.1.re_is_mono(&f.second)
    }

    fn re_is_epi(&self, f: &Self::Arrow) -> bool {
        self.0.re_is_epi(&f.first) && self.1.re_is_epi(&f.second)
    }

    fn re_is_iso(&self, f: &Self::Arrow) -> bool {
        self.0.re_is_iso(&f.first) && self.1.re_is_iso(&f.second)
    }

    fn re_is_kernel(&self, f: &Self::Arrow) -> bool {
        self.0.re_is_kernel(&f.first) && self.1.re_is_kernel(&f.second)
    }

    fn re_is_cokernel(&self, f: &Self::Arrow) -> bool {
        self.0.re_is_cokernel(&f.first) && self.1.re_is_cokernel(&f.second)
    }

    fn re_is_kernel_of(&self, k: &Self::Arrow, f: &Self::Arrow) -> bool {
        self.0.re_is_kernel_of(&k.first, &f.first) && self.1.re_is_kernel_of(&k.second, &f.second)
    }

    fn re_is_cokernel_of(&self, c: &Self::Arrow, f: &Self::Arrow) -> bool {
        self.0.re_is_cokernel_of(&c.first, &f.first) && self.1.re_is_cokernel_of(&c.second, &f.second)
    }

    fn re_is_pullback(&self, f: &Self::Arrow, g: &Self::Arrow, f_prime: &Self::Arrow, g_prime: &Self::Arrow) -> bool {
        self.0.re_is_pullback(&f.first, &g.first, &f_prime.first, &g_prime.first)
            && self.1.re_is_pullback(&f.second, &g.second, &f_prime.second, &g_prime.second)
    }

    fn re_is_pushout(&self, f: &Self::Arrow, g: &Self::Arrow, f_prime: &Self::Arrow, g_prime: &Self::Arrow) -> bool {
        self.0.re_is_pushout(&f.first, &g.first, &f_prime.first, &g_prime.first)
            && self.1.re_is_pushout(&f.second, &g.second, &f_prime.second, &g_prime.second)
    }

    fn re_lifts(&self, h: &Self::Arrow, k: &Self::Arrow) -> bool {
        self.0.re_lifts(&h.first, &k.first) && self.1.re_lifts(&h.second, &k.second)
    }

    fn re_has_retraction(&self, f: &Self::Arrow) -> bool {
        self.0.re_has_retraction(&f.first) && self.1.re_has_retraction(&f.second)
    }
}
