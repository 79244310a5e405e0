//! Independent re-verification of categorical predicates.
//!
//! Nothing here calls the [`Category`](crate::category::Category) constructions.
//! Each instance restates its predicates directly as rank or lattice conditions
//! on top of [`crate::linalg`], so a certificate produced by the
//! engine is re-checked along a separate code path.

mod fgab;
mod pairvect;
mod product;
mod vectq;

pub trait Oracle: Send + Sync {
    type Arrow: Clone;

    /// `f ∘ g`, or `None` when the endpoints do not match.
    fn re_compose(&self, f: &Self::Arrow, g: &Self::Arrow) -> Option<Self::Arrow>;
    /// Equality of parallel arrows; `false` for non-parallel ones.
    fn re_equal(&self, f: &Self::Arrow, g: &Self::Arrow) -> bool;
    /// The arrow satisfies its instance's validity rule.
    fn re_valid(&self, f: &Self::Arrow) -> bool;

    fn re_is_mono(&self, f: &Self::Arrow) -> bool;
    fn re_is_epi(&self, f: &Self::Arrow) -> bool;
    fn re_is_iso(&self, f: &Self::Arrow) -> bool;

    /// `f` is the kernel of some arrow.
    fn re_is_kernel(&self, f: &Self::Arrow) -> bool;
    /// `f` is the cokernel of some arrow.
    fn re_is_cokernel(&self, f: &Self::Arrow) -> bool;
    fn re_is_kernel_of(&self, k: &Self::Arrow, f: &Self::Arrow) -> bool;
    fn re_is_cokernel_of(&self, c: &Self::Arrow, f: &Self::Arrow) -> bool;

    /// `f: X -> Z`, `g: Y -> Z`, `f_prime: P -> Y`, `g_prime: P -> X` form a pullback.
    fn re_is_pullback(&self, f: &Self::Arrow, g: &Self::Arrow, f_prime: &Self::Arrow, g_prime: &Self::Arrow) -> bool;
    /// `f: X -> Y`, `g: X -> Z`, `f_prime: Z -> Q`, `g_prime: Y -> Q` form a pushout.
    fn re_is_pushout(&self, f: &Self::Arrow, g: &Self::Arrow, f_prime: &Self::Arrow, g_prime: &Self::Arrow) -> bool;

    /// Some `u` with `k ∘ u = h`.
    fn re_lifts(&self, h: &Self::Arrow, k: &Self::Arrow) -> bool;
    /// Some `r` with `r ∘ f = id`.
    fn re_has_retraction(&self, f: &Self::Arrow) -> bool;
}
