//! The additive-category interface and the constructions derived from it.
//!
//! A concrete category supplies the additive structure with kernels and
//! cokernels, plus exact solvers for factorization problems
//! ([`Category::lift`], [`Category::extend`]). Derived constructions such as
//! pullbacks or parallel morphisms live in [`Engine`] and go only through this
//! interface.

mod engine;
mod error;
mod opposite;

use std::fmt::Debug;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub use engine::{Engine, Factorization, UniversalViolation};
pub use error::CategoryError;
pub use opposite::Opposite;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelResult<O, M> {
    pub object: O,
    pub arrow: M,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CokernelResult<O, M> {
    pub object: O,
    pub arrow: M,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Biproduct<O, M> {
    pub object: O,
    pub injections: [M; 2],
    pub projections: [M; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareKind {
    Pullback,
    Pushout,
}

/// A pullback or pushout square built from the pair `(f, g)`.
///
/// Pullback of `f: X -> Z`, `g: Y -> Z`: corner `P`, `g_prime: P -> X`,
/// `f_prime: P -> Y`, with `f ∘ g_prime = g ∘ f_prime`.
///
/// Pushout of `f: X -> Y`, `g: X -> Z`: corner `Q`, `g_prime: Y -> Q`,
/// `f_prime: Z -> Q`, with `g_prime ∘ f = f_prime ∘ g`.
///
/// In both cases `f_prime` is the leg opposite `f`, the one a stability
/// property asks about.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SquareWitness<O, M> {
    pub kind: SquareKind,
    pub corner: O,
    pub f: M,
    pub g: M,
    pub f_prime: M,
    pub g_prime: M,
}

/// Solutions of a linear factorization problem: one particular solution and
/// generators of the solutions of the homogeneous problem.
#[derive(Clone, Debug)]
pub struct Solutions<M> {
    pub particular: M,
    pub homogeneous: Vec<M>,
}

pub trait Category: Send + Sync {
    type Object: Clone + Debug + PartialEq + Send + Sync + Serialize + DeserializeOwned;
    type Morphism: Clone + Debug + Send + Sync + Serialize + DeserializeOwned;

    fn instance_id(&self) -> String;

    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;

    fn validate_object(&self, a: &Self::Object) -> Result<(), CategoryError>;
    fn validate_morphism(&self, f: &Self::Morphism) -> Result<(), CategoryError>;

    /// The designated zero object.
    fn zero_object(&self) -> Self::Object;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;
    fn zero_morphism(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism;

    /// `f ∘ g`. Callers guarantee `target(g) == source(f)`.
    fn compose_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    /// `f + g`. Callers guarantee equal endpoints.
    fn add_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    fn negate(&self, f: &Self::Morphism) -> Self::Morphism;
    /// Equality of parallel morphisms.
    fn equal_unchecked(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool;

    fn biproduct(&self, a: &Self::Object, b: &Self::Object) -> Biproduct<Self::Object, Self::Morphism>;
    fn kernel(&self, f: &Self::Morphism) -> KernelResult<Self::Object, Self::Morphism>;
    fn cokernel(&self, f: &Self::Morphism) -> CokernelResult<Self::Object, Self::Morphism>;

    /// All `u` with `k ∘ u = h` (`h: X -> B`, `k: A -> B`, `u: X -> A`).
    fn lift(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Solutions<Self::Morphism>>;
    /// All `u` with `u ∘ k = h` (`h: A -> Y`, `k: A -> B`, `u: B -> Y`).
    fn extend(&self, h: &Self::Morphism, k: &Self::Morphism) -> Option<Solutions<Self::Morphism>>;
}
