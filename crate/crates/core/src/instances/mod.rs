//! Concrete pre-abelian categories.

pub mod fgab;
pub mod pairvect;
pub mod product;
pub mod vectq;

pub use fgab::{AbGroup, FgAb, Hom};
pub use pairvect::{PairMap, PairObj, PairVect};
pub use product::{Both, Product};
pub use vectq::{Dim, LinearMap, VectQ};
