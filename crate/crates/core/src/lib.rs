//! Subordination algebras (non-symmetric contact algebras) on finite
//! powerset algebras, their Kripke duals, canonical extensions, congruences,
//! bimodal validity and first-order correspondence.
//!
//! The infinite arena used for counterexamples, the one-point
//! compactification of the naturals, lives in [`omega`] with an exact
//! symbolic representation of its subsets.

pub mod algebra;
pub mod correspondence;
pub mod duality;
pub mod error;
pub mod frame;
pub mod generate;
pub mod logic;
pub mod omega;
pub mod relation;
pub mod subordination;
pub mod wire;

pub use algebra::{BooleanAlgebra, BooleanMorphism, Elem, ElementSet, SetTag};
pub use error::{Error, Result};
pub use frame::{FrameMorphism, KripkeFrame};
pub use subordination::{MorphismKind, SubordinationAlgebra};
