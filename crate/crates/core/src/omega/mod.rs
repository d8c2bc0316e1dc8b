//! The clopen algebra of `ω⁺`, the one-point compactification of the
//! naturals, with relations and equivalences described by finitely many
//! parameters. Every set handled is eventually periodic on `ω`, which keeps
//! the Boolean operations, the images `◇ ◆ □ ■` and saturation exact.

mod equiv;
mod set;
mod space;

pub use equiv::{
    boolean_join, congruence_check, subalgebra_step, ClassId, EquivSpec, SpaceColour, SpaceCongruenceVerdict,
    SubalgebraStep,
};
pub use set::{OmegaPlusSet, OmegaSetJson, Point, MAX_PERIOD};
pub use space::{bounded_clopens, NonprincipalVerdict, RelationSpec, SigmaPi};
