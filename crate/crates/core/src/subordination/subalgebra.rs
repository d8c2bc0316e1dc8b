use serde::Serialize;

use super::morphism::is_morphism;
use super::{MorphismKind, SubordinationAlgebra};
use crate::algebra::{Elem, ElementSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraVerdict {
    pub kind: MorphismKind,
    /// `a ∈ A, a ≺ b ⇒ ∃c ∈ A: a ≺ c ≤ b`; least failing `(a, b)` if any.
    pub white_witness: Option<(Elem, Elem)>,
    /// `a ∈ A, b ≺ a ⇒ ∃c ∈ A: b ≤ c ≺ a`; least failing `(a, b)` if any.
    pub black_witness: Option<(Elem, Elem)>,
    pub holds: bool,
    /// The inclusion is a morphism of the kind exactly when `holds`.
    pub inclusion_agrees: bool,
}

pub fn is_subalgebra(s: &SubordinationAlgebra, sub: &ElementSet, kind: MorphismKind) -> Result<SubalgebraVerdict> {
    let alg = s.algebra();
    if sub.algebra() != alg || !sub.is_boolean_subalgebra() {
        return Err(Error::NotBooleanSubalgebra);
    }
    let members = sub.members();
    let white_witness = if kind.needs_white() {
        members.iter().find_map(|&a| {
            alg.elements()
                .find(|&b| s.prec(a, b) && !members.iter().any(|&c| s.prec(a, c) && alg.leq(c, b)))
                .map(|b| (a, b))
        })
    } else {
        None
    };
    let black_witness = if kind.needs_black() {
        members.iter().find_map(|&a| {
            alg.elements()
                .find(|&b| s.prec(b, a) && !members.iter().any(|&c| alg.leq(b, c) && s.prec(c, a)))
                .map(|b| (a, b))
        })
    } else {
        None
    };
    let holds = white_witness.is_none() && black_witness.is_none();
    let (small, inclusion) = s.restrict(sub)?;
    let inclusion_agrees = is_morphism(&inclusion, &small, s, kind) == holds;
    Ok(SubalgebraVerdict { kind, white_witness, black_witness, holds, inclusion_agrees })
}
