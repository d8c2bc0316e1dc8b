use serde::{Deserialize, Serialize};

use super::SubordinationAlgebra;
use crate::algebra::{BooleanLaw, BooleanMorphism, Elem};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Weak,
    White,
    Black,
    Strong,
}

impl MorphismKind {
    pub const ALL: [MorphismKind; 4] = [MorphismKind::Weak, MorphismKind::White, MorphismKind::Black, MorphismKind::Strong];

    pub fn needs_white(self) -> bool {
        matches!(self, MorphismKind::White | MorphismKind::Strong)
    }

    pub fn needs_black(self) -> bool {
        matches!(self, MorphismKind::Black | MorphismKind::Strong)
    }

    pub fn name(self) -> &'static str {
        match self {
            MorphismKind::Weak => "weak",
            MorphismKind::White => "white",
            MorphismKind::Black => "black",
            MorphismKind::Strong => "strong",
        }
    }

    pub fn axioms(self) -> Vec<MorphismAxiom> {
        let mut out = vec![MorphismAxiom::W];
        if self.needs_white() {
            out.push(MorphismAxiom::Diamond);
        }
        if self.needs_black() {
            out.push(MorphismAxiom::BlackDiamond);
        }
        out
    }
}

impl std::fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MorphismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MorphismKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::IllFormed(format!("unknown morphism kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorphismAxiom {
    /// `a ≺ b ⇒ f(a) ≺ f(b)`.
    W,
    /// `f(a) ≺ c ⇒ ∃b: a ≺ b, f(b) ≤ c`.
    Diamond,
    /// `c ≺ f(a) ⇒ ∃b: b ≺ a, c ≤ f(b)`.
    BlackDiamond,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub kind: MorphismKind,
    pub boolean_violation: Option<BooleanLaw>,
    /// Each demanded axiom with its least witness `(a, b)` or `(a, c)` if it fails.
    pub checks: Vec<(MorphismAxiom, Option<(Elem, Elem)>)>,
    /// When both ends are operator-induced: whether (w) agrees with
    /// `◇f(a) ≤ f(◇a)` for all `a`.
    pub operator_crosscheck: Option<bool>,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.boolean_violation.is_none() && self.checks.iter().all(|(_, w)| w.is_none())
    }

    pub fn axiom_holds(&self, axiom: MorphismAxiom) -> Option<bool> {
        self.checks.iter().find(|(a, _)| *a == axiom).map(|(_, w)| w.is_none())
    }

    pub fn first_failure(&self) -> Option<(MorphismAxiom, (Elem, Elem))> {
        self.checks.iter().find_map(|&(a, w)| w.map(|w| (a, w)))
    }
}

pub fn check_morphism(
    f: &BooleanMorphism,
    source: &SubordinationAlgebra,
    target: &SubordinationAlgebra,
    kind: MorphismKind,
) -> Result<MorphismReport> {
    if f.source() != source.algebra() || f.target() != target.algebra() {
        return Err(Error::Hypothesis("morphism does not connect the given algebras".into()));
    }
    let boolean_violation = f.first_violation();
    let checks = kind.axioms().into_iter().map(|ax| (ax, axiom_violation(f, source, target, ax))).collect();
    let operator_crosscheck = (source.is_operator_induced() && target.is_operator_induced()).then(|| {
        let w = axiom_violation(f, source, target, MorphismAxiom::W).is_none();
        let op = source
            .algebra()
            .elements()
            .all(|a| target.algebra().leq(target.diamond(f.apply(a)), f.apply(source.diamond(a))));
        w == op
    });
    Ok(MorphismReport { kind, boolean_violation, checks, operator_crosscheck })
}

pub(crate) fn axiom_violation(
    f: &BooleanMorphism,
    s: &SubordinationAlgebra,
    t: &SubordinationAlgebra,
    axiom: MorphismAxiom,
) -> Option<(Elem, Elem)> {
    let (sa, ta) = (s.algebra(), t.algebra());
    match axiom {
        MorphismAxiom::W => s.pairs().find(|&(a, b)| !t.prec(f.apply(a), f.apply(b))),
        MorphismAxiom::Diamond => sa.elements().find_map(|a| {
            ta.elements()
                .find(|&c| {
                    t.prec(f.apply(a), c) && !sa.elements().any(|b| s.prec(a, b) && ta.leq(f.apply(b), c))
                })
                .map(|c| (a, c))
        }),
        MorphismAxiom::BlackDiamond => sa.elements().find_map(|a| {
            ta.elements()
                .find(|&c| {
                    t.prec(c, f.apply(a)) && !sa.elements().any(|b| s.prec(b, a) && ta.leq(c, f.apply(b)))
                })
                .map(|c| (a, c))
        }),
    }
}

pub(crate) fn is_morphism(f: &BooleanMorphism, s: &SubordinationAlgebra, t: &SubordinationAlgebra, kind: MorphismKind) -> bool {
    f.is_boolean() && kind.axioms().into_iter().all(|ax| axiom_violation(f, s, t, ax).is_none())
}

/// A bijective Boolean map that reflects as well as preserves `≺`.
pub fn is_isomorphism(f: &BooleanMorphism, s: &SubordinationAlgebra, t: &SubordinationAlgebra) -> bool {
    f.source() == s.algebra()
        && f.target() == t.algebra()
        && f.is_injective()
        && f.is_surjective()
        && f.is_boolean()
        && s.algebra()
            .elements()
            .all(|a| s.algebra().elements().all(|b| s.prec(a, b) == t.prec(f.apply(a), f.apply(b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BooleanAlgebra;
    use crate::subordination::Colour;

    #[test]
    fn identity_is_strong() {
        let b = BooleanAlgebra::new(2).unwrap();
        let s = SubordinationAlgebra::from_operator(b, &[0, 2, 1, 3], Colour::White).unwrap();
        let r = check_morphism(&BooleanMorphism::identity(b), &s, &s, MorphismKind::Strong).unwrap();
        assert!(r.holds());
        assert_eq!(r.operator_crosscheck, Some(true));
    }

    #[test]
    fn white_non_black_inclusion() {
        // Frame 0 → 1 → 1 (◇E = R(−,E)); {0} ↪ {0,1} on the dual side is the
        // Boolean map P(2) → P(1), E ↦ E ∩ {0}.
        let big = BooleanAlgebra::new(2).unwrap();
        let small = BooleanAlgebra::new(1).unwrap();
        // ◇{0} = ∅, ◇{1} = {0,1}.
        let s = SubordinationAlgebra::from_operator(big, &[0, 0, 3, 3], Colour::White).unwrap();
        let t = SubordinationAlgebra::from_operator(small, &[0, 0], Colour::White).unwrap();
        let f = BooleanMorphism::new(big, small, vec![0, 1, 0, 1]).unwrap();
        let r = check_morphism(&f, &s, &t, MorphismKind::Strong).unwrap();
        assert_eq!(r.axiom_holds(MorphismAxiom::W), Some(true));
        assert_eq!(r.axiom_holds(MorphismAxiom::Diamond), Some(false));
        assert_eq!(r.axiom_holds(MorphismAxiom::BlackDiamond), Some(true));
        assert_eq!(r.operator_crosscheck, Some(true));
    }

    #[test]
    fn crosscheck_agrees_on_all_maps_between_small_modal_algebras() {
        let b1 = BooleanAlgebra::new(1).unwrap();
        let b2 = BooleanAlgebra::new(2).unwrap();
        let ops1 = [vec![0, 0], vec![0, 1]];
        let s1: Vec<_> = ops1.iter().map(|op| SubordinationAlgebra::from_operator(b1, op, Colour::White).unwrap()).collect();
        for d1 in b2.elements() {
            for d2 in b2.elements() {
                let op: Vec<Elem> = b2.elements().map(|e| (if e & 1 == 1 { d1 } else { 0 }) | (if e & 2 == 2 { d2 } else { 0 })).collect();
                let s2 = SubordinationAlgebra::from_operator(b2, &op, Colour::White).unwrap();
                for t in &s1 {
                    for f in BooleanMorphism::all_between(b2, b1) {
                        let r = check_morphism(&f, &s2, t, MorphismKind::Weak).unwrap();
                        assert_eq!(r.operator_crosscheck, Some(true));
                    }
                    for f in BooleanMorphism::all_between(b1, b2) {
                        let r = check_morphism(&f, t, &s2, MorphismKind::Weak).unwrap();
                        assert_eq!(r.operator_crosscheck, Some(true));
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let b = BooleanAlgebra::new(2).unwrap();
        let s = SubordinationAlgebra::order(b);
        let t = SubordinationAlgebra::order(BooleanAlgebra::new(1).unwrap());
        assert!(check_morphism(&BooleanMorphism::identity(b), &s, &t, MorphismKind::Weak).is_err());
    }
}
