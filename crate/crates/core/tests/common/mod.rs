//! Helpers shared by the integration tests: independent generators and
//! brute-force enumerations that do not go through the library's own
//! constructions.

#![allow(dead_code)]

use subord::algebra::{generated_boolean_subalgebra, BooleanAlgebra, Elem, ElementSet};
use subord::subordination::{is_subalgebra, Colour, CongruenceKind, MorphismKind, SubordinationAlgebra};

/// Restricted growth strings: every partition of `n` labelled items.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            prefix.push(l);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

/// Every Boolean subalgebra of a powerset algebra, one per partition of its atoms.
pub fn boolean_subalgebras(alg: BooleanAlgebra) -> Vec<ElementSet> {
    set_partitions(alg.atom_count())
        .into_iter()
        .map(|labels| {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            let gens: Vec<Elem> = (0..blocks)
                .map(|b| labels.iter().enumerate().filter(|(_, &l)| l == b).fold(0, |acc, (i, _)| acc | 1 << i))
                .collect();
            generated_boolean_subalgebra(alg, &gens).expect("blocks lie in the algebra")
        })
        .collect()
}

pub fn subalgebras_of_kind(s: &SubordinationAlgebra, kind: MorphismKind) -> Vec<ElementSet> {
    boolean_subalgebras(s.algebra())
        .into_iter()
        .filter(|a| is_subalgebra(s, a, kind).expect("Boolean subalgebra").holds)
        .collect()
}

/// Least relation containing `generators` closed under (S1)–(S4), computed
/// by fixpoint iteration on the raw pair table.
pub fn subordination_closure(alg: BooleanAlgebra, generators: &[(Elem, Elem)]) -> SubordinationAlgebra {
    let n = alg.size();
    let mut rel = vec![false; n * n];
    let at = |a: Elem, b: Elem| a as usize * n + b as usize;
    rel[at(0, 0)] = true;
    rel[at(alg.top(), alg.top())] = true;
    for &(a, b) in generators {
        rel[at(a, b)] = true;
    }
    loop {
        let mut changed = false;
        let mut set = |rel: &mut Vec<bool>, a: Elem, b: Elem| {
            if !rel[at(a, b)] {
                rel[at(a, b)] = true;
                changed = true;
            }
        };
        for a in alg.elements() {
            for b in alg.elements() {
                if !rel[at(a, b)] {
                    continue;
                }
                for c in alg.elements() {
                    if rel[at(a, c)] {
                        set(&mut rel, a, b & c);
                    }
                    if rel[at(c, b)] {
                        set(&mut rel, a | c, b);
                    }
                }
                for x in alg.elements().filter(|&x| alg.leq(x, a)) {
                    for y in alg.elements().filter(|&y| alg.leq(b, y)) {
                        set(&mut rel, x, y);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    SubordinationAlgebra::from_fn(alg, |a, b| rel[at(a, b)])
}

/// The congruence and morphism kinds matching a formula colour.
pub fn kinds_for(colour: Colour) -> (CongruenceKind, MorphismKind) {
    match colour {
        Colour::White => (CongruenceKind::White, MorphismKind::White),
        Colour::Black => (CongruenceKind::Black, MorphismKind::Black),
        Colour::Bi => (CongruenceKind::Strong, MorphismKind::Strong),
    }
}

/// Pointwise Kripke semantics written out directly, used as an oracle for
/// the algebraic evaluator.
pub fn forces(
    frame: &subord::KripkeFrame,
    phi: &subord::logic::Formula,
    x: usize,
    v: &dyn Fn(&str, usize) -> bool,
) -> bool {
    use subord::logic::Formula::*;
    let n = frame.len();
    match phi {
        Var(p) => v(p, x),
        Top => true,
        Bot => false,
        Not(a) => !forces(frame, a, x, v),
        And(a, b) => forces(frame, a, x, v) && forces(frame, b, x, v),
        Or(a, b) => forces(frame, a, x, v) || forces(frame, b, x, v),
        Implies(a, b) => !forces(frame, a, x, v) || forces(frame, b, x, v),
        Diamond(a) => (0..n).any(|y| frame.related(x, y) && forces(frame, a, y, v)),
        Boxed(a) => (0..n).all(|y| !frame.related(x, y) || forces(frame, a, y, v)),
        BlackDiamond(a) => (0..n).any(|y| frame.related(y, x) && forces(frame, a, y, v)),
        BlackBoxed(a) => (0..n).all(|y| !frame.related(y, x) || forces(frame, a, y, v)),
    }
}
