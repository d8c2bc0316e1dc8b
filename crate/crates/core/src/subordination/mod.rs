//! Subordination relations on finite powerset algebras.
//!
//! The relation is stored extensionally so that arbitrary candidates can be
//! checked against the axioms; the operator views (`◇`, `■`) are derived on
//! demand and only meaningful once (S1)–(S4) hold.

mod axioms;
mod congruence;
mod morphism;
mod product;
mod subalgebra;

pub use axioms::{check_axioms, Axiom, AxiomReport, AxiomVerdict};
pub use congruence::{
    all_partitions, congruence_lattice, first_isomorphism, is_congruence, quotient, quotient_by_partition,
    second_isomorphism, third_isomorphism, Congruence, CongruenceKind, CongruenceLattice, CongruenceVerdict,
    FirstIsoReport, LatticeCheck, Partition, Quotient, SecondIsoReport, ThirdIsoReport,
};
pub use morphism::{check_morphism, is_isomorphism, MorphismAxiom, MorphismKind, MorphismReport};
pub use product::{categorical_product_test, pairing, product, Product, ProductTest};
pub use subalgebra::{is_subalgebra, SubalgebraVerdict};

use serde::{Deserialize, Serialize};

use crate::algebra::{BooleanAlgebra, BooleanMorphism, Elem, ElementSet};
use crate::error::{Error, Result};
use crate::relation::PairSet;

/// Which modality an operator, formula or construction speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    White,
    Black,
    Bi,
}

impl std::fmt::Display for Colour {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Colour::White => "white",
            Colour::Black => "black",
            Colour::Bi => "bi",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubordinationAlgebra {
    algebra: BooleanAlgebra,
    rel: PairSet,
}

impl std::fmt::Debug for SubordinationAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubordinationAlgebra")
            .field("atoms", &self.algebra.atom_count())
            .field("prec", &self.rel)
            .finish()
    }
}

impl SubordinationAlgebra {
    pub fn from_pairs(algebra: BooleanAlgebra, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let mut rel = PairSet::empty(algebra.size());
        for (a, b) in pairs {
            rel.insert(algebra.check(a)? as usize, algebra.check(b)? as usize);
        }
        Ok(SubordinationAlgebra { algebra, rel })
    }

    pub fn from_fn(algebra: BooleanAlgebra, mut f: impl FnMut(Elem, Elem) -> bool) -> Self {
        let rel = PairSet::from_fn(algebra.size(), |a, b| f(a as Elem, b as Elem));
        SubordinationAlgebra { algebra, rel }
    }

    pub(crate) fn from_relation(algebra: BooleanAlgebra, rel: PairSet) -> Self {
        debug_assert_eq!(rel.universe(), algebra.size());
        SubordinationAlgebra { algebra, rel }
    }

    /// `≺ = ≤`.
    pub fn order(algebra: BooleanAlgebra) -> Self {
        Self::from_fn(algebra, |a, b| algebra.leq(a, b))
    }

    /// The relation induced by a modal operator given as a table indexed by
    /// element: `a ≺ b` iff `◇a ≤ b` for a white operator, and
    /// `a ≺ b` iff `a ≤ ■b = ¬◆¬b` for a black one.
    pub fn from_operator(algebra: BooleanAlgebra, op: &[Elem], colour: Colour) -> Result<Self> {
        check_operator(algebra, op)?;
        match colour {
            Colour::White => Ok(Self::from_fn(algebra, |a, b| algebra.leq(op[a as usize], b))),
            Colour::Black => Ok(Self::from_fn(algebra, |a, b| {
                let boxed = algebra.complement(op[algebra.complement(b) as usize]);
                algebra.leq(a, boxed)
            })),
            Colour::Bi => Err(Error::Hypothesis("an operator induces a white or a black relation".into())),
        }
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn relation(&self) -> &PairSet {
        &self.rel
    }

    #[inline]
    pub fn prec(&self, a: Elem, b: Elem) -> bool {
        self.rel.contains(a as usize, b as usize)
    }

    /// `a ⊥ b`, shorthand for `a ≺ ¬b`.
    pub fn perp(&self, a: Elem, b: Elem) -> bool {
        self.prec(a, self.algebra.complement(b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.rel.pairs().map(|(a, b)| (a as Elem, b as Elem))
    }

    /// `≺(a,−)`.
    pub fn upper(&self, a: Elem) -> ElementSet {
        ElementSet::new(self.algebra, self.algebra.elements().filter(|&b| self.prec(a, b))).expect("own elements")
    }

    /// `≺(−,a)`.
    pub fn lower(&self, a: Elem) -> ElementSet {
        ElementSet::new(self.algebra, self.algebra.elements().filter(|&b| self.prec(b, a))).expect("own elements")
    }

    /// The multi-operator view `a ↦ ≺(a,−)`.
    pub fn multi_operator(&self, a: Elem) -> ElementSet {
        self.upper(a)
    }

    /// First pair breaking the multi-operator laws: `⟡0` must be the whole
    /// algebra and `⟡(a ∨ b) = ⟡a ∩ ⟡b`. `Err(None)` flags the `⟡0` law.
    pub fn check_multi_operator(&self) -> std::result::Result<(), Option<(Elem, Elem)>> {
        if self.upper(0).len() != self.algebra.size() {
            return Err(None);
        }
        for a in self.algebra.elements() {
            for b in self.algebra.elements() {
                let joined = self.upper(a | b);
                let (ua, ub) = (self.upper(a), self.upper(b));
                let inter: Vec<Elem> = ua.members().iter().copied().filter(|&e| ub.contains(e)).collect();
                if joined.members() != inter.as_slice() {
                    return Err(Some((a, b)));
                }
            }
        }
        Ok(())
    }

    /// Meet of `≺(a,−)`; the generator of that filter when (S1)–(S4) hold.
    pub fn diamond(&self, a: Elem) -> Elem {
        self.algebra.elements().filter(|&b| self.prec(a, b)).fold(self.algebra.top(), |acc, b| acc & b)
    }

    /// Join of `≺(−,a)`; the generator of that ideal when (S1)–(S4) hold.
    pub fn black_box(&self, a: Elem) -> Elem {
        self.algebra.elements().filter(|&b| self.prec(b, a)).fold(0, |acc, b| acc | b)
    }

    /// `◆a = ¬■¬a`.
    pub fn black_diamond(&self, a: Elem) -> Elem {
        let alg = self.algebra;
        alg.complement(self.black_box(alg.complement(a)))
    }

    pub fn diamond_table(&self) -> Vec<Elem> {
        self.algebra.elements().map(|a| self.diamond(a)).collect()
    }

    pub fn black_diamond_table(&self) -> Vec<Elem> {
        self.algebra.elements().map(|a| self.black_diamond(a)).collect()
    }

    /// True when the stored relation is exactly the one induced by its own
    /// derived `◇`, which on a finite algebra is equivalent to (S1)–(S4).
    pub fn is_operator_induced(&self) -> bool {
        let table = self.diamond_table();
        check_operator(self.algebra, &table).is_ok()
            && self.algebra.elements().all(|a| {
                self.algebra.elements().all(|b| self.prec(a, b) == self.algebra.leq(table[a as usize], b))
            })
    }

    /// `a ≺ᵒᵖ b` iff `¬b ≺ ¬a`. Swaps the roles of `◇` and `◆`, so every
    /// black notion is the white notion of the opposite algebra.
    pub fn opposite(&self) -> Self {
        let alg = self.algebra;
        Self::from_fn(alg, |a, b| self.prec(alg.complement(b), alg.complement(a)))
    }

    /// `≺ᵏ` by relational composition, with `≺⁰` the order.
    pub fn power(&self, k: usize) -> PairSet {
        let alg = self.algebra;
        let mut acc = PairSet::from_fn(alg.size(), |a, b| alg.leq(a as Elem, b as Elem));
        for _ in 0..k {
            acc = acc.compose(&self.rel);
        }
        acc
    }

    /// Restriction of `≺` to a Boolean subalgebra, relabelled as a powerset
    /// algebra over the subalgebra's atoms, together with the inclusion.
    pub fn restrict(&self, sub: &ElementSet) -> Result<(SubordinationAlgebra, BooleanMorphism)> {
        if sub.algebra() != self.algebra || !sub.is_boolean_subalgebra() {
            return Err(Error::NotBooleanSubalgebra);
        }
        let atoms = sub.minimal_nonzero();
        let small = BooleanAlgebra::new(atoms.len())?;
        let embed: Vec<Elem> = small
            .elements()
            .map(|s| atoms.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(0, |acc, (_, &a)| acc | a))
            .collect();
        let rel = PairSet::from_fn(small.size(), |x, y| self.prec(embed[x], embed[y]));
        let inclusion = BooleanMorphism::new(small, self.algebra, embed)?;
        Ok((SubordinationAlgebra { algebra: small, rel }, inclusion))
    }

    /// An atom permutation that is an isomorphism onto `other`, if any.
    pub fn find_isomorphism(&self, other: &SubordinationAlgebra) -> Option<BooleanMorphism> {
        let n = self.algebra.atom_count();
        if other.algebra.atom_count() != n || self.rel.len() != other.rel.len() {
            return None;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut found = None;
        permute(&mut perm, 0, &mut |p| {
            let f = BooleanMorphism::from_atom_map(other.algebra, self.algebra, p).expect("permutation");
            // from_atom_map builds S ↦ p⁻¹(S) from `other` into `self`; we want the
            // map from `self`, so invert by construction on the other side.
            let g = invert_bijection(&f);
            if is_isomorphism(&g, self, other) {
                found = Some(g);
                true
            } else {
                false
            }
        });
        found
    }

    pub fn is_isomorphic(&self, other: &SubordinationAlgebra) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

pub(crate) fn check_operator(algebra: BooleanAlgebra, op: &[Elem]) -> Result<()> {
    if op.len() != algebra.size() {
        return Err(Error::PartialMapping { expected: algebra.size(), got: op.len() });
    }
    for &e in op {
        algebra.check(e)?;
    }
    if op[0] != 0 {
        return Err(Error::OperatorLaw { law: "op(0) = 0", witness: vec![0] });
    }
    for a in algebra.elements() {
        for b in algebra.elements() {
            if op[(a | b) as usize] != op[a as usize] | op[b as usize] {
                return Err(Error::OperatorLaw { law: "op(a ∨ b) = op(a) ∨ op(b)", witness: vec![a, b] });
            }
        }
    }
    Ok(())
}

fn invert_bijection(f: &BooleanMorphism) -> BooleanMorphism {
    let mut inv = vec![0; f.target().size()];
    for e in f.source().elements() {
        inv[f.apply(e) as usize] = e;
    }
    BooleanMorphism::new(f.target(), f.source(), inv).expect("bijection")
}

/// Calls `visit` on each permutation until it returns true.
pub(crate) fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return visit(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permute(p, k + 1, visit) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}
