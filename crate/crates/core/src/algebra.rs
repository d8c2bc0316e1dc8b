//! Finite Boolean algebras presented as powersets of an atom set.
//!
//! An element is the bitmask of the atoms below it, so the canonical element
//! order is the numeric order of the mask. Filters, ideals, generated
//! subalgebras and homomorphisms are all computed on these masks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atom-set bitmask; bit `i` set means atom `i` is below the element.
pub type Elem = u32;

/// Largest atom count any structure in this crate will hold.
pub const HARD_MAX_ATOMS: usize = 10;

/// Default cap for user-facing constructors; brute-force validity checks
/// enumerate `(2^n)^vars` valuations.
pub const DEFAULT_MAX_ATOMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BooleanAlgebra {
    atoms: usize,
}

impl BooleanAlgebra {
    /// Any atom count up to [`HARD_MAX_ATOMS`]. Zero atoms gives the
    /// degenerate one-element algebra, which arises as a quotient.
    pub fn new(atoms: usize) -> Result<Self> {
        if atoms > HARD_MAX_ATOMS {
            return Err(Error::TooManyAtoms { requested: atoms, cap: HARD_MAX_ATOMS });
        }
        Ok(BooleanAlgebra { atoms })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn size(&self) -> usize {
        1usize << self.atoms
    }

    pub fn top(&self) -> Elem {
        ((1u64 << self.atoms) - 1) as Elem
    }

    pub fn bottom(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..(self.size() as Elem)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e & !self.top() == 0
    }

    pub fn check(&self, e: Elem) -> Result<Elem> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(Error::ForeignElement { element: e, atoms: self.atoms })
        }
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        a & b
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        a | b
    }

    #[inline]
    pub fn complement(&self, a: Elem) -> Elem {
        !a & self.top()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        a & !b == 0
    }

    pub fn atom(&self, i: usize) -> Elem {
        assert!(i < self.atoms, "atom index {i} out of range");
        1 << i
    }

    pub fn atoms(&self) -> impl Iterator<Item = Elem> {
        (0..self.atoms).map(|i| 1 << i)
    }

    pub fn is_atom(&self, e: Elem) -> bool {
        self.contains(e) && e.count_ones() == 1
    }

    pub fn atom_indices(e: Elem) -> Vec<usize> {
        (0..Elem::BITS as usize).filter(|i| e >> i & 1 == 1).collect()
    }

    pub fn from_atom_indices(&self, indices: &[usize]) -> Result<Elem> {
        let mut e = 0;
        for &i in indices {
            if i >= self.atoms {
                return Err(Error::ForeignElement { element: 1 << i.min(31), atoms: self.atoms });
            }
            e |= 1 << i;
        }
        Ok(e)
    }

    /// Principal filter `a↑`.
    pub fn up(&self, a: Elem) -> ElementSet {
        ElementSet { algebra: *self, members: self.elements().filter(|&b| self.leq(a, b)).collect() }
    }

    /// Principal ideal `a↓`.
    pub fn down(&self, a: Elem) -> ElementSet {
        ElementSet { algebra: *self, members: self.elements().filter(|&b| self.leq(b, a)).collect() }
    }

    /// Every ultrafilter, found by testing each upward-closed set for
    /// primeness. Exponential in the algebra size, so test-scale only.
    pub fn ultrafilters_by_search(&self) -> Vec<ElementSet> {
        let n = self.size();
        assert!(n <= 16, "ultrafilter search is limited to 4 atoms");
        let mut found = Vec::new();
        for mask in 0u32..(1u32 << n) {
            let members: Vec<Elem> = (0..n as Elem).filter(|&e| mask >> e & 1 == 1).collect();
            let set = ElementSet { algebra: *self, members };
            if !set.is_filter() || set.contains(0) {
                continue;
            }
            let prime = self.elements().all(|a| set.contains(a) || set.contains(self.complement(a)));
            if prime {
                found.push(set);
            }
        }
        found
    }
}

/// Cap-checked constructor for user-supplied sizes.
pub fn powerset_algebra(n: usize) -> Result<BooleanAlgebra> {
    powerset_algebra_capped(n, DEFAULT_MAX_ATOMS)
}

pub fn powerset_algebra_capped(n: usize, cap: usize) -> Result<BooleanAlgebra> {
    if n == 0 {
        return Err(Error::TooFewAtoms(n));
    }
    let cap = cap.min(HARD_MAX_ATOMS);
    if n > cap {
        return Err(Error::TooManyAtoms { requested: n, cap });
    }
    BooleanAlgebra::new(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetTag {
    Filter,
    Ideal,
}

/// A sorted, duplicate-free set of elements of one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    algebra: BooleanAlgebra,
    members: Vec<Elem>,
}

impl ElementSet {
    pub fn new(algebra: BooleanAlgebra, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut members: Vec<Elem> = members.into_iter().map(|e| algebra.check(e)).collect::<Result<_>>()?;
        members.sort_unstable();
        members.dedup();
        Ok(ElementSet { algebra, members })
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_filter(&self) -> bool {
        let alg = self.algebra;
        !self.members.is_empty()
            && self.members.iter().all(|&a| alg.elements().filter(|&b| alg.leq(a, b)).all(|b| self.contains(b)))
            && self.members.iter().all(|&a| self.members.iter().all(|&b| self.contains(a & b)))
    }

    pub fn is_ideal(&self) -> bool {
        let alg = self.algebra;
        !self.members.is_empty()
            && self.members.iter().all(|&a| alg.elements().filter(|&b| alg.leq(b, a)).all(|b| self.contains(b)))
            && self.members.iter().all(|&a| self.members.iter().all(|&b| self.contains(a | b)))
    }

    pub fn satisfies(&self, tag: SetTag) -> bool {
        match tag {
            SetTag::Filter => self.is_filter(),
            SetTag::Ideal => self.is_ideal(),
        }
    }

    /// The meet (filter) or join (ideal) of the members, and whether the set
    /// is exactly the principal filter/ideal it generates.
    pub fn principal_generator(&self, tag: SetTag) -> (Elem, bool) {
        let alg = self.algebra;
        match tag {
            SetTag::Filter => {
                let g = self.members.iter().fold(alg.top(), |acc, &e| acc & e);
                (g, !self.is_empty() && alg.up(g) == *self)
            }
            SetTag::Ideal => {
                let g = self.members.iter().fold(0, |acc, &e| acc | e);
                (g, !self.is_empty() && alg.down(g) == *self)
            }
        }
    }

    /// Closed under meet, join and complement, and contains 0 and 1.
    pub fn is_boolean_subalgebra(&self) -> bool {
        let alg = self.algebra;
        self.contains(0)
            && self.contains(alg.top())
            && self.members.iter().all(|&a| self.contains(alg.complement(a)))
            && self.members.iter().all(|&a| self.members.iter().all(|&b| self.contains(a & b) && self.contains(a | b)))
    }

    /// Minimal nonzero members. For a Boolean subalgebra these are its atoms
    /// and they partition the top element.
    pub fn minimal_nonzero(&self) -> Vec<Elem> {
        self.members
            .iter()
            .copied()
            .filter(|&a| a != 0 && !self.members.iter().any(|&b| b != 0 && b != a && b & !a == 0))
            .collect()
    }
}

/// The least Boolean subalgebra containing `generators`.
///
/// Computed through the partition of the top element cut out by the
/// generators: the subalgebra's atoms are the nonempty cells, and its
/// elements are all unions of cells.
pub fn generated_boolean_subalgebra(alg: BooleanAlgebra, generators: &[Elem]) -> Result<ElementSet> {
    for &g in generators {
        alg.check(g)?;
    }
    let mut cells: Vec<Elem> = if alg.top() == 0 { vec![] } else { vec![alg.top()] };
    for &g in generators {
        cells = cells
            .into_iter()
            .flat_map(|c| [c & g, c & !g])
            .filter(|&c| c != 0)
            .collect();
    }
    let mut members = Vec::with_capacity(1 << cells.len());
    for pick in 0u32..(1u32 << cells.len()) {
        let e = cells.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0, |acc, (_, &c)| acc | c);
        members.push(e);
    }
    ElementSet::new(alg, members)
}

/// A total map between the element sets of two finite Boolean algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanMorphism {
    source: BooleanAlgebra,
    target: BooleanAlgebra,
    map: Vec<Elem>,
}

/// First Boolean law a map fails, with its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BooleanLaw {
    Zero,
    One,
    Meet(Elem, Elem),
    Complement(Elem),
}

impl BooleanMorphism {
    /// `map[e]` is the image of source element `e`.
    pub fn new(source: BooleanAlgebra, target: BooleanAlgebra, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::PartialMapping { expected: source.size(), got: map.len() });
        }
        for &e in &map {
            target.check(e)?;
        }
        Ok(BooleanMorphism { source, target, map })
    }

    pub fn identity(alg: BooleanAlgebra) -> Self {
        BooleanMorphism { source: alg, target: alg, map: alg.elements().collect() }
    }

    /// The homomorphism `S ↦ h⁻¹(S)` induced by a map `h` from the target's
    /// atoms to the source's atoms.
    pub fn from_atom_map(source: BooleanAlgebra, target: BooleanAlgebra, h: &[usize]) -> Result<Self> {
        if h.len() != target.atom_count() {
            return Err(Error::PartialMapping { expected: target.atom_count(), got: h.len() });
        }
        if let Some(&bad) = h.iter().find(|&&i| i >= source.atom_count()) {
            return Err(Error::ForeignElement { element: 1 << bad.min(31), atoms: source.atom_count() });
        }
        let map = source
            .elements()
            .map(|s| h.iter().enumerate().filter(|(_, &i)| s >> i & 1 == 1).fold(0, |acc, (j, _)| acc | 1 << j))
            .collect();
        Ok(BooleanMorphism { source, target, map })
    }

    /// Every Boolean homomorphism between two powerset algebras; there are
    /// `m^n` of them for `m` source atoms and `n` target atoms.
    pub fn all_between(source: BooleanAlgebra, target: BooleanAlgebra) -> Vec<BooleanMorphism> {
        let (m, n) = (source.atom_count(), target.atom_count());
        if m == 0 {
            return if n == 0 {
                vec![BooleanMorphism::identity(source)]
            } else {
                vec![]
            };
        }
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let h: Vec<usize> = (0..n)
                    .map(|_| {
                        let d = code % m;
                        code /= m;
                        d
                    })
                    .collect();
                BooleanMorphism::from_atom_map(source, target, &h).expect("in range")
            })
            .collect()
    }

    pub fn source(&self) -> BooleanAlgebra {
        self.source
    }

    pub fn target(&self) -> BooleanAlgebra {
        self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e as usize]
    }

    pub fn first_violation(&self) -> Option<BooleanLaw> {
        let (s, t) = (self.source, self.target);
        if self.apply(0) != 0 {
            return Some(BooleanLaw::Zero);
        }
        if self.apply(s.top()) != t.top() {
            return Some(BooleanLaw::One);
        }
        for a in s.elements() {
            for b in s.elements() {
                if self.apply(a & b) != self.apply(a) & self.apply(b) {
                    return Some(BooleanLaw::Meet(a, b));
                }
            }
        }
        s.elements().find(|&a| self.apply(s.complement(a)) != t.complement(self.apply(a))).map(BooleanLaw::Complement)
    }

    pub fn is_boolean(&self) -> bool {
        self.first_violation().is_none()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BooleanMorphism) -> Result<BooleanMorphism> {
        if self.target != other.source {
            return Err(Error::Hypothesis("composition of mismatched morphisms".into()));
        }
        Ok(BooleanMorphism {
            source: self.source,
            target: other.target,
            map: self.map.iter().map(|&e| other.apply(e)).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&e| !std::mem::replace(&mut seen[e as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &e in &self.map {
            seen[e as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<Elem> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Join of the 0-kernel; for a Boolean homomorphism the 0-class is this
    /// element's principal ideal.
    pub fn kernel_generator(&self) -> Elem {
        self.source.elements().filter(|&e| self.apply(e) == 0).fold(0, |acc, e| acc | e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Fixed-point closure under the Boolean operations, the naive route.
    fn closure_oracle(alg: BooleanAlgebra, gens: &[Elem]) -> Vec<Elem> {
        let mut set: std::collections::BTreeSet<Elem> = gens.iter().copied().collect();
        set.insert(0);
        set.insert(alg.top());
        loop {
            let snapshot: Vec<Elem> = set.iter().copied().collect();
            let before = set.len();
            for &a in &snapshot {
                set.insert(alg.complement(a));
                for &b in &snapshot {
                    set.insert(a & b);
                    set.insert(a | b);
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }

    #[test]
    fn sizes_and_bounds() {
        let one = powerset_algebra(1).unwrap();
        assert_eq!(one.elements().collect::<Vec<_>>(), vec![0, 1]);
        let three = powerset_algebra(3).unwrap();
        assert_eq!(three.size(), 8);
        assert_eq!(three.atoms().count(), 3);
        assert!(matches!(powerset_algebra(0), Err(Error::TooFewAtoms(0))));
        assert!(matches!(powerset_algebra(7), Err(Error::TooManyAtoms { .. })));
        assert!(powerset_algebra_capped(8, 8).is_ok());
        assert!(powerset_algebra_capped(11, 20).is_err());
    }

    #[test]
    fn boolean_identities_hold_exhaustively() {
        for n in 1..=4 {
            let b = BooleanAlgebra::new(n).unwrap();
            let (top, c) = (b.top(), |x| b.complement(x));
            for x in b.elements() {
                assert_eq!(c(c(x)), x);
                assert_eq!(b.meet(x, c(x)), 0);
                assert_eq!(b.join(x, c(x)), top);
                assert_eq!(b.meet(x, top), x);
                assert_eq!(b.join(x, 0), x);
                assert_eq!(b.meet(x, x), x);
                assert_eq!(b.join(x, x), x);
                for y in b.elements() {
                    assert_eq!(b.meet(x, y), b.meet(y, x));
                    assert_eq!(b.join(x, y), b.join(y, x));
                    assert_eq!(b.meet(x, b.join(x, y)), x);
                    assert_eq!(b.join(x, b.meet(x, y)), x);
                    assert_eq!(c(b.meet(x, y)), b.join(c(x), c(y)));
                    assert_eq!(c(b.join(x, y)), b.meet(c(x), c(y)));
                    assert_eq!(b.leq(x, y), b.meet(x, y) == x);
                    assert_eq!(b.leq(x, y), b.join(x, y) == y);
                }
            }
        }
    }

    #[test]
    fn ultrafilters_are_principal_at_atoms() {
        for n in 1..=3 {
            let b = BooleanAlgebra::new(n).unwrap();
            let found = b.ultrafilters_by_search();
            let expected: Vec<ElementSet> = b.atoms().map(|a| b.up(a)).collect();
            assert_eq!(found.len(), n);
            for u in &expected {
                assert!(found.contains(u));
            }
        }
    }

    #[test]
    fn filter_and_ideal_checks() {
        let b = BooleanAlgebra::new(2).unwrap();
        for a in b.elements() {
            let up = b.up(a);
            assert!(up.is_filter());
            assert_eq!(up.principal_generator(SetTag::Filter), (a, true));
            assert!(b.down(a).is_ideal());
        }
        assert!(ElementSet::new(b, [3]).unwrap().is_filter());
        assert!(ElementSet::new(b, [0, 1]).unwrap().is_ideal());
        assert!(!ElementSet::new(b, [1]).unwrap().is_ideal());
        assert!(matches!(ElementSet::new(b, [4]), Err(Error::ForeignElement { .. })));
    }

    #[test]
    fn every_filter_and_ideal_is_principal() {
        let b = BooleanAlgebra::new(3).unwrap();
        for mask in 0u32..256 {
            let set = ElementSet::new(b, (0..8).filter(|e| mask >> e & 1 == 1)).unwrap();
            if set.is_filter() {
                assert!(set.principal_generator(SetTag::Filter).1);
            }
            if set.is_ideal() {
                assert!(set.principal_generator(SetTag::Ideal).1);
            }
        }
    }

    #[test]
    fn generated_subalgebras_match_closure() {
        let b = BooleanAlgebra::new(3).unwrap();
        assert_eq!(generated_boolean_subalgebra(b, &[]).unwrap().members(), &[0, 7]);
        assert_eq!(generated_boolean_subalgebra(b, &[1, 2, 4]).unwrap().len(), 8);
        assert_eq!(generated_boolean_subalgebra(b, &[0b011]).unwrap().members(), &[0, 0b011, 0b100, 0b111]);
        for g1 in b.elements() {
            for g2 in b.elements() {
                let got = generated_boolean_subalgebra(b, &[g1, g2]).unwrap();
                assert_eq!(got.members(), closure_oracle(b, &[g1, g2]).as_slice());
                assert!(got.is_boolean_subalgebra());
            }
        }
    }

    #[test]
    fn morphism_checks() {
        let b = BooleanAlgebra::new(2).unwrap();
        assert!(BooleanMorphism::identity(b).is_boolean());
        let constant = BooleanMorphism::new(b, b, vec![3; 4]).unwrap();
        assert_eq!(constant.first_violation(), Some(BooleanLaw::Zero));
        assert!(matches!(BooleanMorphism::new(b, b, vec![0, 1]), Err(Error::PartialMapping { .. })));
        let b3 = BooleanAlgebra::new(3).unwrap();
        for h in BooleanMorphism::all_between(b3, b3) {
            assert!(h.is_boolean());
        }
        assert_eq!(BooleanMorphism::all_between(b, b3).len(), 8);
    }
}
