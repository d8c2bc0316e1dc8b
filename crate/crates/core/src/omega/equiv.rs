use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::set::{lcm, OmegaPlusSet, Point, MAX_PERIOD};
use super::space::RelationSpec;
use crate::error::{Error, Result};

/// An eventually periodic partition of `ω⁺`.
///
/// Below `offset`, naturals are grouped by `head_blocks` and `omega_head`;
/// unlisted head points are singletons. A tail point
/// `n = offset + q·period + r` lies in the class of `ω` when
/// `r ∈ omega_residues`, in the infinite class of its residue group when
/// `r` belongs to one of `infinite_groups`, and otherwise in the finite
/// block `{offset + q·period + s | s ∈ g}` where `g ∈ groups` holds `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivSpec {
    #[serde(default)]
    pub head_blocks: Vec<Vec<u32>>,
    #[serde(default)]
    pub omega_head: Vec<u32>,
    pub offset: u32,
    pub period: u32,
    #[serde(default)]
    pub groups: Vec<Vec<u32>>,
    #[serde(default)]
    pub omega_residues: Vec<u32>,
    #[serde(default)]
    pub infinite_groups: Vec<Vec<u32>>,
}

/// Name of a class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Omega,
    Head(usize),
    Single(u32),
    Block { q: u32, group: usize },
    Infinite(usize),
}

impl EquivSpec {
    /// The identity partition.
    pub fn identity() -> Self {
        EquivSpec {
            head_blocks: vec![],
            omega_head: vec![],
            offset: 0,
            period: 1,
            groups: vec![],
            omega_residues: vec![],
            infinite_groups: vec![],
        }
    }

    /// Classes `{2i, 2i+1}` and `{ω}`.
    pub fn pairs() -> Self {
        EquivSpec { groups: vec![vec![0, 1]], period: 2, ..Self::identity() }
    }

    /// Classes `{0,1}`, `{2}`, `{2i+3, 2i+4}` and `{ω}`.
    pub fn shifted_pairs() -> Self {
        EquivSpec {
            head_blocks: vec![vec![0, 1], vec![2]],
            offset: 3,
            period: 2,
            groups: vec![vec![0, 1]],
            ..Self::identity()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::IllFormed(m));
        if self.period == 0 || self.period as usize > MAX_PERIOD {
            return bad(format!("period {} out of range", self.period));
        }
        let mut head = BTreeSet::new();
        for &n in self.head_blocks.iter().flatten().chain(&self.omega_head) {
            if n >= self.offset {
                return bad(format!("head point {n} not below offset {}", self.offset));
            }
            if !head.insert(n) {
                return bad(format!("head point {n} listed twice"));
            }
        }
        if self.head_blocks.iter().any(Vec::is_empty) || self.groups.iter().chain(&self.infinite_groups).any(Vec::is_empty) {
            return bad("empty block".into());
        }
        let mut res = BTreeSet::new();
        for &r in self.groups.iter().chain(&self.infinite_groups).flatten().chain(&self.omega_residues) {
            if r >= self.period {
                return bad(format!("residue {r} not below period {}", self.period));
            }
            if !res.insert(r) {
                return bad(format!("residue {r} listed twice"));
            }
        }
        Ok(())
    }

    fn tail(&self, n: u32) -> (u32, u32) {
        let d = n - self.offset;
        (d / self.period, d % self.period)
    }

    pub fn class_of(&self, p: Point) -> ClassId {
        let n = match p {
            Point::Omega => return ClassId::Omega,
            Point::Nat(n) => n,
        };
        if n < self.offset {
            if self.omega_head.contains(&n) {
                return ClassId::Omega;
            }
            return match self.head_blocks.iter().position(|b| b.contains(&n)) {
                Some(i) => ClassId::Head(i),
                None => ClassId::Single(n),
            };
        }
        let (q, r) = self.tail(n);
        if self.omega_residues.contains(&r) {
            ClassId::Omega
        } else if let Some(i) = self.infinite_groups.iter().position(|g| g.contains(&r)) {
            ClassId::Infinite(i)
        } else if let Some(group) = self.groups.iter().position(|g| g.contains(&r)) {
            ClassId::Block { q, group }
        } else {
            ClassId::Single(n)
        }
    }

    pub fn related(&self, x: Point, y: Point) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    fn periodic_class(&self, head: &[u32], residues: &[u32], omega: bool) -> OmegaPlusSet {
        OmegaPlusSet::periodic(head, self.offset, self.period, residues, omega).expect("validated spec")
    }

    pub fn class_set(&self, id: &ClassId) -> OmegaPlusSet {
        match id {
            ClassId::Omega => self.periodic_class(&self.omega_head, &self.omega_residues, true),
            ClassId::Head(i) => OmegaPlusSet::finite(self.head_blocks[*i].iter().copied(), false),
            ClassId::Single(n) => OmegaPlusSet::finite([*n], false),
            ClassId::Block { q, group } => {
                let base = self.offset + q * self.period;
                OmegaPlusSet::finite(self.groups[*group].iter().map(|r| base + r), false)
            }
            ClassId::Infinite(i) => self.periodic_class(&[], &self.infinite_groups[*i], false),
        }
    }

    /// Union of the classes meeting `e`.
    pub fn saturate(&self, e: &OmegaPlusSet) -> OmegaPlusSet {
        let period = lcm(self.period as usize, e.period());
        assert!(period <= MAX_PERIOD, "period {period} exceeds {MAX_PERIOD}");
        let l = self.period as usize;
        let start = self.offset as usize + e.offset().saturating_sub(self.offset as usize).div_ceil(l) * l;
        let horizon = (start + 2 * period + l) as u32;
        let meets = |id: &ClassId| {
            let c = self.class_set(id);
            (c.contains_omega() && e.contains_omega()) || (0..horizon).any(|n| c.contains_nat(n) && e.contains_nat(n))
        };
        let mut cache: BTreeMap<ClassId, bool> = BTreeMap::new();
        let mut memo = |id: ClassId| *cache.entry(id.clone()).or_insert_with(|| meets(&id));
        let omega = memo(ClassId::Omega);
        let members: Vec<bool> = (0..(start + period) as u32).map(|n| memo(self.class_of(Point::Nat(n)))).collect();
        OmegaPlusSet::tabulate(start, period, omega, |n| members[n as usize])
    }

    /// Union of the classes inside `e`.
    pub fn sat_interior(&self, e: &OmegaPlusSet) -> OmegaPlusSet {
        self.saturate(&e.complement()).complement()
    }

    /// Whether every class not containing `ω` is finite, so that distinct
    /// classes are separated by saturated clopens.
    pub fn is_boolean(&self) -> bool {
        self.infinite_groups.is_empty()
    }

    /// All classes closed, and the class of `ω` is `{ω}` or `ω⁺`.
    pub fn omega_criterion(&self) -> bool {
        let w = self.class_set(&ClassId::Omega);
        self.is_boolean() && w.is_closed() && (w == OmegaPlusSet::omega_only() || w.is_full())
    }

    /// Same classes, compared on a window that covers both periodic rules.
    pub fn same_partition(&self, other: &EquivSpec) -> bool {
        let l = lcm(self.period as usize, other.period as usize) as u32;
        let end = self.offset.max(other.offset) + 3 * l;
        let pts: Vec<Point> = (0..end).map(Point::Nat).chain([Point::Omega]).collect();
        pts.iter().all(|&x| pts.iter().all(|&y| self.related(x, y) == other.related(x, y)))
    }
}

/// Outcome of [`congruence_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceCongruenceVerdict {
    pub boolean: bool,
    /// First `(x, y, z)` with `x θ y R z` and no `u` with `x R u θ z`.
    pub violation: Option<(Point, Point, Point)>,
    pub omega_criterion: bool,
    /// Naturals below this bound, plus `ω`, were searched for `x, y, z`.
    pub window: u32,
}

impl SpaceCongruenceVerdict {
    pub fn is_congruence(&self) -> bool {
        self.boolean && self.violation.is_none()
    }
}

/// Which dual condition to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceColour {
    White,
    Black,
}

/// Searches `x θ y R z ⇒ ∃u: x R u θ z` on naturals below
/// `max(offset, base bound) + 3·period` and `ω`; beyond that bound points
/// behave as translates of points inside it. The `u` search is exact.
pub fn congruence_check(rel: &RelationSpec, e: &EquivSpec, colour: SpaceColour) -> Result<SpaceCongruenceVerdict> {
    e.validate()?;
    let rel = match colour {
        SpaceColour::White => rel.clone(),
        SpaceColour::Black => rel.converse(),
    };
    let window = e.offset.max(rel.base_bound()) + 3 * e.period;
    let pts: Vec<Point> = (0..window).map(Point::Nat).chain([Point::Omega]).collect();
    let mut violation = None;
    'search: for &x in &pts {
        let succ = rel.black_diamond(&OmegaPlusSet::from_point(x));
        for &y in pts.iter().filter(|&&y| e.related(x, y)) {
            for &z in pts.iter().filter(|&&z| rel.related(y, z)) {
                if succ.meet(&e.class_set(&e.class_of(z))).is_empty() {
                    violation = Some((x, y, z));
                    break 'search;
                }
            }
        }
    }
    Ok(SpaceCongruenceVerdict { boolean: e.is_boolean(), violation, omega_criterion: e.omega_criterion(), window })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Least Boolean partition coarser than both: the equivalence generated by
/// the two, with every infinite class absorbed into the class of `ω`.
pub fn boolean_join(a: &EquivSpec, b: &EquivSpec) -> Result<EquivSpec> {
    a.validate()?;
    b.validate()?;
    let l = lcm(a.period as usize, b.period as usize) as u32;
    if l as usize > MAX_PERIOD {
        return Err(Error::Unrepresentable(format!("joint period {l}")));
    }
    let start = a.offset.max(b.offset);
    const BLOCKS: u32 = 8;
    let end = start + BLOCKS * l;
    let omega = end as usize;
    let mut uf = UnionFind((0..=omega).collect());
    let index = |p: Point| match p {
        Point::Nat(n) => n as usize,
        Point::Omega => omega,
    };
    let pts: Vec<Point> = (0..end).map(Point::Nat).chain([Point::Omega]).collect();
    for e in [a, b] {
        let mut first: BTreeMap<ClassId, usize> = BTreeMap::new();
        for &p in &pts {
            let id = e.class_of(p);
            let i = index(p);
            match first.get(&id) {
                Some(&j) => uf.union(i, j),
                None => {
                    first.insert(id.clone(), i);
                }
            }
            if matches!(id, ClassId::Infinite(_)) {
                uf.union(i, omega);
            }
        }
    }
    // Tail unions are invariant under shifting by `l`, so a tail point tied
    // to its own translate lies in an infinite class.
    for n in start..end - l {
        if uf.find(n as usize) == uf.find((n + l) as usize) {
            uf.union(n as usize, omega);
        }
    }
    let mid = start + 3 * l;
    let classes: Vec<usize> = (0..=omega).map(|i| uf.find(i)).collect();
    let w = classes[omega];
    // Read the tail rule off the block at `mid`; it must repeat.
    let rel = |x: u32| classes[x as usize];
    let mut omega_residues = vec![];
    let mut groups: Vec<Vec<u32>> = vec![];
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for r in 0..l {
        let c = rel(mid + r);
        if c == w {
            omega_residues.push(r);
            continue;
        }
        let spill = (0..end).any(|n| rel(n) == c && !(mid..mid + l).contains(&n));
        if spill {
            return Err(Error::Unrepresentable(format!("class of {} leaves its block of length {l}", mid + r)));
        }
        match seen.get(&c) {
            Some(&g) => groups[g].push(r),
            None => {
                seen.insert(c, groups.len());
                groups.push(vec![r]);
            }
        }
    }
    for k in [2, 4] {
        let base = start + k * l;
        for r in 0..l {
            for s in 0..l {
                if (rel(base + r) == rel(base + s)) != (rel(mid + r) == rel(mid + s))
                    || (rel(base + r) == w) != (rel(mid + r) == w)
                {
                    return Err(Error::Unrepresentable("tail partition is not periodic".into()));
                }
            }
        }
    }
    let mut offset = mid;
    let block_matches = |base: u32| {
        (0..l).all(|r| {
            let c = rel(base + r);
            if omega_residues.contains(&r) {
                return c == w;
            }
            let g = groups.iter().find(|g| g.contains(&r)).unwrap();
            c != w && (0..end).filter(|&n| rel(n) == c).eq(g.iter().map(|s| base + s))
        })
    };
    while offset >= l && block_matches(offset - l) {
        offset -= l;
    }
    let mut omega_head = vec![];
    let mut head: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for n in 0..offset {
        let c = rel(n);
        if c == w {
            omega_head.push(n);
        } else {
            head.entry(c).or_default().push(n);
        }
    }
    let mut head_blocks = vec![];
    for block in head.into_values() {
        if block.iter().any(|&n| n >= offset) || (offset..end).any(|n| rel(n) == rel(block[0])) {
            return Err(Error::Unrepresentable(format!("head class of {} reaches the tail", block[0])));
        }
        if block.len() > 1 {
            head_blocks.push(block);
        }
    }
    let groups = groups.into_iter().filter(|g| g.len() > 1).collect();
    let out = EquivSpec { head_blocks, omega_head, offset, period: l, groups, omega_residues, infinite_groups: vec![] };
    out.validate()?;
    Ok(out)
}

/// Outcome of [`subalgebra_step`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SubalgebraStep {
    /// A saturated clopen `b` with `a ≺ b ≤ c`.
    Witness(OmegaPlusSet),
    /// No saturated set between `◇a` and `c` exists: the saturated interior
    /// of `c` misses part of `◇a`.
    Refuted { image: OmegaPlusSet, interior: OmegaPlusSet },
}

/// For the algebra of `e`-saturated clopens and `a` in it with `a ≺ c`:
/// is there `b` in it with `a ≺ b ≤ c`?
pub fn subalgebra_step(rel: &RelationSpec, e: &EquivSpec, a: &OmegaPlusSet, c: &OmegaPlusSet) -> Result<SubalgebraStep> {
    e.validate()?;
    if !rel.subordination_holds(a, c)? {
        return Err(Error::Hypothesis(format!("{a} does not precede {c}")));
    }
    if e.saturate(a) != *a {
        return Err(Error::Hypothesis(format!("{a} is not saturated")));
    }
    let image = rel.diamond(a);
    let interior = e.sat_interior(c);
    if !image.is_subset(&interior) {
        return Ok(SubalgebraStep::Refuted { image, interior });
    }
    if interior.is_clopen() {
        return Ok(SubalgebraStep::Witness(interior));
    }
    // Any saturated clopen between image and interior will do.
    let candidate = e.saturate(&image);
    if candidate.is_clopen() && candidate.is_subset(&interior) {
        Ok(SubalgebraStep::Witness(candidate))
    } else {
        Err(Error::Unrepresentable(format!("no saturated clopen found between {image} and {interior}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn join_expected() -> EquivSpec {
        EquivSpec {
            head_blocks: vec![vec![0, 1]],
            omega_head: vec![2],
            offset: 3,
            period: 2,
            omega_residues: vec![0, 1],
            ..EquivSpec::identity()
        }
    }

    #[test]
    fn classes_of_named_partitions() {
        let t = EquivSpec::pairs();
        assert!(t.related(Point::Nat(4), Point::Nat(5)));
        assert!(!t.related(Point::Nat(5), Point::Nat(6)));
        assert_eq!(t.class_set(&t.class_of(Point::Omega)), OmegaPlusSet::omega_only());
        let x = EquivSpec::shifted_pairs();
        assert!(x.related(Point::Nat(0), Point::Nat(1)));
        assert_eq!(x.class_set(&x.class_of(Point::Nat(2))), OmegaPlusSet::finite([2], false));
        assert_eq!(x.class_set(&x.class_of(Point::Nat(6))), OmegaPlusSet::finite([5, 6], false));
        let j = join_expected();
        assert_eq!(j.class_set(&ClassId::Omega), OmegaPlusSet::cofinite([0, 1], true));
    }

    #[test]
    fn validation() {
        let mut e = EquivSpec::pairs();
        e.omega_residues.push(1);
        assert!(e.validate().is_err());
        let mut e = EquivSpec::shifted_pairs();
        e.head_blocks.push(vec![3]);
        assert!(e.validate().is_err());
    }

    #[test]
    fn named_partitions_are_congruences() {
        let r = RelationSpec::star_loop();
        for e in [EquivSpec::pairs(), EquivSpec::shifted_pairs(), EquivSpec::identity()] {
            let v = congruence_check(&r, &e, SpaceColour::White).unwrap();
            assert!(v.is_congruence(), "{e:?}: {v:?}");
            assert!(v.omega_criterion);
        }
    }

    #[test]
    fn join_fails_condition_two() {
        let r = RelationSpec::star_loop();
        let j = boolean_join(&EquivSpec::pairs(), &EquivSpec::shifted_pairs()).unwrap();
        assert_eq!(j, join_expected());
        let v = congruence_check(&r, &j, SpaceColour::White).unwrap();
        assert!(v.boolean);
        assert_eq!(v.violation, Some((Point::Nat(2), Point::Omega, Point::Nat(0))));
        assert!(!v.omega_criterion);
    }

    #[test]
    fn join_with_identity_is_unchanged() {
        for e in [EquivSpec::pairs(), EquivSpec::shifted_pairs()] {
            assert!(boolean_join(&e, &EquivSpec::identity()).unwrap().same_partition(&e));
        }
    }

    #[test]
    fn infinite_classes_are_not_boolean() {
        let e = EquivSpec { period: 2, infinite_groups: vec![vec![0]], ..EquivSpec::identity() };
        assert!(!e.is_boolean());
        let j = boolean_join(&e, &EquivSpec::identity()).unwrap();
        assert_eq!(j.class_set(&ClassId::Omega), OmegaPlusSet::evens().with_omega(true));
    }

    #[test]
    fn saturation() {
        let t = EquivSpec::pairs();
        assert_eq!(t.saturate(&OmegaPlusSet::finite([2], false)), OmegaPlusSet::finite([2, 3], false));
        assert_eq!(t.saturate(&OmegaPlusSet::evens()), OmegaPlusSet::cofinite([], false));
        assert_eq!(t.sat_interior(&OmegaPlusSet::cofinite([2], true)), OmegaPlusSet::cofinite([2, 3], true));
        let j = join_expected();
        assert_eq!(j.sat_interior(&OmegaPlusSet::cofinite([2], true)), OmegaPlusSet::finite([0, 1], false));
    }

    #[test]
    fn intersection_of_subalgebras_certificate() {
        let r = RelationSpec::star_loop();
        let a = OmegaPlusSet::finite([0, 1], false);
        let c = OmegaPlusSet::cofinite([2], true);
        for e in [EquivSpec::pairs(), EquivSpec::shifted_pairs()] {
            assert!(matches!(subalgebra_step(&r, &e, &a, &c).unwrap(), SubalgebraStep::Witness(_)));
        }
        let j = boolean_join(&EquivSpec::pairs(), &EquivSpec::shifted_pairs()).unwrap();
        match subalgebra_step(&r, &j, &a, &c).unwrap() {
            SubalgebraStep::Refuted { image, interior } => {
                assert_eq!(image, OmegaPlusSet::finite([0, 1], true));
                assert_eq!(interior, a);
            }
            other => panic!("{other:?}"),
        }
    }
}
