//! Congruences of subordination algebras.
//!
//! A Boolean congruence on a powerset algebra is determined by its 0-class,
//! a principal ideal `a↓`; we call `a` the kernel. White congruences are the
//! ones whose kernel ideal is round, black ones are white congruences of the
//! opposite algebra.

use serde::{Deserialize, Serialize};

use super::axioms::satisfies_basic;
use super::morphism::is_morphism;
use super::subalgebra::is_subalgebra;
use super::{MorphismKind, SubordinationAlgebra};
use crate::algebra::{BooleanAlgebra, BooleanMorphism, Elem, ElementSet};
use crate::error::{Error, Result};
use crate::relation::PairSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceKind {
    White,
    Black,
    Strong,
}

impl CongruenceKind {
    pub const ALL: [CongruenceKind; 3] = [CongruenceKind::White, CongruenceKind::Black, CongruenceKind::Strong];

    pub fn morphism_kind(self) -> MorphismKind {
        match self {
            CongruenceKind::White => MorphismKind::White,
            CongruenceKind::Black => MorphismKind::Black,
            CongruenceKind::Strong => MorphismKind::Strong,
        }
    }

    pub fn name(self) -> &'static str {
        self.morphism_kind().name()
    }

    fn needs_white(self) -> bool {
        self != CongruenceKind::Black
    }

    fn needs_black(self) -> bool {
        self != CongruenceKind::White
    }
}

impl std::str::FromStr for CongruenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CongruenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::IllFormed(format!("unknown congruence kind `{s}`")))
    }
}

/// A partition of the elements of an algebra into classes. Canonical: each
/// class sorted, classes ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    algebra: BooleanAlgebra,
    classes: Vec<Vec<Elem>>,
}

impl Partition {
    pub fn new(algebra: BooleanAlgebra, classes: Vec<Vec<Elem>>) -> Result<Self> {
        let mut seen = vec![false; algebra.size()];
        let mut classes: Vec<Vec<Elem>> = classes.into_iter().filter(|c| !c.is_empty()).collect();
        for class in &mut classes {
            for &e in class.iter() {
                algebra.check(e)?;
                if std::mem::replace(&mut seen[e as usize], true) {
                    return Err(Error::IllFormed(format!("element {e:#b} occurs in two classes")));
                }
            }
            class.sort_unstable();
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::IllFormed(format!("element {missing:#b} is in no class")));
        }
        classes.sort();
        Ok(Partition { algebra, classes })
    }

    /// Classes from a class label per element.
    pub fn from_labels(algebra: BooleanAlgebra, labels: &[usize]) -> Result<Self> {
        if labels.len() != algebra.size() {
            return Err(Error::PartialMapping { expected: algebra.size(), got: labels.len() });
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Elem>> = Default::default();
        for (e, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(e as Elem);
        }
        Partition::new(algebra, groups.into_values().collect())
    }

    /// The Boolean congruence `x ~ y iff x ∧ ¬a = y ∧ ¬a`.
    pub fn from_kernel(algebra: BooleanAlgebra, a: Elem) -> Self {
        let keep = algebra.complement(a);
        let labels: Vec<usize> = algebra.elements().map(|e| (e & keep) as usize).collect();
        Partition::from_labels(algebra, &labels).expect("labels cover the algebra")
    }

    pub fn identity(algebra: BooleanAlgebra) -> Self {
        Partition::from_kernel(algebra, 0)
    }

    pub fn full(algebra: BooleanAlgebra) -> Self {
        Partition::from_kernel(algebra, algebra.top())
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    /// Class number of every element.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.algebra.size()];
        for (i, class) in self.classes.iter().enumerate() {
            for &e in class {
                out[e as usize] = i;
            }
        }
        out
    }

    pub fn as_relation(&self) -> PairSet {
        let labels = self.labels();
        PairSet::from_fn(self.algebra.size(), |x, y| labels[x] == labels[y])
    }

    /// The `a` with this partition equal to the kernel partition of `a`.
    pub fn boolean_kernel(&self) -> Result<Elem> {
        let zero_class = &self.classes[0];
        debug_assert_eq!(zero_class[0], 0);
        let a = zero_class.iter().fold(0, |acc, &e| acc | e);
        if *self == Partition::from_kernel(self.algebra, a) {
            Ok(a)
        } else {
            let ideal = ElementSet::new(self.algebra, zero_class.iter().copied())?;
            let detail = if !ideal.is_ideal() {
                "the class of 0 is not an ideal".to_string()
            } else {
                format!("classes differ from those of the kernel {a:#b}")
            };
            Err(Error::NotBooleanCongruence(detail))
        }
    }

    /// Equivalence-lattice join, by union-find over the union of both.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.algebra.size());
        for p in [self, other] {
            for class in &p.classes {
                for w in class.windows(2) {
                    uf.union(w[0] as usize, w[1] as usize);
                }
            }
        }
        let labels: Vec<usize> = (0..self.algebra.size()).map(|i| uf.find(i)).collect();
        Partition::from_labels(self.algebra, &labels).expect("total labels")
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        let (l1, l2) = (self.labels(), other.labels());
        let labels: Vec<usize> = l1.iter().zip(&l2).map(|(a, b)| a * self.algebra.size() + b).collect();
        Partition::from_labels(self.algebra, &labels).expect("total labels")
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            x = std::mem::replace(&mut self.0[x], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Every partition of the elements of an algebra with at most 3 atoms, by
/// restricted growth strings.
pub fn all_partitions(algebra: BooleanAlgebra) -> Result<Vec<Partition>> {
    let n = algebra.size();
    if algebra.atom_count() > 3 {
        return Err(Error::BudgetExceeded { needed: bell(n), budget: bell(8) });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition::from_labels(algebra, &rgs)?);
        // Next restricted growth string.
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
        }
    }
}

fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(x));
        }
        row = next;
    }
    row[0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    pub kernel: Elem,
    pub kind: CongruenceKind,
}

impl Congruence {
    /// Checked constructor.
    pub fn new(s: &SubordinationAlgebra, kernel: Elem, kind: CongruenceKind) -> Result<Self> {
        let alg = s.algebra();
        alg.check(kernel)?;
        let verdict = is_congruence(s, &Partition::from_kernel(alg, kernel), kind)?;
        if !verdict.holds {
            return Err(Error::NotCongruence { kind: kind.name(), detail: format!("kernel {kernel:#b} is not round") });
        }
        Ok(Congruence { kernel, kind })
    }

    pub fn partition(&self, algebra: BooleanAlgebra) -> Partition {
        Partition::from_kernel(algebra, self.kernel)
    }
}

/// The four equivalent conditions: (1) the projection onto the quotient is a
/// morphism, (2) `a θ b ≺ c ⇒ ∃d: a ≺ d θ c`, (3) the 0-class is a round
/// ideal, (4) `x ∈ F ⇒ ∃y ∈ F: ¬x ≺ ¬y` for the 1-class `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceVerdict {
    pub kernel: Elem,
    pub kind: CongruenceKind,
    pub white: Option<[bool; 4]>,
    pub black: Option<[bool; 4]>,
    pub holds: bool,
    /// The conditions of each colour agree with one another.
    pub agree: bool,
}

pub fn is_congruence(s: &SubordinationAlgebra, partition: &Partition, kind: CongruenceKind) -> Result<CongruenceVerdict> {
    if partition.algebra() != s.algebra() {
        return Err(Error::Hypothesis("partition is over a different algebra".into()));
    }
    let kernel = partition.boolean_kernel()?;
    let white = kind.needs_white().then(|| white_conditions(s, kernel));
    let black = kind.needs_black().then(|| white_conditions(&s.opposite(), kernel));
    let agree = [white, black].iter().flatten().all(|c| c.iter().all(|&x| x == c[0]));
    let holds = [white, black].iter().flatten().all(|c| c[2]);
    Ok(CongruenceVerdict { kernel, kind, white, black, holds, agree })
}

fn white_conditions(s: &SubordinationAlgebra, a: Elem) -> [bool; 4] {
    let alg = s.algebra();
    let keep = alg.complement(a);
    let same = |x: Elem, y: Elem| x & keep == y & keep;
    let els = || alg.elements();

    let projection = {
        let (q, pi) = raw_quotient(s, a);
        satisfies_basic(&q) && is_morphism(&pi, s, &q, MorphismKind::White)
    };
    let lifting = els().all(|x| {
        els().filter(|&y| same(x, y)).all(|y| {
            els().filter(|&c| s.prec(y, c)).all(|c| els().any(|d| s.prec(x, d) && same(d, c)))
        })
    });
    let round_ideal = els().filter(|&x| alg.leq(x, a)).all(|x| els().any(|y| alg.leq(y, a) && s.prec(x, y)));
    let round_filter = els()
        .filter(|&x| alg.leq(keep, x))
        .all(|x| els().any(|y| alg.leq(keep, y) && s.prec(alg.complement(x), alg.complement(y))));
    [projection, lifting, round_ideal, round_filter]
}

fn compress(e: Elem, mask: Elem) -> Elem {
    let mut out = 0;
    let mut bit = 0;
    for i in 0..Elem::BITS {
        if mask >> i & 1 == 1 {
            out |= (e >> i & 1) << bit;
            bit += 1;
        }
    }
    out
}

fn decompress(q: Elem, mask: Elem) -> Elem {
    let mut out = 0;
    let mut bit = 0;
    for i in 0..Elem::BITS {
        if mask >> i & 1 == 1 {
            out |= (q >> bit & 1) << i;
            bit += 1;
        }
    }
    out
}

/// Quotient algebra with `πx ≺ πc` for every `x ≺ c`, unchecked.
fn raw_quotient(s: &SubordinationAlgebra, a: Elem) -> (SubordinationAlgebra, BooleanMorphism) {
    let alg = s.algebra();
    let keep = alg.complement(a);
    let small = BooleanAlgebra::new(keep.count_ones() as usize).expect("fewer atoms");
    let map: Vec<Elem> = alg.elements().map(|e| compress(e, keep)).collect();
    let mut rel = PairSet::empty(small.size());
    for (x, c) in s.pairs() {
        rel.insert(map[x as usize] as usize, map[c as usize] as usize);
    }
    let pi = BooleanMorphism::new(alg, small, map).expect("compressed elements");
    (SubordinationAlgebra::from_relation(small, rel), pi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: SubordinationAlgebra,
    pub projection: BooleanMorphism,
    pub congruence: Congruence,
    /// The projection was re-checked to be a morphism of the congruence's kind.
    pub projection_verified: bool,
}

impl Quotient {
    /// A preimage of a quotient element: the representative disjoint from the kernel.
    pub fn lift(&self, q: Elem) -> Elem {
        decompress(q, self.projection.source().complement(self.congruence.kernel))
    }
}

pub fn quotient(s: &SubordinationAlgebra, congruence: &Congruence) -> Result<Quotient> {
    let alg = s.algebra();
    alg.check(congruence.kernel)?;
    let verdict = is_congruence(s, &congruence.partition(alg), congruence.kind)?;
    if !verdict.holds {
        return Err(Error::NotCongruence {
            kind: congruence.kind.name(),
            detail: format!("kernel {:#b} is not round", congruence.kernel),
        });
    }
    let (q, projection) = raw_quotient(s, congruence.kernel);
    let projection_verified =
        satisfies_basic(&q) && is_morphism(&projection, s, &q, congruence.kind.morphism_kind());
    Ok(Quotient { algebra: q, projection, congruence: *congruence, projection_verified })
}

pub fn quotient_by_partition(s: &SubordinationAlgebra, partition: &Partition, kind: CongruenceKind) -> Result<Quotient> {
    let kernel = partition.boolean_kernel()?;
    quotient(s, &Congruence { kernel, kind })
}

/// All congruences of one kind, indexed by kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceLattice {
    pub algebra: BooleanAlgebra,
    pub kind: CongruenceKind,
    pub kernels: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub has_bounds: bool,
    /// Pairwise intersections of partitions are members, with kernel `a ∧ b`.
    pub meets_are_intersections: bool,
    /// Joins of every subfamily in the equivalence lattice are members.
    pub joins_are_congruences: bool,
    pub frame_law: bool,
}

impl LatticeCheck {
    pub fn all(&self) -> bool {
        self.has_bounds && self.meets_are_intersections && self.joins_are_congruences && self.frame_law
    }
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn contains(&self, kernel: Elem) -> bool {
        self.kernels.binary_search(&kernel).is_ok()
    }

    pub fn congruences(&self) -> impl Iterator<Item = Congruence> + '_ {
        self.kernels.iter().map(|&kernel| Congruence { kernel, kind: self.kind })
    }

    /// Re-derives the lattice operations from partitions and checks the frame
    /// law `x ∧ ⋁Y = ⋁{x ∧ y | y ∈ Y}`. Families `Y` range over all subsets
    /// when there are at most 12 congruences, otherwise over those of size ≤ 3.
    pub fn verify(&self) -> LatticeCheck {
        let alg = self.algebra;
        let parts: Vec<Partition> = self.kernels.iter().map(|&k| Partition::from_kernel(alg, k)).collect();
        let member = |p: &Partition| p.boolean_kernel().map(|k| self.contains(k)).unwrap_or(false);

        let has_bounds = self.contains(0) && self.contains(alg.top());
        let mut meets_are_intersections = true;
        for (i, p) in parts.iter().enumerate() {
            for (j, q) in parts.iter().enumerate() {
                let m = p.meet(q);
                if m.boolean_kernel().ok() != Some(self.kernels[i] & self.kernels[j]) || !member(&m) {
                    meets_are_intersections = false;
                }
            }
        }

        let families = families(parts.len());
        let join_all = |fam: &[usize], f: &dyn Fn(&Partition) -> Partition| {
            fam.iter().fold(Partition::identity(alg), |acc, &i| acc.join(&f(&parts[i])))
        };
        let mut joins_are_congruences = true;
        let mut frame_law = true;
        for fam in &families {
            let joined = join_all(fam, &|p| p.clone());
            if !member(&joined) {
                joins_are_congruences = false;
            }
            for x in &parts {
                let lhs = x.meet(&joined);
                let rhs = join_all(fam, &|p| x.meet(p));
                if lhs != rhs {
                    frame_law = false;
                }
            }
        }
        LatticeCheck { has_bounds, meets_are_intersections, joins_are_congruences, frame_law }
    }
}

fn families(n: usize) -> Vec<Vec<usize>> {
    if n <= 12 {
        (0u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    } else {
        let mut out = vec![vec![]];
        for i in 0..n {
            out.push(vec![i]);
            for j in i + 1..n {
                out.push(vec![i, j]);
                for k in j + 1..n {
                    out.push(vec![i, j, k]);
                }
            }
        }
        out
    }
}

pub fn congruence_lattice(s: &SubordinationAlgebra, kind: CongruenceKind) -> CongruenceLattice {
    let alg = s.algebra();
    let white = kind.needs_white().then(|| s.clone());
    let black = kind.needs_black().then(|| s.opposite());
    let kernels = alg
        .elements()
        .filter(|&a| {
            [&white, &black].into_iter().flatten().all(|t| {
                alg.elements().filter(|&x| alg.leq(x, a)).all(|x| alg.elements().any(|y| alg.leq(y, a) && t.prec(x, y)))
            })
        })
        .collect();
    CongruenceLattice { algebra: alg, kind, kernels }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstIsoReport {
    pub kernel: Elem,
    pub kernel_is_congruence: bool,
    pub image_is_subalgebra: bool,
    /// `A/ker f → image f`, `[x] ↦ f(x)`, is an isomorphism.
    pub isomorphic: bool,
    /// That isomorphism followed by the inclusion composes with the
    /// projection to `f`, and is a morphism of the kind.
    pub factorization_holds: bool,
}

impl FirstIsoReport {
    pub fn all(&self) -> bool {
        self.kernel_is_congruence && self.image_is_subalgebra && self.isomorphic && self.factorization_holds
    }
}

pub fn first_isomorphism(
    f: &BooleanMorphism,
    a: &SubordinationAlgebra,
    b: &SubordinationAlgebra,
    kind: CongruenceKind,
) -> Result<FirstIsoReport> {
    let mk = kind.morphism_kind();
    if f.source() != a.algebra() || f.target() != b.algebra() || !is_morphism(f, a, b, mk) {
        return Err(Error::NotMorphism { kind: mk.name(), detail: "first isomorphism theorem hypothesis".into() });
    }
    let kernel = f.kernel_generator();
    let kernel_is_congruence = is_congruence(a, &Partition::from_kernel(a.algebra(), kernel), kind)?.holds;
    let image = ElementSet::new(b.algebra(), f.image())?;
    let image_is_subalgebra = is_subalgebra(b, &image, kind.morphism_kind())?.holds;
    if !kernel_is_congruence {
        return Ok(FirstIsoReport { kernel, kernel_is_congruence, image_is_subalgebra, isomorphic: false, factorization_holds: false });
    }
    let q = quotient(a, &Congruence { kernel, kind })?;
    let (img, inclusion) = b.restrict(&image)?;
    let back = inverse_table(&inclusion);
    let map: Vec<Elem> = q.algebra.algebra().elements().map(|e| back[f.apply(q.lift(e)) as usize]).collect();
    let phi = BooleanMorphism::new(q.algebra.algebra(), img.algebra(), map)?;
    let isomorphic = super::is_isomorphism(&phi, &q.algebra, &img);
    let g = phi.then(&inclusion)?;
    let factorization_holds = q.projection.then(&g)? == *f && is_morphism(&g, &q.algebra, b, mk);
    Ok(FirstIsoReport { kernel, kernel_is_congruence, image_is_subalgebra, isomorphic, factorization_holds })
}

fn inverse_table(inclusion: &BooleanMorphism) -> Vec<Elem> {
    let mut back = vec![Elem::MAX; inclusion.target().size()];
    for e in inclusion.source().elements() {
        back[inclusion.apply(e) as usize] = e;
    }
    back
}

/// Kernel of `θ` restricted to a relabelled subalgebra.
fn restricted_kernel(inclusion: &BooleanMorphism, kernel: Elem) -> Elem {
    let big = inclusion.target();
    inclusion.source().elements().filter(|&e| big.leq(inclusion.apply(e), kernel)).fold(0, |acc, e| acc | e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondIsoReport {
    pub restricted_is_congruence: bool,
    pub saturation_is_subalgebra: bool,
    /// `A/θ|A → Aᶿ/θ|Aᶿ`, `[x] ↦ [x]`, is an isomorphism.
    pub isomorphic: bool,
}

impl SecondIsoReport {
    pub fn all(&self) -> bool {
        self.restricted_is_congruence && self.saturation_is_subalgebra && self.isomorphic
    }
}

pub fn second_isomorphism(
    b: &SubordinationAlgebra,
    sub: &ElementSet,
    congruence: &Congruence,
) -> Result<SecondIsoReport> {
    let alg = b.algebra();
    let kind = congruence.kind;
    if !is_subalgebra(b, sub, kind.morphism_kind())?.holds {
        return Err(Error::Hypothesis(format!("not a {} subalgebra", kind.name())));
    }
    Congruence::new(b, congruence.kernel, kind)?;
    let keep = alg.complement(congruence.kernel);

    let traces: std::collections::BTreeSet<Elem> = sub.members().iter().map(|&x| x & keep).collect();
    let saturation = ElementSet::new(alg, alg.elements().filter(|&x| traces.contains(&(x & keep))))?;
    let saturation_is_subalgebra =
        saturation.is_boolean_subalgebra() && is_subalgebra(b, &saturation, kind.morphism_kind())?.holds;

    let (a_sa, a_inc) = b.restrict(sub)?;
    let a_kernel = restricted_kernel(&a_inc, congruence.kernel);
    let restricted_is_congruence = is_congruence(&a_sa, &Partition::from_kernel(a_sa.algebra(), a_kernel), kind)?.holds;
    if !restricted_is_congruence || !saturation_is_subalgebra {
        return Ok(SecondIsoReport { restricted_is_congruence, saturation_is_subalgebra, isomorphic: false });
    }
    let (s_sa, s_inc) = b.restrict(&saturation)?;
    let s_kernel = restricted_kernel(&s_inc, congruence.kernel);
    let q1 = quotient(&a_sa, &Congruence { kernel: a_kernel, kind })?;
    let q2 = quotient(&s_sa, &Congruence { kernel: s_kernel, kind })?;
    let back = inverse_table(&s_inc);
    let map: Vec<Elem> = q1
        .algebra
        .algebra()
        .elements()
        .map(|e| q2.projection.apply(back[a_inc.apply(q1.lift(e)) as usize]))
        .collect();
    let phi = BooleanMorphism::new(q1.algebra.algebra(), q2.algebra.algebra(), map)?;
    let isomorphic = super::is_isomorphism(&phi, &q1.algebra, &q2.algebra);
    Ok(SecondIsoReport { restricted_is_congruence, saturation_is_subalgebra, isomorphic })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThirdIsoReport {
    pub quotient_congruences: usize,
    pub filter_size: usize,
    /// `e ↦ θ ∨ lift(e)` is an order isomorphism `Con(B/θ) → ↑θ`.
    pub isomorphic: bool,
}

pub fn third_isomorphism(b: &SubordinationAlgebra, congruence: &Congruence) -> Result<ThirdIsoReport> {
    let q = quotient(b, congruence)?;
    let upstairs = congruence_lattice(b, congruence.kind);
    let filter: Vec<Elem> =
        upstairs.kernels.iter().copied().filter(|&k| b.algebra().leq(congruence.kernel, k)).collect();
    let downstairs = congruence_lattice(&q.algebra, congruence.kind);
    let image: Vec<Elem> = downstairs.kernels.iter().map(|&e| congruence.kernel | q.lift(e)).collect();
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted == filter && sorted.len() == image.len();
    let alg_q = q.algebra.algebra();
    let order_iso = downstairs.kernels.iter().zip(&image).all(|(&e1, &i1)| {
        downstairs.kernels.iter().zip(&image).all(|(&e2, &i2)| alg_q.leq(e1, e2) == b.algebra().leq(i1, i2))
    });
    Ok(ThirdIsoReport {
        quotient_congruences: downstairs.len(),
        filter_size: filter.len(),
        isomorphic: bijective && order_iso,
    })
}
