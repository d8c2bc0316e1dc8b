//! Finite Kripke frames, which double as finite subordination spaces.
//!
//! Point sets are bitmasks over point indices, so a frame can have at most
//! [`MAX_FRAME_POINTS`] points.

use serde::Serialize;

use crate::algebra::Elem;
use crate::error::{Error, Result};
use crate::relation::PairSet;
use crate::subordination::MorphismKind;

pub const MAX_FRAME_POINTS: usize = 16;

/// Default user-facing cap; brute-force equivalence checks enumerate all
/// relations on this many points.
pub const DEFAULT_MAX_POINTS: usize = 5;

pub type PointSet = Elem;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    labels: Vec<String>,
    rel: PairSet,
}

impl std::fmt::Debug for KripkeFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<(&str, &str)> = self.edges().map(|(x, y)| (self.label(x), self.label(y))).collect();
        f.debug_struct("KripkeFrame").field("points", &self.labels).field("edges", &edges).finish()
    }
}

impl KripkeFrame {
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_FRAME_POINTS {
            return Err(Error::TooManyPoints { requested: n, cap: MAX_FRAME_POINTS });
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::IllFormed(format!("duplicate point `{dup}`")));
        }
        let mut rel = PairSet::empty(n);
        for (x, y) in edges {
            if x >= n || y >= n {
                return Err(Error::UnknownPoint(format!("#{}", x.max(y))));
            }
            rel.insert(x, y);
        }
        Ok(KripkeFrame { labels, rel })
    }

    /// Points labelled `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        KripkeFrame::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| f(x, y)).collect();
        KripkeFrame::from_edges(n, edges)
    }

    pub fn from_named(points: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let labels: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownPoint(name.into()));
        let idx: Vec<(usize, usize)> = edges.iter().map(|&(x, y)| Ok((find(x)?, find(y)?))).collect::<Result<_>>()?;
        KripkeFrame::new(labels, idx)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownPoint(name.into()))
    }

    pub fn relation(&self) -> &PairSet {
        &self.rel
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rel.contains(x, y)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.pairs()
    }

    pub fn full(&self) -> PointSet {
        ((1u64 << self.len()) - 1) as PointSet
    }

    pub fn point_sets(&self) -> impl Iterator<Item = PointSet> + Clone {
        0..=self.full()
    }

    /// `R(x,−)`.
    pub fn successors(&self, x: usize) -> PointSet {
        (0..self.len()).filter(|&y| self.related(x, y)).fold(0, |acc, y| acc | 1 << y)
    }

    /// `R(−,y)`.
    pub fn predecessors(&self, y: usize) -> PointSet {
        (0..self.len()).filter(|&x| self.related(x, y)).fold(0, |acc, x| acc | 1 << x)
    }

    /// `◇E = R(−,E)`.
    pub fn diamond(&self, e: PointSet) -> PointSet {
        (0..self.len()).filter(|&x| self.successors(x) & e != 0).fold(0, |acc, x| acc | 1 << x)
    }

    /// `◆E = R(E,−)`.
    pub fn black_diamond(&self, e: PointSet) -> PointSet {
        (0..self.len()).filter(|&y| self.predecessors(y) & e != 0).fold(0, |acc, y| acc | 1 << y)
    }

    pub fn boxed(&self, e: PointSet) -> PointSet {
        !self.diamond(!e & self.full()) & self.full()
    }

    pub fn black_boxed(&self, e: PointSet) -> PointSet {
        !self.black_diamond(!e & self.full()) & self.full()
    }

    pub fn converse(&self) -> KripkeFrame {
        KripkeFrame { labels: self.labels.clone(), rel: self.rel.converse() }
    }

    /// `Rᵏ`, with `R⁰` the identity.
    pub fn power(&self, k: usize) -> PairSet {
        (0..k).fold(PairSet::identity(self.len()), |acc, _| acc.compose(&self.rel))
    }

    /// Induced subframe on `subset`, with the inclusion.
    pub fn restrict(&self, subset: PointSet) -> Result<(KripkeFrame, FrameMorphism)> {
        if subset & !self.full() != 0 {
            return Err(Error::UnknownPoint(format!("mask {subset:#b}")));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|i| subset >> i & 1 == 1).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut rel = PairSet::empty(keep.len());
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.related(x, y) {
                    rel.insert(i, j);
                }
            }
        }
        let sub = KripkeFrame { labels, rel };
        let inc = FrameMorphism::new(sub.clone(), self.clone(), keep)?;
        Ok((sub, inc))
    }

    /// Quotient by a point labelling: classes are related when some members
    /// are. Class labels join member labels with `/`.
    pub fn quotient(&self, class_of: &[usize]) -> Result<(KripkeFrame, FrameMorphism)> {
        if class_of.len() != self.len() {
            return Err(Error::PartialMapping { expected: self.len(), got: class_of.len() });
        }
        let mut reps: Vec<usize> = class_of.to_vec();
        reps.sort_unstable();
        reps.dedup();
        let index = |c: usize| reps.binary_search(&c).expect("present");
        let labels = reps
            .iter()
            .map(|&c| {
                (0..self.len()).filter(|&x| class_of[x] == c).map(|x| self.labels[x].as_str()).collect::<Vec<_>>().join("/")
            })
            .collect();
        let edges: Vec<(usize, usize)> = self.edges().map(|(x, y)| (index(class_of[x]), index(class_of[y]))).collect();
        let q = KripkeFrame::new(labels, edges)?;
        let map = (0..self.len()).map(|x| index(class_of[x])).collect();
        let pi = FrameMorphism::new(self.clone(), q.clone(), map)?;
        Ok((q, pi))
    }

    /// Disjoint union with its injections; labels are prefixed by the summand index
    /// when two summands share one.
    pub fn disjoint_union(frames: &[KripkeFrame]) -> Result<(KripkeFrame, Vec<FrameMorphism>)> {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        let mut offsets = Vec::new();
        let clash = {
            let mut seen = std::collections::HashSet::new();
            frames.iter().flat_map(|f| f.labels.iter()).any(|l| !seen.insert(l))
        };
        for (j, f) in frames.iter().enumerate() {
            let off = labels.len();
            offsets.push(off);
            labels.extend(f.labels.iter().map(|l| if clash { format!("{j}.{l}") } else { l.clone() }));
            edges.extend(f.edges().map(|(x, y)| (x + off, y + off)));
        }
        let sum = KripkeFrame::new(labels, edges)?;
        let injections = frames
            .iter()
            .zip(&offsets)
            .map(|(f, &off)| FrameMorphism::new(f.clone(), sum.clone(), (0..f.len()).map(|x| x + off).collect()))
            .collect::<Result<_>>()?;
        Ok((sum, injections))
    }

    /// A bijection `σ` with `x R y ⇔ σx R' σy`, by exhaustive search.
    pub fn find_isomorphism(&self, other: &KripkeFrame) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.rel.len() != other.rel.len() {
            return None;
        }
        let mut perm: Vec<usize> = (0..self.len()).collect();
        let mut found = None;
        crate::subordination::permute(&mut perm, 0, &mut |p: &[usize]| {
            let ok = self.edges().all(|(x, y)| other.related(p[x], p[y]));
            if ok {
                found = Some(p.to_vec());
            }
            ok
        });
        found
    }

    pub fn is_isomorphic(&self, other: &KripkeFrame) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Pointwise Kripke forcing: `x ⊨ ◇φ` iff some `y` with `x R y` forces `φ`.
    /// Used as an oracle for the set-based evaluators.
    pub fn forces(&self, x: usize, f: &dyn Fn(usize) -> bool, white: bool) -> bool {
        (0..self.len()).any(|y| if white { self.related(x, y) } else { self.related(y, x) } && f(y))
    }
}

/// A point map between finite frames.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameMorphism {
    source: KripkeFrame,
    target: KripkeFrame,
    map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameMorphismReport {
    pub kind: MorphismKind,
    /// Least `(x, y)` failing each demanded axiom.
    pub w: Option<(usize, usize)>,
    pub diamond: Option<(usize, usize)>,
    pub black_diamond: Option<(usize, usize)>,
}

impl FrameMorphismReport {
    pub fn holds(&self) -> bool {
        self.w.is_none() && self.diamond.is_none() && self.black_diamond.is_none()
    }
}

impl FrameMorphism {
    pub fn new(source: KripkeFrame, target: KripkeFrame, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::PartialMapping { expected: source.len(), got: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownPoint(format!("#{bad}")));
        }
        Ok(FrameMorphism { source, target, map })
    }

    pub fn identity(frame: &KripkeFrame) -> Self {
        FrameMorphism { source: frame.clone(), target: frame.clone(), map: (0..frame.len()).collect() }
    }

    pub fn source(&self) -> &KripkeFrame {
        &self.source
    }

    pub fn target(&self) -> &KripkeFrame {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `h⁻¹(E)`.
    pub fn preimage(&self, e: PointSet) -> PointSet {
        (0..self.source.len()).filter(|&x| e >> self.map[x] & 1 == 1).fold(0, |acc, x| acc | 1 << x)
    }

    /// `k ∘ self`.
    pub fn then(&self, k: &FrameMorphism) -> Result<FrameMorphism> {
        if self.target != k.source {
            return Err(Error::Hypothesis("composition of mismatched frame maps".into()));
        }
        FrameMorphism::new(self.source.clone(), k.target.clone(), self.map.iter().map(|&y| k.apply(y)).collect())
    }

    pub fn check(&self, kind: MorphismKind) -> FrameMorphismReport {
        let (s, t, h) = (&self.source, &self.target, &self.map);
        let w = s.edges().find(|&(x, y)| !t.related(h[x], h[y]));
        let diamond = if kind.needs_white() {
            (0..s.len()).find_map(|x| {
                (0..t.len())
                    .find(|&y| t.related(h[x], y) && !(0..s.len()).any(|z| h[z] == y && s.related(x, z)))
                    .map(|y| (x, y))
            })
        } else {
            None
        };
        let black_diamond = if kind.needs_black() {
            (0..s.len()).find_map(|x| {
                (0..t.len())
                    .find(|&y| t.related(y, h[x]) && !(0..s.len()).any(|z| h[z] == y && s.related(z, x)))
                    .map(|y| (x, y))
            })
        } else {
            None
        };
        FrameMorphismReport { kind, w, diamond, black_diamond }
    }

    pub fn is_morphism(&self, kind: MorphismKind) -> bool {
        self.check(kind).holds()
    }

    /// Every point map between two frames.
    pub fn all_between(source: &KripkeFrame, target: &KripkeFrame) -> Vec<FrameMorphism> {
        let (m, n) = (source.len(), target.len());
        if n == 0 {
            return if m == 0 { vec![FrameMorphism::identity(source)] } else { vec![] };
        }
        (0..n.pow(m as u32))
            .map(|mut code| {
                let map = (0..m)
                    .map(|_| {
                        let d = code % n;
                        code /= n;
                        d
                    })
                    .collect();
                FrameMorphism { source: source.clone(), target: target.clone(), map }
            })
            .collect()
    }
}
