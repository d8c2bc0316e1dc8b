use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::set::{OmegaPlusSet, Point};
use crate::error::{Error, Result};

/// A relation on `ω⁺` made of finitely many base pairs of naturals plus
/// uniform flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationSpec {
    #[serde(default)]
    pub base_pairs: BTreeSet<(u32, u32)>,
    /// `y R y` for every `y ∈ ω⁺`.
    #[serde(default)]
    pub diagonal: bool,
    /// `ω R y` for every `y`.
    #[serde(default)]
    pub omega_row: bool,
    /// `y R ω` for every `y`.
    #[serde(default)]
    pub omega_col: bool,
    /// `ω R ω`.
    #[serde(default)]
    pub omega_loop: bool,
}

impl RelationSpec {
    /// `y R z` iff `y = ω` or `y = z`.
    pub fn accumulation_loop() -> Self {
        RelationSpec { diagonal: true, omega_row: true, ..Default::default() }
    }

    /// `x R y` iff `y = x`, `y = ω` or `x = ω`.
    pub fn star_loop() -> Self {
        RelationSpec { diagonal: true, omega_row: true, omega_col: true, ..Default::default() }
    }

    pub fn converse(&self) -> Self {
        RelationSpec {
            base_pairs: self.base_pairs.iter().map(|&(a, b)| (b, a)).collect(),
            diagonal: self.diagonal,
            omega_row: self.omega_col,
            omega_col: self.omega_row,
            omega_loop: self.omega_loop,
        }
    }

    pub fn related(&self, x: Point, y: Point) -> bool {
        (self.diagonal && x == y)
            || (self.omega_row && x == Point::Omega)
            || (self.omega_col && y == Point::Omega)
            || (self.omega_loop && x == Point::Omega && y == Point::Omega)
            || matches!((x, y), (Point::Nat(a), Point::Nat(b)) if self.base_pairs.contains(&(a, b)))
    }

    /// One past the largest natural in a base pair.
    pub fn base_bound(&self) -> u32 {
        self.base_pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0)
    }

    /// `◇E = R(−,E)`.
    pub fn diamond(&self, e: &OmegaPlusSet) -> OmegaPlusSet {
        let base: Vec<u32> = self.base_pairs.iter().filter(|&&(_, b)| e.contains_nat(b)).map(|&(a, _)| a).collect();
        let mut out = OmegaPlusSet::finite(base, false);
        if self.diagonal {
            out = out.join(e);
        }
        if self.omega_row && !e.is_empty() {
            out = out.with_omega(true);
        }
        if self.omega_col && e.contains_omega() {
            out = OmegaPlusSet::full();
        }
        if self.omega_loop && e.contains_omega() {
            out = out.with_omega(true);
        }
        out
    }

    /// `◆E = R(E,−)`.
    pub fn black_diamond(&self, e: &OmegaPlusSet) -> OmegaPlusSet {
        self.converse().diamond(e)
    }

    pub fn boxed(&self, e: &OmegaPlusSet) -> OmegaPlusSet {
        self.diamond(&e.complement()).complement()
    }

    pub fn black_boxed(&self, e: &OmegaPlusSet) -> OmegaPlusSet {
        self.black_diamond(&e.complement()).complement()
    }

    /// `O ≺ U` iff `R(−,O) ⊆ U`, for clopen `O`, `U`.
    pub fn subordination_holds(&self, o: &OmegaPlusSet, u: &OmegaPlusSet) -> Result<bool> {
        if !o.is_clopen() || !u.is_clopen() {
            return Err(Error::NotClopen);
        }
        Ok(self.diamond(o).is_subset(u))
    }

    /// Whether the clopen filter `≺(a,−)` has a least element, with a strictly
    /// descending chain of members when it does not.
    pub fn nonprincipal_witness(&self, a: &OmegaPlusSet, chain_len: usize) -> Result<NonprincipalVerdict> {
        if !a.is_clopen() {
            return Err(Error::NotClopen);
        }
        let image = self.diamond(a);
        let hull = image.closure();
        if hull.is_open() {
            return Ok(NonprincipalVerdict { principal: true, least: Some(hull), chain: vec![] });
        }
        // ω ∈ hull and infinitely many naturals are missing: cut the tail ever later.
        let mut chain = Vec::with_capacity(chain_len);
        let mut missing = (0u32..).filter(|&n| !hull.contains_nat(n));
        for _ in 0..chain_len {
            let m = missing.next().expect("infinitely many missing naturals");
            let tail = OmegaPlusSet::cofinite(0..=m, true);
            chain.push(hull.join(&tail));
        }
        Ok(NonprincipalVerdict { principal: false, least: None, chain })
    }

    /// σ- and π-extensions of `◇` at a representable set together with the
    /// direct value `R(−,E)`. Closed subsets and open supersets range over
    /// the cofinal families `E ∩ [0,m)` and `E ∪ [m,∞)`.
    pub fn sigma_pi(&self, e: &OmegaPlusSet) -> SigmaPi {
        let bound = self.base_bound() as usize + e.offset() + e.period() + 1;
        let prefix = |m: u32| e.meet(&OmegaPlusSet::finite(0..m, false));
        let with_tail = |m: u32| e.join(&OmegaPlusSet::cofinite(0..m, false));
        let stable = |n: u32| n.max(bound as u32) + 1;
        let (sigma, pi) = if e.contains_omega() {
            // E is closed: σ(E) = ⋂ ◇ of its clopen supersets, and the least
            // open supersets are the same sets.
            let lim = OmegaPlusSet::tabulate(bound, e.period(), self.omega_in_all(&with_tail, bound), |n| {
                self.diamond(&with_tail(stable(n))).contains_nat(n)
            });
            (lim.clone(), lim)
        } else {
            // E is open: π(E) = ◇ on clopens inside E, i.e. its finite parts,
            // and the closed subsets are those same finite parts.
            let lim = OmegaPlusSet::tabulate(bound, e.period(), self.omega_in_some(&prefix, bound), |n| {
                self.diamond(&prefix(stable(n))).contains_nat(n)
            });
            (lim.clone(), lim)
        };
        SigmaPi { sigma, pi, direct: self.diamond(e) }
    }

    fn omega_in_all(&self, family: &dyn Fn(u32) -> OmegaPlusSet, bound: usize) -> bool {
        (0..=2 * bound as u32).all(|m| self.diamond(&family(m)).contains_omega())
    }

    fn omega_in_some(&self, family: &dyn Fn(u32) -> OmegaPlusSet, bound: usize) -> bool {
        (0..=2 * bound as u32).any(|m| self.diamond(&family(m)).contains_omega())
    }

    /// `□(cl A)` and `⋂{□O | O clopen ⊇ A}`, the two sides of the
    /// intersection lemma for `□p`.
    pub fn intersection_lemma_box(&self, a: &OmegaPlusSet) -> (OmegaPlusSet, OmegaPlusSet) {
        let lhs = self.boxed(&a.closure());
        let rhs = if a.is_clopen() {
            self.boxed(a)
        } else {
            // Clopen supersets of a non-clopen set contain ω and are cofinite;
            // `a ∪ [m,∞) ∪ {ω}` is cofinal among them.
            let bound = (self.base_bound() as usize + a.offset() + a.period() + 1) as u32;
            let member = |m: u32| a.join(&OmegaPlusSet::cofinite(0..m, true));
            let omega = (0..=2 * bound).all(|m| self.boxed(&member(m)).contains_omega());
            OmegaPlusSet::tabulate(bound as usize, a.period(), omega, |n| {
                (0..=n.max(bound) + 1).all(|m| self.boxed(&member(m)).contains_nat(n))
            })
        };
        (lhs, rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonprincipalVerdict {
    pub principal: bool,
    pub least: Option<OmegaPlusSet>,
    /// Strictly descending members of `≺(a,−)` when no least one exists.
    pub chain: Vec<OmegaPlusSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaPi {
    pub sigma: OmegaPlusSet,
    pub pi: OmegaPlusSet,
    pub direct: OmegaPlusSet,
}

impl SigmaPi {
    pub fn agree(&self) -> bool {
        self.sigma == self.pi && self.pi == self.direct
    }
}

/// The clopens whose exception set lies in `{0, …, k-1}`: finite subsets of
/// it, and cofinite sets with `ω` missing only points of it. There are
/// `2^(k+1)` of them.
pub fn bounded_clopens(k: u32) -> Vec<OmegaPlusSet> {
    let mut out = Vec::with_capacity(1 << (k + 1));
    for mask in 0u64..(1 << k) {
        let pts: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        out.push(OmegaPlusSet::finite(pts.iter().copied(), false));
        out.push(OmegaPlusSet::cofinite(pts, true));
    }
    out
}
