use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use serde::Serialize;

use super::formula::Formula;
use crate::algebra::{BooleanAlgebra, Elem};
use crate::duality::{canonical_extension, modalize, CanonicalExtension};
use crate::error::{Error, Result};
use crate::frame::{KripkeFrame, PointSet};
use crate::omega::{bounded_clopens, OmegaPlusSet, RelationSpec};
use crate::subordination::{Colour, SubordinationAlgebra};

pub type Valuation<V> = BTreeMap<String, V>;

/// A complex algebra: Boolean operations plus `◇` and `◆`.
pub trait Semantics {
    type Set: Clone + PartialEq + Debug;

    fn top(&self) -> Self::Set;
    fn bottom(&self) -> Self::Set;
    fn meet(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn join(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn complement(&self, a: &Self::Set) -> Self::Set;
    fn diamond(&self, a: &Self::Set) -> Self::Set;
    fn black_diamond(&self, a: &Self::Set) -> Self::Set;

    fn eval(&self, phi: &Formula, v: &Valuation<Self::Set>) -> Result<Self::Set> {
        use Formula::*;
        Ok(match phi {
            Var(x) => v.get(x).cloned().ok_or_else(|| Error::UnboundVariable(x.clone()))?,
            Top => self.top(),
            Bot => self.bottom(),
            Not(a) => self.complement(&self.eval(a, v)?),
            And(a, b) => self.meet(&self.eval(a, v)?, &self.eval(b, v)?),
            Or(a, b) => self.join(&self.eval(a, v)?, &self.eval(b, v)?),
            Implies(a, b) => self.join(&self.complement(&self.eval(a, v)?), &self.eval(b, v)?),
            Diamond(a) => self.diamond(&self.eval(a, v)?),
            Boxed(a) => self.complement(&self.diamond(&self.complement(&self.eval(a, v)?))),
            BlackDiamond(a) => self.black_diamond(&self.eval(a, v)?),
            BlackBoxed(a) => self.complement(&self.black_diamond(&self.complement(&self.eval(a, v)?))),
        })
    }
}

/// `◇E = R(−,E)`, `◆E = R(E,−)`.
impl Semantics for KripkeFrame {
    type Set = PointSet;

    fn top(&self) -> PointSet {
        self.full()
    }
    fn bottom(&self) -> PointSet {
        0
    }
    fn meet(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a & b
    }
    fn join(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a | b
    }
    fn complement(&self, a: &PointSet) -> PointSet {
        !a & self.full()
    }
    fn diamond(&self, a: &PointSet) -> PointSet {
        KripkeFrame::diamond(self, *a)
    }
    fn black_diamond(&self, a: &PointSet) -> PointSet {
        KripkeFrame::black_diamond(self, *a)
    }
}

impl Semantics for RelationSpec {
    type Set = OmegaPlusSet;

    fn top(&self) -> OmegaPlusSet {
        OmegaPlusSet::full()
    }
    fn bottom(&self) -> OmegaPlusSet {
        OmegaPlusSet::empty()
    }
    fn meet(&self, a: &OmegaPlusSet, b: &OmegaPlusSet) -> OmegaPlusSet {
        a.meet(b)
    }
    fn join(&self, a: &OmegaPlusSet, b: &OmegaPlusSet) -> OmegaPlusSet {
        a.join(b)
    }
    fn complement(&self, a: &OmegaPlusSet) -> OmegaPlusSet {
        a.complement()
    }
    fn diamond(&self, a: &OmegaPlusSet) -> OmegaPlusSet {
        RelationSpec::diamond(self, a)
    }
    fn black_diamond(&self, a: &OmegaPlusSet) -> OmegaPlusSet {
        RelationSpec::black_diamond(self, a)
    }
}

/// A finite Boolean algebra with two operators given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAlgebra {
    pub algebra: BooleanAlgebra,
    pub diamond: Vec<Elem>,
    pub black_diamond: Vec<Elem>,
}

impl Semantics for TableAlgebra {
    type Set = Elem;

    fn top(&self) -> Elem {
        self.algebra.top()
    }
    fn bottom(&self) -> Elem {
        0
    }
    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        a & b
    }
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        a | b
    }
    fn complement(&self, a: &Elem) -> Elem {
        self.algebra.complement(*a)
    }
    fn diamond(&self, a: &Elem) -> Elem {
        self.diamond[*a as usize]
    }
    fn black_diamond(&self, a: &Elem) -> Elem {
        self.black_diamond[*a as usize]
    }
}

/// A finite subordination algebra read through its canonical extension:
/// a valuation into `B` is composed with `r` and evaluated on `Ult(B)`.
#[derive(Clone, Debug)]
pub struct AlgebraModel {
    pub algebra: SubordinationAlgebra,
    pub extension: CanonicalExtension,
}

impl AlgebraModel {
    pub fn new(s: &SubordinationAlgebra) -> Self {
        AlgebraModel { algebra: s.clone(), extension: canonical_extension(s) }
    }

    pub fn eval(&self, phi: &Formula, v: &Valuation<Elem>) -> Result<PointSet> {
        let lifted: Valuation<PointSet> = v
            .iter()
            .map(|(k, &b)| Ok((k.clone(), self.extension.r.apply(self.algebra.algebra().check(b)?))))
            .collect::<Result<_>>()?;
        self.extension.frame.eval(phi, &lifted)
    }

    pub fn holds(&self, phi: &Formula, v: &Valuation<Elem>) -> Result<bool> {
        Ok(self.eval(phi, v)? == self.extension.frame.full())
    }
}

/// Outcome of a validity sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityVerdict<V> {
    pub valid: bool,
    /// Least failing valuation, variables compared in name order.
    pub counter: Option<Valuation<V>>,
    pub valuations_checked: u128,
}

/// All assignments of `domain` to the variables of `phi`, least first;
/// stops at the first one where `holds` is false.
pub fn sweep<D: Clone>(
    phi: &Formula,
    domain: &[D],
    budget: u128,
    mut holds: impl FnMut(&Valuation<D>) -> Result<bool>,
) -> Result<ValidityVerdict<D>> {
    let vars: Vec<String> = phi.variables().into_iter().collect();
    let needed = (domain.len() as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if domain.is_empty() && !vars.is_empty() {
        return Ok(ValidityVerdict { valid: true, counter: None, valuations_checked: 0 });
    }
    let mut idx = vec![0usize; vars.len()];
    let mut checked = 0u128;
    loop {
        let v: Valuation<D> = vars.iter().cloned().zip(idx.iter().map(|&i| domain[i].clone())).collect();
        checked += 1;
        if !holds(&v)? {
            return Ok(ValidityVerdict { valid: false, counter: Some(v), valuations_checked: checked });
        }
        // The first variable is the most significant digit.
        let mut j = vars.len();
        loop {
            if j == 0 {
                return Ok(ValidityVerdict { valid: true, counter: None, valuations_checked: checked });
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < domain.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Valuation budget used when none is given.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// `B ⊨ φ`: every valuation into `B` evaluates to `1` in `Bδ`.
pub fn validity(s: &SubordinationAlgebra, phi: &Formula, budget: u128) -> Result<ValidityVerdict<Elem>> {
    let model = AlgebraModel::new(s);
    let domain: Vec<Elem> = s.algebra().elements().collect();
    sweep(phi, &domain, budget, |v| model.holds(phi, v))
}

/// Kripke validity over all valuations of point sets.
pub fn frame_validity(frame: &KripkeFrame, phi: &Formula, budget: u128) -> Result<ValidityVerdict<PointSet>> {
    let domain: Vec<PointSet> = frame.point_sets().collect();
    let full = frame.full();
    sweep(phi, &domain, budget, |v| Ok(frame.eval(phi, v)? == full))
}

/// Validity over clopens of `ω⁺` whose exceptions lie below `k`.
pub fn omega_validity(rel: &RelationSpec, phi: &Formula, k: u32, budget: u128) -> Result<ValidityVerdict<OmegaPlusSet>> {
    let domain = bounded_clopens(k);
    sweep(phi, &domain, budget, |v| Ok(rel.eval(phi, v)?.is_full()))
}

/// Scheme verdict: validity over the modal subalgebra generated by the
/// admissible values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeVerdict<V> {
    pub colour: Colour,
    pub closure_size: usize,
    pub verdict: ValidityVerdict<V>,
    /// A term generating each value of the counter-valuation.
    pub witness_terms: BTreeMap<String, String>,
}

/// `B ⊨ φ(ψ̄)` for every substitution, decided as `Bᵐ ⊨ φ` where `Bᵐ` is
/// the modalization of the colour of `φ`. `budget` caps both the closure
/// and the number of valuations.
pub fn scheme_validity(s: &SubordinationAlgebra, phi: &Formula, budget: u128) -> Result<SchemeVerdict<PointSet>> {
    let colour = phi.colour();
    let cap = usize::try_from(budget).unwrap_or(usize::MAX);
    let m = modalize(s, colour, cap)?;
    let frame = &canonical_extension(s).frame;
    let domain = m.members();
    let full = frame.full();
    let verdict = sweep(phi, &domain, budget, |v| Ok(frame.eval(phi, v)? == full))?;
    let witness_terms = witness_terms(&verdict, |e| {
        m.elements.iter().find(|g| g.element == *e).map(|g| g.term.clone()).unwrap_or_default()
    });
    Ok(SchemeVerdict { colour, closure_size: m.len(), verdict, witness_terms })
}

fn witness_terms<V>(verdict: &ValidityVerdict<V>, term: impl Fn(&V) -> String) -> BTreeMap<String, String> {
    verdict.counter.iter().flat_map(|c| c.iter().map(|(k, v)| (k.clone(), term(v)))).collect()
}

/// The sets generated from the `k`-bounded clopens by the Boolean
/// operations and the modalities of `colour`, each with a generating term.
pub fn omega_closure(
    rel: &RelationSpec,
    colour: Colour,
    k: u32,
    cap: usize,
) -> Result<(Vec<OmegaPlusSet>, HashMap<OmegaPlusSet, String>)> {
    let mut names: HashMap<OmegaPlusSet, String> = HashMap::new();
    let mut order: Vec<OmegaPlusSet> = Vec::new();
    let add = |e: OmegaPlusSet, t: String, order: &mut Vec<OmegaPlusSet>, names: &mut HashMap<OmegaPlusSet, String>| {
        if names.contains_key(&e) {
            return Ok(());
        }
        names.insert(e.clone(), t);
        order.push(e);
        if order.len() > cap {
            return Err(Error::BudgetExceeded { needed: order.len() as u128, budget: cap as u128 });
        }
        Ok(())
    };
    for c in bounded_clopens(k) {
        let t = c.to_string();
        add(c, t, &mut order, &mut names)?;
    }
    let mut i = 0;
    while i < order.len() {
        let e = order[i].clone();
        let t = names[&e].clone();
        add(e.complement(), format!("~{t}"), &mut order, &mut names)?;
        if colour != Colour::Black {
            add(rel.diamond(&e), format!("<>{t}"), &mut order, &mut names)?;
        }
        if colour != Colour::White {
            add(rel.black_diamond(&e), format!("<+>{t}"), &mut order, &mut names)?;
        }
        for j in 0..=i {
            let o = order[j].clone();
            let ot = names[&o].clone();
            add(e.meet(&o), format!("({t} & {ot})"), &mut order, &mut names)?;
            add(e.join(&o), format!("({t} | {ot})"), &mut order, &mut names)?;
        }
        i += 1;
    }
    Ok((order, names))
}

/// Scheme validity on `ω⁺`, with values of substituted formulas drawn
/// from [`omega_closure`].
pub fn omega_scheme_validity(rel: &RelationSpec, phi: &Formula, k: u32, budget: u128) -> Result<SchemeVerdict<OmegaPlusSet>> {
    let colour = phi.colour();
    let cap = usize::try_from(budget).unwrap_or(usize::MAX);
    let (domain, names) = omega_closure(rel, colour, k, cap)?;
    let verdict = sweep(phi, &domain, budget, |v| Ok(rel.eval(phi, v)?.is_full()))?;
    let witness_terms = witness_terms(&verdict, |e| names.get(e).cloned().unwrap_or_default());
    Ok(SchemeVerdict { colour, closure_size: domain.len(), verdict, witness_terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn diamond_on_small_frame() {
        let frame = KripkeFrame::from_edges(2, [(0, 1), (1, 1)]).unwrap();
        let v: Valuation<PointSet> = [("p".to_string(), 0b10)].into();
        assert_eq!(frame.eval(&f("<>p"), &v).unwrap(), 0b11);
        assert_eq!(frame.eval(&f("<+>p"), &v).unwrap(), 0b10);
        assert_eq!(frame.eval(&f("[+]~p"), &v).unwrap(), 0b01);
    }

    #[test]
    fn seriality() {
        let serial = KripkeFrame::from_edges(2, [(0, 1), (1, 1)]).unwrap();
        let dead_end = KripkeFrame::from_edges(2, [(0, 1)]).unwrap();
        for phi in ["[]p -> <>p", "p -> <><+>p"] {
            assert!(frame_validity(&serial, &f(phi), DEFAULT_BUDGET).unwrap().valid);
            let v = frame_validity(&dead_end, &f(phi), DEFAULT_BUDGET).unwrap();
            assert!(!v.valid);
            assert!(v.counter.is_some());
        }
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let frame = KripkeFrame::from_edges(1, []).unwrap();
        assert!(matches!(frame.eval(&f("p"), &Valuation::new()), Err(Error::UnboundVariable(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let frame = KripkeFrame::from_edges(3, []).unwrap();
        assert!(matches!(frame_validity(&frame, &f("p & q & r"), 10), Err(Error::BudgetExceeded { needed: 512, .. })));
    }

    #[test]
    fn accumulation_loop_formula_versus_scheme() {
        let rel = RelationSpec::accumulation_loop();
        let phi = f("p -> <>[]p");
        assert!(omega_validity(&rel, &phi, 6, DEFAULT_BUDGET).unwrap().valid);

        let e = OmegaPlusSet::finite([0], false).complement();
        let v: Valuation<OmegaPlusSet> = [("p".to_string(), e)].into();
        let psi = rel.eval(&f("p & <>~p"), &v).unwrap();
        assert_eq!(psi, OmegaPlusSet::omega_only());
        let w: Valuation<OmegaPlusSet> = [("p".to_string(), psi)].into();
        assert!(rel.eval(&f("<>[]p"), &w).unwrap().is_empty());

        let scheme = omega_scheme_validity(&rel, &phi, 6, DEFAULT_BUDGET).unwrap();
        assert!(!scheme.verdict.valid);
        assert_eq!(scheme.verdict.counter.unwrap()["p"], OmegaPlusSet::omega_only());
        assert!(!scheme.witness_terms["p"].is_empty());
    }

    #[test]
    fn finite_scheme_equals_formula_validity() {
        let s = SubordinationAlgebra::from_pairs(BooleanAlgebra::new(2).unwrap(), [(0b01, 0b01), (0b01, 0b11), (0, 0), (0, 0b01), (0, 0b10), (0, 0b11), (0b10, 0b11), (0b11, 0b11)]).unwrap();
        for phi in ["p -> <>[]p", "[]p -> p", "p -> []<+>p", "<>p -> []<>p"] {
            let a = validity(&s, &f(phi), DEFAULT_BUDGET).unwrap().valid;
            let b = scheme_validity(&s, &f(phi), DEFAULT_BUDGET).unwrap().verdict.valid;
            assert_eq!(a, b, "{phi}");
        }
    }
}
