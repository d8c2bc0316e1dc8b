//! Dualities between finite subordination algebras and finite frames.
//!
//! Ultrafilters of a powerset algebra are the principal filters at atoms, so
//! `Ult(S)` has one point per atom and a point set of `Ult(S)` is again an
//! atom mask. The canonical extension `Sδ = P(Ult S)` therefore lives on the
//! same masks as `S`, and `r(b)` is numerically `b`; everything here is still
//! computed from the defining formulas so the identities are checked, not
//! assumed.

use serde::Serialize;

use crate::algebra::{BooleanAlgebra, BooleanMorphism, Elem, ElementSet, HARD_MAX_ATOMS};
use crate::error::{Error, Result};
use crate::frame::{FrameMorphism, KripkeFrame, PointSet};
use crate::subordination::{check_morphism, product, Colour, MorphismKind, SubordinationAlgebra};

/// The principal ultrafilter at each atom, as an element set.
fn ultrafilters(alg: BooleanAlgebra) -> Vec<ElementSet> {
    alg.atoms().map(|a| alg.up(a)).collect()
}

/// `x R y` iff `≺(y,−) ⊆ x`, where `≺(y,−)` is the union of `≺(b,−)` over `b ∈ y`.
pub fn ult(s: &SubordinationAlgebra) -> KripkeFrame {
    let alg = s.algebra();
    let us = ultrafilters(alg);
    let n = us.len();
    KripkeFrame::from_fn(n, |x, y| {
        us[y].members().iter().all(|&b| alg.elements().filter(|&c| s.prec(b, c)).all(|c| us[x].contains(c)))
    })
    .expect("atom count is within the frame cap")
}

/// `O ≺ U` iff `R(−,O) ⊆ U`.
pub fn of(frame: &KripkeFrame) -> Result<SubordinationAlgebra> {
    if frame.len() > HARD_MAX_ATOMS {
        return Err(Error::TooManyAtoms { requested: frame.len(), cap: HARD_MAX_ATOMS });
    }
    let alg = BooleanAlgebra::new(frame.len())?;
    Ok(SubordinationAlgebra::from_fn(alg, |o, u| alg.leq(frame.diamond(o), u)))
}

/// Discrete dual: `α R β` iff `β ≺ b ⇒ α ≤ b` for every `b`.
pub fn at(s: &SubordinationAlgebra) -> KripkeFrame {
    let alg = s.algebra();
    let atoms: Vec<Elem> = alg.atoms().collect();
    KripkeFrame::from_fn(atoms.len(), |x, y| {
        alg.elements().filter(|&b| s.prec(atoms[y], b)).all(|b| alg.leq(atoms[x], b))
    })
    .expect("atom count is within the frame cap")
}

/// Complex algebra of a frame: `E ≺ F` iff `R(−,E) ⊆ F`.
pub fn pset(frame: &KripkeFrame) -> Result<SubordinationAlgebra> {
    of(frame)
}

fn require_morphism(f: &BooleanMorphism, s: &SubordinationAlgebra, t: &SubordinationAlgebra, kind: MorphismKind) -> Result<()> {
    let report = check_morphism(f, s, t, kind)?;
    if let Some(law) = report.boolean_violation {
        return Err(Error::NotMorphism { kind: kind.name(), detail: format!("Boolean law {law:?} fails") });
    }
    if let Some((ax, w)) = report.first_failure() {
        return Err(Error::NotMorphism { kind: kind.name(), detail: format!("{ax:?} fails at {w:?}") });
    }
    Ok(())
}

/// `Ult(f): Ult(C) → Ult(B)`, `y ↦ f⁻¹(y)`.
pub fn ult_morphism(
    f: &BooleanMorphism,
    source: &SubordinationAlgebra,
    target: &SubordinationAlgebra,
    kind: MorphismKind,
) -> Result<FrameMorphism> {
    require_morphism(f, source, target, kind)?;
    let (b, c) = (source.algebra(), target.algebra());
    let ub = ultrafilters(b);
    let map = ultrafilters(c)
        .iter()
        .map(|y| {
            let pre = ElementSet::new(b, b.elements().filter(|&e| y.contains(f.apply(e))))?;
            ub.iter().position(|x| *x == pre).ok_or_else(|| Error::Hypothesis("preimage is not an ultrafilter".into()))
        })
        .collect::<Result<_>>()?;
    FrameMorphism::new(ult(target), ult(source), map)
}

/// `Of(h): Of(Y) → Of(X)`, `O ↦ h⁻¹(O)`.
pub fn of_morphism(h: &FrameMorphism, kind: MorphismKind) -> Result<BooleanMorphism> {
    let report = h.check(kind);
    if !report.holds() {
        return Err(Error::NotMorphism { kind: kind.name(), detail: format!("{report:?}") });
    }
    preimage_morphism(h)
}

fn preimage_morphism(h: &FrameMorphism) -> Result<BooleanMorphism> {
    let x = BooleanAlgebra::new(h.source().len())?;
    let y = BooleanAlgebra::new(h.target().len())?;
    BooleanMorphism::new(y, x, y.elements().map(|o| h.preimage(o)).collect())
}

/// `At(f): At(C) → At(B)`, `α ↦ ∧{b | α ≤ f(b)}`.
pub fn at_morphism(
    f: &BooleanMorphism,
    source: &SubordinationAlgebra,
    target: &SubordinationAlgebra,
    kind: MorphismKind,
) -> Result<FrameMorphism> {
    require_morphism(f, source, target, kind)?;
    let (b, c) = (source.algebra(), target.algebra());
    let map = c
        .atoms()
        .map(|alpha| {
            let m = b.elements().filter(|&e| c.leq(alpha, f.apply(e))).fold(b.top(), |acc, e| acc & e);
            if b.is_atom(m) {
                Ok(m.trailing_zeros() as usize)
            } else {
                Err(Error::Hypothesis("meet is not an atom".into()))
            }
        })
        .collect::<Result<_>>()?;
    FrameMorphism::new(at(target), at(source), map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalExtension {
    pub frame: KripkeFrame,
    pub extension: SubordinationAlgebra,
    /// `r(b) = {x ∈ Ult(S) | b ∈ x}`.
    pub r: BooleanMorphism,
    pub injective: bool,
    /// `b ≺ c ⇒ r(b) ≺ r(c)`.
    pub preserves: bool,
    /// `r(b) ≺ r(c) ⇒ b ≺ c`.
    pub reflects: bool,
}

impl CanonicalExtension {
    pub fn weak_embedding(&self) -> bool {
        self.injective && self.preserves && self.reflects
    }
}

pub fn canonical_extension(s: &SubordinationAlgebra) -> CanonicalExtension {
    let frame = ult(s);
    let extension = pset(&frame).expect("same atom count");
    let alg = s.algebra();
    let us = ultrafilters(alg);
    let map: Vec<Elem> = alg
        .elements()
        .map(|b| us.iter().enumerate().filter(|(_, x)| x.contains(b)).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    let r = BooleanMorphism::new(alg, extension.algebra(), map).expect("point masks");
    let injective = r.is_injective();
    let pairs = || alg.elements().flat_map(|b| alg.elements().map(move |c| (b, c)));
    let preserves = pairs().all(|(b, c)| !s.prec(b, c) || extension.prec(r.apply(b), r.apply(c)));
    let reflects = pairs().all(|(b, c)| !extension.prec(r.apply(b), r.apply(c)) || s.prec(b, c));
    CanonicalExtension { frame, extension, r, injective, preserves, reflects }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaFactorization {
    pub g: BooleanMorphism,
    pub commutes: bool,
    pub g_weak: bool,
    pub g_white: bool,
    /// Number of weak morphisms `Sδ → C` with `g ∘ r = f`.
    pub solutions: usize,
}

/// The weak `g: Sδ → C` with `g ∘ r = f`, built as the discrete dual of
/// `Ult(f) ∘ j` with `j: At(C) → Ult(C)` sending an atom to its principal
/// ultrafilter.
pub fn factor_through_delta(
    f: &BooleanMorphism,
    s: &SubordinationAlgebra,
    c: &SubordinationAlgebra,
) -> Result<DeltaFactorization> {
    let ult_f = ult_morphism(f, s, c, MorphismKind::Weak)?;
    let ext = canonical_extension(s);
    let at_c = at(c);
    let uc = ult(c);
    // j is the identity on indices: the atom α_i generates the i-th ultrafilter.
    let j = FrameMorphism::new(at_c.clone(), uc, (0..at_c.len()).collect())?;
    let h = FrameMorphism::new(at_c, ext.frame.clone(), j.then(&ult_f)?.map().to_vec())?;
    let g = preimage_morphism(&h)?;
    let g = BooleanMorphism::new(ext.extension.algebra(), c.algebra(), g.map().to_vec())?;
    let commutes = ext.r.then(&g)? == *f;
    let g_weak = check_morphism(&g, &ext.extension, c, MorphismKind::Weak)?.holds();
    let g_white = check_morphism(&g, &ext.extension, c, MorphismKind::White)?.holds();
    let solutions = BooleanMorphism::all_between(ext.extension.algebra(), c.algebra())
        .into_iter()
        .filter(|cand| {
            ext.r.then(cand).map(|comp| comp == *f).unwrap_or(false)
                && check_morphism(cand, &ext.extension, c, MorphismKind::Weak).map(|r| r.holds()).unwrap_or(false)
        })
        .count();
    Ok(DeltaFactorization { g, commutes, g_weak, g_white, solutions })
}

/// A generated element together with a term producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generated {
    pub element: Elem,
    pub term: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Modalization {
    pub colour: Colour,
    /// Members of `Sδ` in the closure, sorted, each with a generating term.
    pub elements: Vec<Generated>,
    pub extension_size: usize,
}

impl Modalization {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_whole_extension(&self) -> bool {
        self.elements.len() == self.extension_size
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.binary_search_by_key(&e, |g| g.element).is_ok()
    }

    pub fn members(&self) -> Vec<Elem> {
        self.elements.iter().map(|g| g.element).collect()
    }
}

/// Closure of `r(B)` in `Sδ` under the Boolean operations and `◇E = R(−,E)`
/// (white), `◆E = R(E,−)` (black) or both. `budget` caps the closure size.
pub fn modalize(s: &SubordinationAlgebra, colour: Colour, budget: usize) -> Result<Modalization> {
    let ext = canonical_extension(s);
    let frame = &ext.frame;
    let full = frame.full();
    let mut terms: std::collections::BTreeMap<Elem, String> = Default::default();
    let mut queue: std::collections::VecDeque<Elem> = Default::default();
    let add = |e: Elem, term: String, terms: &mut std::collections::BTreeMap<Elem, String>, queue: &mut std::collections::VecDeque<Elem>| -> Result<()> {
        if let std::collections::btree_map::Entry::Vacant(v) = terms.entry(e) {
            v.insert(term);
            queue.push_back(e);
            if terms.len() > budget {
                return Err(Error::BudgetExceeded { needed: terms.len() as u128, budget: budget as u128 });
            }
        }
        Ok(())
    };
    for b in s.algebra().elements() {
        add(ext.r.apply(b), format!("r({})", mask_text(b)), &mut terms, &mut queue)?;
    }
    while let Some(e) = queue.pop_front() {
        let t = terms[&e].clone();
        add(!e & full, format!("~{t}"), &mut terms, &mut queue)?;
        if colour != Colour::Black {
            add(frame.diamond(e), format!("<>{t}"), &mut terms, &mut queue)?;
        }
        if colour != Colour::White {
            add(frame.black_diamond(e), format!("<+>{t}"), &mut terms, &mut queue)?;
        }
        let snapshot: Vec<(Elem, String)> = terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (o, ot) in snapshot {
            add(e & o, format!("({t} & {ot})"), &mut terms, &mut queue)?;
            add(e | o, format!("({t} | {ot})"), &mut terms, &mut queue)?;
        }
    }
    let elements = terms.into_iter().map(|(element, term)| Generated { element, term }).collect();
    Ok(Modalization { colour, elements, extension_size: ext.extension.algebra().size() })
}

/// `{i, j, …}` for an atom mask.
pub fn mask_text(e: Elem) -> String {
    let parts: Vec<String> = BooleanAlgebra::atom_indices(e).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `fδ = P(Ult f): Sδ → Cδ`.
pub fn delta_lift(f: &BooleanMorphism, s: &SubordinationAlgebra, c: &SubordinationAlgebra, kind: MorphismKind) -> Result<BooleanMorphism> {
    let h = ult_morphism(f, s, c, kind)?;
    preimage_morphism(&h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMapReport {
    /// `(ΠAⱼ)δ → Π(Aⱼδ)`, pairing of the lifted projections.
    pub map: BooleanMorphism,
    pub bijective: bool,
    /// Injective on the white modalization.
    pub good: bool,
    /// Injective on the bimodalization.
    pub s_good: bool,
}

pub fn canonical_product_map(family: &[SubordinationAlgebra]) -> Result<ProductMapReport> {
    let prod = product(family)?;
    let exts: Vec<SubordinationAlgebra> = family.iter().map(|a| canonical_extension(a).extension).collect();
    let target = product(&exts)?;
    let lifted: Vec<BooleanMorphism> = family
        .iter()
        .zip(&prod.projections)
        .map(|(a, p)| delta_lift(p, &prod.algebra, a, MorphismKind::Strong))
        .collect::<Result<_>>()?;
    // The lifts start at (ΠAⱼ)δ, whose masks coincide with ΠAⱼ.
    let source = canonical_extension(&prod.algebra).extension.algebra();
    let map: Vec<Elem> = source.elements().map(|e| target.tuple(&lifted.iter().map(|l| l.apply(e)).collect::<Vec<_>>())).collect();
    let map = BooleanMorphism::new(source, target.algebra.algebra(), map)?;
    let budget = source.size();
    let injective_on = |m: &Modalization| {
        let mut images: Vec<Elem> = m.members().iter().map(|&e| map.apply(e)).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == m.len()
    };
    let good = injective_on(&modalize(&prod.algebra, Colour::White, budget)?);
    let s_good = injective_on(&modalize(&prod.algebra, Colour::Bi, budget)?);
    let bijective = map.is_injective() && map.is_surjective();
    Ok(ProductMapReport { map, bijective, good, s_good })
}

/// The σ- and π-extensions of `a ↦ ⋀≺(a,−)` at a point set `E` of
/// `Ult(S)`, evaluated from their defining meets and joins. Every subset is
/// clopen here, so closed and open sets range over all masks.
pub fn sigma_pi_extension(s: &SubordinationAlgebra, e: PointSet) -> Result<(PointSet, PointSet)> {
    let alg = s.algebra();
    alg.check(e)?;
    let ext = canonical_extension(s);
    let r = |b: Elem| ext.r.apply(b);
    let full = ext.frame.full();
    // ◇ on the image of B: ⋂{r(b) | a ≺ b}.
    let base = |a: Elem| alg.elements().filter(|&b| s.prec(a, b)).fold(full, |acc, b| acc & r(b));
    // σ on a closed K: ⋂{◇a | K ⊆ r(a)}.
    let on_closed = |k: PointSet| alg.elements().filter(|&a| k & !r(a) == 0).fold(full, |acc, a| acc & base(a));
    // π on an open O: ⋃{◇a | r(a) ⊆ O}.
    let on_open = |o: PointSet| alg.elements().filter(|&a| r(a) & !o == 0).fold(0, |acc, a| acc | base(a));
    let subsets_of = |m: PointSet| (0..=full).filter(move |k| k & !m == 0);
    let supersets_of = |m: PointSet| (0..=full).filter(move |o| m & !o == 0);
    let sigma = subsets_of(e).fold(0, |acc, k| acc | on_closed(k));
    let pi = supersets_of(e).fold(full, |acc, o| acc & on_open(o));
    Ok((sigma, pi))
}
