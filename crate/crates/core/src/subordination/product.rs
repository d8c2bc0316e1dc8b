use serde::Serialize;

use super::morphism::is_morphism;
use super::{MorphismKind, SubordinationAlgebra};
use crate::algebra::{BooleanAlgebra, BooleanMorphism, Elem, HARD_MAX_ATOMS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub algebra: SubordinationAlgebra,
    pub projections: Vec<BooleanMorphism>,
    /// Bit offset of each factor's atoms.
    pub offsets: Vec<usize>,
}

impl Product {
    pub fn component(&self, j: usize, e: Elem) -> Elem {
        self.projections[j].apply(e)
    }

    pub fn tuple(&self, parts: &[Elem]) -> Elem {
        parts.iter().zip(&self.offsets).fold(0, |acc, (&p, &off)| acc | p << off)
    }
}

/// Pointwise product: atoms are concatenated, `≺` holds componentwise.
pub fn product(family: &[SubordinationAlgebra]) -> Result<Product> {
    if family.is_empty() {
        return Err(Error::IllFormed("empty product family".into()));
    }
    let total: usize = family.iter().map(|s| s.algebra().atom_count()).sum();
    if total > HARD_MAX_ATOMS {
        return Err(Error::TooManyAtoms { requested: total, cap: HARD_MAX_ATOMS });
    }
    let alg = BooleanAlgebra::new(total)?;
    let mut offsets = Vec::with_capacity(family.len());
    let mut off = 0;
    for s in family {
        offsets.push(off);
        off += s.algebra().atom_count();
    }
    let projections: Vec<BooleanMorphism> = family
        .iter()
        .zip(&offsets)
        .map(|(s, &off)| {
            let a = s.algebra();
            BooleanMorphism::new(alg, a, alg.elements().map(|e| (e >> off) & a.top()).collect())
        })
        .collect::<Result<_>>()?;
    let prod = SubordinationAlgebra::from_fn(alg, |x, y| {
        family.iter().zip(&projections).all(|(s, p)| s.prec(p.apply(x), p.apply(y)))
    });
    Ok(Product { algebra: prod, projections, offsets })
}

/// `⟨f₁, …, fₖ⟩` into the product of the targets.
pub fn pairing(product: &Product, maps: &[BooleanMorphism]) -> Result<BooleanMorphism> {
    if maps.len() != product.projections.len() {
        return Err(Error::PartialMapping { expected: product.projections.len(), got: maps.len() });
    }
    let source = maps[0].source();
    if maps.iter().zip(&product.projections).any(|(f, p)| f.source() != source || f.target() != p.target()) {
        return Err(Error::Hypothesis("pairing of maps with mismatched ends".into()));
    }
    let map = source
        .elements()
        .map(|e| maps.iter().map(|f| f.apply(e)).collect::<Vec<_>>())
        .map(|parts| product.tuple(&parts))
        .collect();
    BooleanMorphism::new(source, product.algebra.algebra(), map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTest {
    pub projections_strong: bool,
    pub tuples_checked: usize,
    /// Tuples of morphisms whose pairing is not a morphism of the kind.
    pub failures: usize,
}

impl ProductTest {
    pub fn holds(&self) -> bool {
        self.projections_strong && self.failures == 0
    }
}

/// For at most 3 factors: every tuple of `kind` morphisms out of `test`
/// pairs to a `kind` morphism into the product, and the projections are strong.
pub fn categorical_product_test(
    family: &[SubordinationAlgebra],
    test: &SubordinationAlgebra,
    kind: MorphismKind,
) -> Result<ProductTest> {
    if family.len() > 3 {
        return Err(Error::BudgetExceeded { needed: family.len() as u128, budget: 3 });
    }
    let prod = product(family)?;
    let projections_strong =
        family.iter().zip(&prod.projections).all(|(s, p)| is_morphism(p, &prod.algebra, s, MorphismKind::Strong));
    let per_factor: Vec<Vec<BooleanMorphism>> = family
        .iter()
        .map(|s| {
            BooleanMorphism::all_between(test.algebra(), s.algebra())
                .into_iter()
                .filter(|f| is_morphism(f, test, s, kind))
                .collect()
        })
        .collect();
    let mut tuples_checked = 0;
    let mut failures = 0;
    let mut idx = vec![0usize; family.len()];
    if per_factor.iter().any(|v| v.is_empty()) {
        return Ok(ProductTest { projections_strong, tuples_checked, failures });
    }
    loop {
        let maps: Vec<BooleanMorphism> = idx.iter().zip(&per_factor).map(|(&i, v)| v[i].clone()).collect();
        let paired = pairing(&prod, &maps)?;
        tuples_checked += 1;
        let commutes = prod.projections.iter().zip(&maps).all(|(p, f)| paired.then(p).map(|c| c == *f).unwrap_or(false));
        if !commutes || !is_morphism(&paired, test, &prod.algebra, kind) {
            failures += 1;
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(ProductTest { projections_strong, tuples_checked, failures });
            }
            idx[j] += 1;
            if idx[j] < per_factor[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}
