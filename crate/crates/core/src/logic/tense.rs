use serde::Serialize;

use super::eval::{sweep, Semantics, ValidityVerdict};
use super::formula::Formula;
use crate::algebra::Elem;
use crate::error::{Error, Result};
use crate::frame::{KripkeFrame, PointSet};

/// Two relations on one set of points: `◇` reads the white one and `◆`
/// the black one, both in the usual Kripke way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodalFrame {
    pub white: KripkeFrame,
    pub black: KripkeFrame,
}

impl BimodalFrame {
    pub fn new(white: KripkeFrame, black: KripkeFrame) -> Result<Self> {
        if white.len() != black.len() {
            return Err(Error::IllFormed(format!(
                "relations on {} and {} points",
                white.len(),
                black.len()
            )));
        }
        Ok(BimodalFrame { white, black })
    }

    /// The bimodal frame a single relation induces: black is the converse.
    pub fn of(frame: &KripkeFrame) -> Self {
        BimodalFrame { white: frame.clone(), black: frame.converse() }
    }

    pub fn black_is_converse(&self) -> bool {
        self.black.relation() == &self.white.relation().converse()
    }
}

impl Semantics for BimodalFrame {
    type Set = PointSet;

    fn top(&self) -> PointSet {
        self.white.full()
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
        !a & self.white.full()
    }
    fn diamond(&self, a: &PointSet) -> PointSet {
        self.white.diamond(*a)
    }
    fn black_diamond(&self, a: &PointSet) -> PointSet {
        self.black.diamond(*a)
    }
}

/// Each tense axiom with its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TenseReport<V> {
    pub k_white: ValidityVerdict<V>,
    pub k_black: ValidityVerdict<V>,
    /// `p → □◆p`
    pub t1: ValidityVerdict<V>,
    /// `◆□p → p`
    pub t2: ValidityVerdict<V>,
}

impl<V> TenseReport<V> {
    pub fn is_tense(&self) -> bool {
        self.k_white.valid && self.k_black.valid && self.t1.valid && self.t2.valid
    }
}

pub fn tense_axioms() -> [Formula; 4] {
    let parse = |s: &str| Formula::parse(s).expect("fixed axiom text");
    [
        parse("[](p -> q) -> ([]p -> []q)"),
        parse("[+](p -> q) -> ([+]p -> [+]q)"),
        parse("p -> []<+>p"),
        parse("<+>[]p -> p"),
    ]
}

/// Checks the tense axioms over every valuation drawn from `domain`.
pub fn check_tense<S: Semantics>(model: &S, domain: &[S::Set], budget: u128) -> Result<TenseReport<S::Set>> {
    let top = model.top();
    let [kw, kb, t1, t2] = tense_axioms();
    let run = |phi: &Formula| sweep(phi, domain, budget, |v| Ok(model.eval(phi, v)? == top));
    Ok(TenseReport { k_white: run(&kw)?, k_black: run(&kb)?, t1: run(&t1)?, t2: run(&t2)? })
}

pub fn check_tense_frame(frame: &BimodalFrame, budget: u128) -> Result<TenseReport<PointSet>> {
    let domain: Vec<PointSet> = frame.white.point_sets().collect();
    check_tense(frame, &domain, budget)
}

pub fn check_tense_table(table: &super::eval::TableAlgebra, budget: u128) -> Result<TenseReport<Elem>> {
    let domain: Vec<Elem> = table.algebra.elements().collect();
    check_tense(table, &domain, budget)
}
