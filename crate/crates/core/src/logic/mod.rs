//! Modal formulas in `◇ □ ◆ ■`, their syntactic classes, and validity on
//! frames, subordination algebras and the one-point compactification.

mod classify;
mod eval;
mod formula;
mod tense;

pub use classify::{classify, g_closed_decomposition, GClosedDecomposition, SyntaxClass};
pub use eval::{
    frame_validity, omega_closure, omega_scheme_validity, omega_validity, scheme_validity, sweep, validity,
    AlgebraModel, SchemeVerdict, Semantics, TableAlgebra, Valuation, ValidityVerdict, DEFAULT_BUDGET,
};
pub use formula::Formula;
pub use tense::{check_tense, check_tense_frame, check_tense_table, tense_axioms, BimodalFrame, TenseReport};
