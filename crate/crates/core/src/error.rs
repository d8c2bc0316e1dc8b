use thiserror::Error;

use crate::algebra::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra with {requested} atoms exceeds the cap of {cap}")]
    TooManyAtoms { requested: usize, cap: usize },
    #[error("an algebra needs at least one atom here (got {0})")]
    TooFewAtoms(usize),
    #[error("frame with {requested} points exceeds the cap of {cap}")]
    TooManyPoints { requested: usize, cap: usize },
    #[error("element {element:#b} does not belong to the {atoms}-atom algebra")]
    ForeignElement { element: Elem, atoms: usize },
    #[error("mapping covers {got} elements but the source has {expected}")]
    PartialMapping { expected: usize, got: usize },
    #[error("operator law `{law}` fails at {witness:?}")]
    OperatorLaw { law: &'static str, witness: Vec<Elem> },
    #[error("the element set is not closed under the Boolean operations")]
    NotBooleanSubalgebra,
    #[error("not a Boolean congruence: {0}")]
    NotBooleanCongruence(String),
    #[error("not a {kind} congruence: {detail}")]
    NotCongruence { kind: &'static str, detail: String },
    #[error("not a {kind} morphism: {detail}")]
    NotMorphism { kind: &'static str, detail: String },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("search needs {needed} cases, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("formula is neither open nor closed")]
    NotOpenOrClosed,
    #[error("formula is not g-closed")]
    NotGClosed,
    #[error("ill-formed input: {0}")]
    IllFormed(String),
    #[error("set is not clopen in the one-point compactification")]
    NotClopen,
    #[error("cannot represent: {0}")]
    Unrepresentable(String),
}
