//! First-order conditions on frames and on subordination algebras, the
//! library of known correspondences, and the `≤`/`≥` translations of open
//! and closed formulas.

mod condition;
mod frame_cond;
mod library;
mod sub_cond;
mod translate;

pub use condition::{evaluate, evaluate_closed, AtomSyntax, AtomVars, Condition, Env, Interpretation};
pub use frame_cond::{eq, eval_frame_condition, eval_frame_condition_omega, rel, FrameAtom, FrameCondition, FrameModel, OmegaModel, MAX_FRAME_VARIABLES};
pub use library::{
    builtin, builtin_library, check_equivalence, check_triple, correspondent_klmn, gap_witnesses, omega_spaces,
    CorrespondenceTriple, Divergence, EquivalenceReport, Family, GapCheck, GapWitness, LabelledFormula,
};
pub use sub_cond::{eval_sub_condition, eval_sub_condition_with, leq, perp, prec, SubAtom, SubCondition, SubModel, Term};
pub use translate::{hypothesis_name, translate_g_closed, translate_geq, translate_leq, FreshVar, Polarity, Translation};
