use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::condition::{evaluate_closed, AtomSyntax, AtomVars, Condition, Env, Interpretation, Parser, Tok};
use crate::error::Result;
use crate::frame::KripkeFrame;
use crate::omega::{Point, RelationSpec};
use crate::relation::PairSet;

/// `x Rᵏ y` or `x = y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameAtom {
    Rel { k: usize, x: String, y: String },
    Eq(String, String),
}

pub type FrameCondition = Condition<FrameAtom>;

/// Most nested quantified variables a frame condition may use.
pub const MAX_FRAME_VARIABLES: usize = 6;

pub fn rel(k: usize, x: &str, y: &str) -> FrameCondition {
    Condition::Atom(FrameAtom::Rel { k, x: x.into(), y: y.into() })
}

pub fn eq(x: &str, y: &str) -> FrameCondition {
    Condition::Atom(FrameAtom::Eq(x.into(), y.into()))
}

impl AtomVars for FrameAtom {
    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            FrameAtom::Rel { x, y, .. } | FrameAtom::Eq(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
        }
    }
}

impl AtomSyntax for FrameAtom {
    fn parse_atom(p: &mut Parser) -> Result<Self> {
        let x = p.variable()?;
        if p.eat("=") {
            return Ok(FrameAtom::Eq(x, p.variable()?));
        }
        if !p.eat_word("R") {
            return p.error("expected `R` or `=`");
        }
        let k = p.exponent()?;
        Ok(FrameAtom::Rel { k, x, y: p.variable()? })
    }

    fn continues_atom(_tok: Option<&Tok>) -> bool {
        false
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameAtom::Rel { k: 1, x, y } => write!(f, "{x} R {y}"),
            FrameAtom::Rel { k, x, y } => write!(f, "{x} R^{k} {y}"),
            FrameAtom::Eq(x, y) => write!(f, "{x} = {y}"),
        }
    }
}

fn max_power(c: &FrameCondition) -> usize {
    c.atoms().iter().map(|a| if let FrameAtom::Rel { k, .. } = a { *k } else { 0 }).max().unwrap_or(0)
}

/// A finite frame with the relation powers a condition needs.
pub struct FrameModel<'a> {
    pub frame: &'a KripkeFrame,
    powers: Vec<PairSet>,
    universe: Vec<usize>,
}

impl<'a> FrameModel<'a> {
    pub fn new(frame: &'a KripkeFrame, max_k: usize) -> Self {
        let powers = (0..=max_k).map(|k| frame.power(k)).collect();
        FrameModel { frame, powers, universe: (0..frame.len()).collect() }
    }
}

impl Interpretation<FrameAtom> for FrameModel<'_> {
    type Val = usize;

    fn universe(&self) -> &[usize] {
        &self.universe
    }

    fn atom(&self, a: &FrameAtom, env: &Env<usize>) -> Result<bool> {
        Ok(match a {
            FrameAtom::Rel { k, x, y } => self.powers[*k].contains(env.get(x)?, env.get(y)?),
            FrameAtom::Eq(x, y) => env.get(x)? == env.get(y)?,
        })
    }
}

pub fn eval_frame_condition(c: &FrameCondition, frame: &KripkeFrame) -> Result<bool> {
    evaluate_closed(c, &FrameModel::new(frame, max_power(c)), MAX_FRAME_VARIABLES)
}

/// `ω⁺` truncated to a window: the base naturals, enough interchangeable
/// tail naturals for every bound variable and path step, and `ω`.
pub struct OmegaModel {
    pub window: Vec<Point>,
    powers: Vec<Vec<Vec<bool>>>,
    universe: Vec<usize>,
}

impl OmegaModel {
    pub fn new(rel: &RelationSpec, bound_variables: usize, max_k: usize) -> Self {
        let naturals = rel.base_bound() as usize + bound_variables + max_k + 1;
        let window: Vec<Point> = (0..naturals as u32).map(Point::Nat).chain([Point::Omega]).collect();
        let n = window.len();
        let one: Vec<Vec<bool>> = window.iter().map(|&x| window.iter().map(|&y| rel.related(x, y)).collect()).collect();
        let mut powers = vec![(0..n).map(|i| (0..n).map(|j| i == j).collect::<Vec<bool>>()).collect::<Vec<_>>()];
        for k in 1..=max_k {
            let prev = &powers[k - 1];
            let next = (0..n).map(|i| (0..n).map(|j| (0..n).any(|m| prev[i][m] && one[m][j])).collect()).collect();
            powers.push(next);
        }
        OmegaModel { window, powers, universe: (0..n).collect() }
    }
}

impl Interpretation<FrameAtom> for OmegaModel {
    type Val = usize;

    fn universe(&self) -> &[usize] {
        &self.universe
    }

    fn atom(&self, a: &FrameAtom, env: &Env<usize>) -> Result<bool> {
        Ok(match a {
            FrameAtom::Rel { k, x, y } => self.powers[*k][env.get(x)?][env.get(y)?],
            FrameAtom::Eq(x, y) => env.get(x)? == env.get(y)?,
        })
    }
}

/// Exact evaluation on the symbolic space: naturals past the base pairs
/// are interchangeable, so a window with one spare per variable suffices.
pub fn eval_frame_condition_omega(c: &FrameCondition, rel: &RelationSpec) -> Result<bool> {
    let model = OmegaModel::new(rel, c.quantifier_depth(), max_power(c));
    evaluate_closed(c, &model, MAX_FRAME_VARIABLES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn c(s: &str) -> FrameCondition {
        FrameCondition::parse(s).unwrap()
    }

    #[test]
    fn round_trip() {
        for s in [
            "A x. x R x",
            "A x, y, z. x R^2 y & x R^0 z -> E u. y R u & z R u",
            "A x. E y. x R y & (A w. y R w -> w = x)",
            "~(x R y | T) & F",
        ] {
            let once = c(s);
            assert_eq!(c(&once.to_string()), once, "{s}");
        }
        assert_eq!(c("∀x ∃y. x R y").to_string(), "A x. E y. x R y");
    }

    #[test]
    fn reflexivity_on_identity_frame() {
        let id = KripkeFrame::from_edges(3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(eval_frame_condition(&c("A x. x R x"), &id).unwrap());
        let chain = KripkeFrame::from_edges(2, [(0, 1)]).unwrap();
        assert!(!eval_frame_condition(&c("A x. x R x"), &chain).unwrap());
        assert!(!eval_frame_condition(&c("E x, y. x R^2 y"), &chain).unwrap());
    }

    #[test]
    fn free_variables_and_depth_are_rejected() {
        let f = KripkeFrame::from_edges(1, []).unwrap();
        assert!(matches!(eval_frame_condition(&c("x R x"), &f), Err(Error::UnboundVariable(_))));
        let deep = c("A a, b, c, d, e, f, g. a = a");
        assert!(matches!(eval_frame_condition(&deep, &f), Err(Error::IllFormed(_))));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(FrameCondition::parse("A x. x S x"), Err(Error::Parse { pos: 7, .. })));
        assert!(FrameCondition::parse("A R. R R R").is_err());
    }

    #[test]
    fn unicolour_gap_frame_and_quotient() {
        let cond = c("A x, y, z, u. x R y & z R y & z R u -> x R u");
        let x = KripkeFrame::from_named(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d"), ("c", "e")]).unwrap();
        assert!(eval_frame_condition(&cond, &x).unwrap());
        let (q, _) = x.quotient(&[0, 1, 2, 1, 3]).unwrap();
        assert!(!eval_frame_condition(&cond, &q).unwrap());
    }

    #[test]
    fn omega_window() {
        let acc = RelationSpec::accumulation_loop();
        assert!(eval_frame_condition_omega(&c("A x. E y. x R y"), &acc).unwrap());
        assert!(eval_frame_condition_omega(&c("A x. x R x"), &acc).unwrap());
        assert!(!eval_frame_condition_omega(&c("A x, y. x R y -> y R x"), &acc).unwrap());
        let dcb = c("A x. E y. x R y & (A w. y R w -> w = x)");
        assert!(!eval_frame_condition_omega(&dcb, &acc).unwrap());
        let star = RelationSpec::star_loop();
        assert!(eval_frame_condition_omega(&c("A x, y. x R^2 y"), &star).unwrap());
    }
}
