use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::condition::{evaluate, evaluate_closed, AtomSyntax, AtomVars, Condition, Env, Interpretation, Parser, Tok};
use crate::algebra::Elem;
use crate::error::Result;
use crate::relation::PairSet;
use crate::subordination::SubordinationAlgebra;

/// Boolean term over element variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Var(String),
    Top,
    Bot,
    Not(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// Complement, cancelling a double one.
    pub fn neg(self) -> Term {
        match self {
            Term::Not(t) => *t,
            Term::Top => Term::Bot,
            Term::Bot => Term::Top,
            t => Term::Not(Box::new(t)),
        }
    }

    pub fn meet(self, o: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(o))
    }

    pub fn join(self, o: Term) -> Term {
        Term::Join(Box::new(self), Box::new(o))
    }

    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Top | Term::Bot => {}
            Term::Not(a) => a.vars(out),
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn eval(&self, s: &SubordinationAlgebra, env: &Env<Elem>) -> Result<Elem> {
        let alg = s.algebra();
        Ok(match self {
            Term::Var(v) => env.get(v)?,
            Term::Top => alg.top(),
            Term::Bot => 0,
            Term::Not(a) => alg.complement(a.eval(s, env)?),
            Term::Meet(a, b) => a.eval(s, env)? & b.eval(s, env)?,
            Term::Join(a, b) => a.eval(s, env)? | b.eval(s, env)?,
        })
    }

    fn parse(p: &mut Parser) -> Result<Term> {
        let mut lhs = Term::parse_meet(p)?;
        while p.eat("+") {
            lhs = lhs.join(Term::parse_meet(p)?);
        }
        Ok(lhs)
    }

    fn parse_meet(p: &mut Parser) -> Result<Term> {
        let mut lhs = Term::parse_unary(p)?;
        while p.eat("*") {
            lhs = lhs.meet(Term::parse_unary(p)?);
        }
        Ok(lhs)
    }

    fn parse_unary(p: &mut Parser) -> Result<Term> {
        if p.eat("-") {
            return Ok(Term::Not(Box::new(Term::parse_unary(p)?)));
        }
        if p.eat("(") {
            let t = Term::parse(p)?;
            p.expect(")")?;
            return Ok(t);
        }
        match p.peek() {
            Some(Tok::Num(1)) => {
                p.pos += 1;
                Ok(Term::Top)
            }
            Some(Tok::Num(0)) => {
                p.pos += 1;
                Ok(Term::Bot)
            }
            _ => Ok(Term::Var(p.variable()?)),
        }
    }

    fn show(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let level = match self {
            Term::Join(..) => 0,
            Term::Meet(..) => 1,
            _ => 2,
        };
        if level < min {
            f.write_str("(")?;
        }
        match self {
            Term::Var(v) => f.write_str(v)?,
            Term::Top => f.write_str("1")?,
            Term::Bot => f.write_str("0")?,
            Term::Not(a) => {
                f.write_str("-")?;
                a.show(f, 2)?;
            }
            Term::Meet(a, b) => {
                a.show(f, 1)?;
                f.write_str(" * ")?;
                b.show(f, 2)?;
            }
            Term::Join(a, b) => {
                a.show(f, 0)?;
                f.write_str(" + ")?;
                b.show(f, 1)?;
            }
        }
        if level < min {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.show(f, 0)
    }
}

/// `a ≤ b`, `a = b`, `a ≺ᵏ b`, or `a ⊥ᵏ b` (read as `a ≺ᵏ ¬b`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubAtom {
    Leq(Term, Term),
    Eq(Term, Term),
    Prec { k: usize, a: Term, b: Term },
    Perp { k: usize, a: Term, b: Term },
}

pub type SubCondition = Condition<SubAtom>;

pub fn leq(a: Term, b: Term) -> SubCondition {
    Condition::Atom(SubAtom::Leq(a, b))
}

pub fn prec(k: usize, a: Term, b: Term) -> SubCondition {
    Condition::Atom(SubAtom::Prec { k, a, b })
}

pub fn perp(k: usize, a: Term, b: Term) -> SubCondition {
    Condition::Atom(SubAtom::Perp { k, a, b })
}

impl AtomVars for SubAtom {
    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            SubAtom::Leq(a, b) | SubAtom::Eq(a, b) | SubAtom::Prec { a, b, .. } | SubAtom::Perp { a, b, .. } => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

impl AtomSyntax for SubAtom {
    fn parse_atom(p: &mut Parser) -> Result<Self> {
        let a = Term::parse(p)?;
        if p.eat("<=") {
            return Ok(SubAtom::Leq(a, Term::parse(p)?));
        }
        if p.eat("=") {
            return Ok(SubAtom::Eq(a, Term::parse(p)?));
        }
        if p.eat("<") {
            let k = p.exponent()?;
            return Ok(SubAtom::Prec { k, a, b: Term::parse(p)? });
        }
        if p.eat("_|_") {
            let k = p.exponent()?;
            return Ok(SubAtom::Perp { k, a, b: Term::parse(p)? });
        }
        p.error("expected `<=`, `=`, `<` or `_|_`")
    }

    fn continues_atom(tok: Option<&Tok>) -> bool {
        matches!(tok, Some(Tok::Sym("<=" | "=" | "<" | "_|_" | "+" | "*")))
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = |k: &usize, sym: &str| if *k == 1 { sym.to_string() } else { format!("{sym}^{k}") };
        match self {
            SubAtom::Leq(a, b) => write!(f, "{a} <= {b}"),
            SubAtom::Eq(a, b) => write!(f, "{a} = {b}"),
            SubAtom::Prec { k, a, b } => write!(f, "{a} {} {b}", rel(k, "<")),
            SubAtom::Perp { k, a, b } => write!(f, "{a} {} {b}", rel(k, "_|_")),
        }
    }
}

fn max_power(c: &SubCondition) -> usize {
    c.atoms()
        .iter()
        .map(|a| match a {
            SubAtom::Prec { k, .. } | SubAtom::Perp { k, .. } => *k,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// A finite subordination algebra with the powers of `≺` a condition needs.
pub struct SubModel<'a> {
    pub algebra: &'a SubordinationAlgebra,
    powers: Vec<PairSet>,
    universe: Vec<Elem>,
}

impl<'a> SubModel<'a> {
    pub fn new(s: &'a SubordinationAlgebra, max_k: usize) -> Self {
        SubModel { algebra: s, powers: (0..=max_k).map(|k| s.power(k)).collect(), universe: s.algebra().elements().collect() }
    }

    pub fn for_condition(s: &'a SubordinationAlgebra, c: &SubCondition) -> Self {
        Self::new(s, max_power(c))
    }
}

impl Interpretation<SubAtom> for SubModel<'_> {
    type Val = Elem;

    fn universe(&self) -> &[Elem] {
        &self.universe
    }

    fn atom(&self, atom: &SubAtom, env: &Env<Elem>) -> Result<bool> {
        let s = self.algebra;
        Ok(match atom {
            SubAtom::Leq(a, b) => {
                let (a, b) = (a.eval(s, env)?, b.eval(s, env)?);
                a & !b == 0
            }
            SubAtom::Eq(a, b) => a.eval(s, env)? == b.eval(s, env)?,
            SubAtom::Prec { k, a, b } => self.powers[*k].contains(a.eval(s, env)? as usize, b.eval(s, env)? as usize),
            SubAtom::Perp { k, a, b } => {
                let nb = s.algebra().complement(b.eval(s, env)?);
                self.powers[*k].contains(a.eval(s, env)? as usize, nb as usize)
            }
        })
    }
}

pub fn eval_sub_condition(c: &SubCondition, s: &SubordinationAlgebra) -> Result<bool> {
    evaluate_closed(c, &SubModel::for_condition(s, c), usize::MAX)
}

/// Evaluates with the free variables bound by `env`.
pub fn eval_sub_condition_with(c: &SubCondition, s: &SubordinationAlgebra, env: &[(String, Elem)]) -> Result<bool> {
    evaluate(c, &SubModel::for_condition(s, c), &mut Env::from_pairs(env.iter().cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BooleanAlgebra;
    use crate::error::Error;

    fn c(s: &str) -> SubCondition {
        SubCondition::parse(s).unwrap()
    }

    #[test]
    fn round_trip() {
        for s in [
            "A a. a <^0 a",
            "A a, b. a _|_ b & b _|_ a -> E c. a < c & b _|_ c",
            "A a, b, c. -a <^2 -b & a _|_^0 c -> E d. b <^2 d & c _|_^1 d",
            "(a + b) * -c <= 1 | -(a * b) = 0",
            "A r. (r < -q) -> r <= p + -p",
        ] {
            let once = c(s);
            assert_eq!(c(&once.to_string()), once, "{s}");
        }
        assert_eq!(c("A a. (a) <= a").to_string(), "A a. a <= a");
        assert_eq!(c("∀a. ¬a ≺ a ∨ a ⊥ a").to_string(), "A a. ~a < a | a _|_ a");
    }

    #[test]
    fn order_power_is_reflexive() {
        let s = SubordinationAlgebra::order(BooleanAlgebra::new(2).unwrap());
        assert!(eval_sub_condition(&c("A a. a <^0 a"), &s).unwrap());
        assert!(eval_sub_condition(&c("A a. a < a"), &s).unwrap());
        assert!(!eval_sub_condition(&c("A a. a _|_ a"), &s).unwrap());
        assert!(eval_sub_condition(&c("A a. a _|_ -a"), &s).unwrap());
    }

    #[test]
    fn free_variables() {
        let s = SubordinationAlgebra::order(BooleanAlgebra::new(1).unwrap());
        assert!(matches!(eval_sub_condition(&c("p <= q"), &s), Err(Error::UnboundVariable(_))));
        let env = [("p".to_string(), 0), ("q".to_string(), 1)];
        assert!(eval_sub_condition_with(&c("p <= q"), &s, &env).unwrap());
    }
}
