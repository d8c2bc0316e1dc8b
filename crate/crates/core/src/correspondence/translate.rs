use std::collections::BTreeSet;

use serde::Serialize;

use super::condition::Condition;
use super::sub_cond::{leq, prec, SubCondition, Term};
use crate::error::{Error, Result};
use crate::logic::{classify, g_closed_decomposition, Formula};

/// Which side of the hypothesis variable: `q` or `¬q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn term(self, q: &str) -> Term {
        match self {
            Polarity::Positive => Term::var(q),
            Polarity::Negative => Term::var(q).neg(),
        }
    }
}

/// One variable introduced by the translation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreshVar {
    pub name: String,
    pub quantifier: &'static str,
    pub clause: &'static str,
    pub subformula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Translation {
    /// The hypothesis variable `q`.
    pub hypothesis: String,
    pub polarity: Polarity,
    pub condition: SubCondition,
    pub fresh: Vec<FreshVar>,
}

struct Translator {
    taken: BTreeSet<String>,
    next: usize,
    fresh: Vec<FreshVar>,
}

fn literal_term(f: &Formula) -> Option<Term> {
    match f {
        Formula::Var(p) => Some(Term::var(p)),
        Formula::Not(a) => match a.as_ref() {
            Formula::Var(p) => Some(Term::var(p).neg()),
            _ => None,
        },
        Formula::Top => Some(Term::Top),
        Formula::Bot => Some(Term::Bot),
        _ => None,
    }
}

fn is_open_nnf(f: &Formula) -> bool {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => is_open_nnf(a) && is_open_nnf(b),
        Formula::Boxed(a) | Formula::BlackBoxed(a) => is_open_nnf(a),
        _ => literal_term(f).is_some(),
    }
}

impl Translator {
    fn new(phi: &Formula, hypothesis: &str) -> Self {
        let mut taken = phi.variables();
        taken.insert(hypothesis.to_string());
        Translator { taken, next: 0, fresh: Vec::new() }
    }

    fn fresh(&mut self, quantifier: &'static str, clause: &'static str, sub: &Formula) -> String {
        loop {
            self.next += 1;
            let name = format!("r{}", self.next);
            if self.taken.insert(name.clone()) {
                self.fresh.push(FreshVar { name: name.clone(), quantifier, clause, subformula: sub.to_string() });
                return name;
            }
        }
    }

    /// `t ⊆ φ` for `φ` open in normal form.
    fn geq_open(&mut self, f: &Formula, t: &Term) -> SubCondition {
        if let Some(l) = literal_term(f) {
            return leq(t.clone(), l);
        }
        match f {
            Formula::Or(a, b) => {
                let r = self.fresh("∃", "∨", a);
                let s = self.fresh("∃", "∨", b);
                let body = self
                    .geq_open(a, &Term::var(&r))
                    .and(self.geq_open(b, &Term::var(&s)))
                    .and(leq(t.clone(), Term::var(&r).join(Term::var(&s))));
                Condition::Exists(vec![r, s], Box::new(body))
            }
            Formula::And(a, b) => self.geq_open(a, t).and(self.geq_open(b, t)),
            Formula::Boxed(a) => {
                if let Some(l) = literal_term(a) {
                    return prec(1, l.neg(), t.clone().neg());
                }
                let r = self.fresh("∃", "□", f);
                let body = self.geq_open(a, &Term::var(&r).neg()).and(prec(1, Term::var(&r), t.clone().neg()));
                Condition::Exists(vec![r], Box::new(body))
            }
            Formula::BlackBoxed(a) => {
                if let Some(l) = literal_term(a) {
                    return prec(1, t.clone(), l);
                }
                let r = self.fresh("∃", "■", f);
                let body = self.geq_open(a, &Term::var(&r).neg()).and(prec(1, t.clone(), Term::var(&r).neg()));
                Condition::Exists(vec![r], Box::new(body))
            }
            _ => unreachable!("open normal forms only"),
        }
    }

    /// `φ ⊆ t` for `φ` open in normal form: every element below `φ` is below `t`.
    fn leq_open(&mut self, f: &Formula, t: &Term) -> SubCondition {
        if let Some(l) = literal_term(f) {
            return leq(l, t.clone());
        }
        match f {
            Formula::Or(a, b) => self.leq_open(a, t).and(self.leq_open(b, t)),
            Formula::And(a, b) => {
                let r = self.fresh("∀", "∧", f);
                let rt = Term::var(&r);
                let body = self.geq_open(a, &rt).and(self.geq_open(b, &rt)).implies(leq(rt, t.clone()));
                Condition::Forall(vec![r], Box::new(body))
            }
            Formula::Boxed(_) | Formula::BlackBoxed(_) => {
                let clause = if matches!(f, Formula::Boxed(_)) { "□" } else { "■" };
                let r = self.fresh("∀", clause, f);
                let rt = Term::var(&r);
                let body = self.geq_open(f, &rt).implies(leq(rt, t.clone()));
                Condition::Forall(vec![r], Box::new(body))
            }
            _ => unreachable!("open normal forms only"),
        }
    }

    fn geq(&mut self, f: &Formula, t: &Term) -> Result<SubCondition> {
        let n = f.nnf();
        if is_open_nnf(&n) {
            return Ok(self.geq_open(&n, t));
        }
        let neg = f.clone().not().nnf();
        if is_open_nnf(&neg) {
            return Ok(self.leq_open(&neg, &t.clone().neg()));
        }
        Err(Error::NotOpenOrClosed)
    }

    fn leq(&mut self, f: &Formula, t: &Term) -> Result<SubCondition> {
        let n = f.nnf();
        if is_open_nnf(&n) {
            return Ok(self.leq_open(&n, t));
        }
        let neg = f.clone().not().nnf();
        if is_open_nnf(&neg) {
            return Ok(self.geq_open(&neg, &t.clone().neg()));
        }
        Err(Error::NotOpenOrClosed)
    }
}

/// A hypothesis name not occurring in `phi`: `q`, then `q'`, `q''`, ...
pub fn hypothesis_name(phi: &Formula) -> String {
    let vars = phi.variables();
    let mut q = "q".to_string();
    while vars.contains(&q) {
        q.push('\'');
    }
    q
}

/// `q± → φ` as a first-order condition, for `φ` open or closed.
pub fn translate_geq(phi: &Formula, polarity: Polarity) -> Result<Translation> {
    let q = hypothesis_name(phi);
    let mut tr = Translator::new(phi, &q);
    let condition = tr.geq(phi, &polarity.term(&q))?;
    Ok(Translation { hypothesis: q, polarity, condition, fresh: tr.fresh })
}

/// `φ → q±` as a first-order condition, for `φ` open or closed.
pub fn translate_leq(phi: &Formula, polarity: Polarity) -> Result<Translation> {
    let q = hypothesis_name(phi);
    let mut tr = Translator::new(phi, &q);
    let condition = tr.leq(phi, &polarity.term(&q))?;
    Ok(Translation { hypothesis: q, polarity, condition, fresh: tr.fresh })
}

/// `q± → ξ` for g-closed `ξ = φ(ψ̄)`: for all elements `c̄` above the
/// closed parts `ψ̄`, `q± → φ(c̄)`.
pub fn translate_g_closed(xi: &Formula, polarity: Polarity) -> Result<Translation> {
    if !classify(xi).g_closed {
        return Err(Error::NotGClosed);
    }
    if classify(xi).closed {
        return translate_geq(xi, polarity);
    }
    let q = hypothesis_name(xi);
    let mut prefix = "c".to_string();
    while xi.variables().iter().any(|v| v.starts_with(&prefix)) || q.starts_with(&prefix) {
        prefix.push('_');
    }
    let d = g_closed_decomposition(xi, &prefix).ok_or(Error::NotGClosed)?;
    let mut tr = Translator::new(xi, &q);
    tr.taken.extend(d.parts.iter().map(|(n, _)| n.clone()));
    let mut hyps = Vec::new();
    for (name, psi) in &d.parts {
        hyps.push(tr.leq(psi, &Term::var(name))?);
        tr.fresh.push(FreshVar { name: name.clone(), quantifier: "∀", clause: "decomposition", subformula: psi.to_string() });
    }
    let body = tr.geq(&d.skeleton, &polarity.term(&q))?;
    let names = d.parts.iter().map(|(n, _)| n.clone()).collect();
    let condition = Condition::Forall(names, Box::new(Condition::all(hyps).implies(body)));
    Ok(Translation { hypothesis: q, polarity, condition, fresh: tr.fresh })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn atomic_cases() {
        assert_eq!(translate_geq(&f("[]p"), Polarity::Positive).unwrap().condition.to_string(), "-p < -q");
        assert_eq!(translate_geq(&f("p"), Polarity::Positive).unwrap().condition.to_string(), "q <= p");
        assert_eq!(translate_geq(&f("[+]p"), Polarity::Negative).unwrap().condition.to_string(), "-q < p");
        assert_eq!(translate_leq(&f("p"), Polarity::Positive).unwrap().condition.to_string(), "p <= q");
    }

    #[test]
    fn disjunction_uses_fresh_witnesses() {
        let t = translate_geq(&f("[]p | []q"), Polarity::Positive).unwrap();
        assert_eq!(t.hypothesis, "q'");
        assert_eq!(t.condition.to_string(), "E r1, r2. -p < -r1 & -q < -r2 & q' <= r1 + r2");
        assert_eq!(t.fresh.len(), 2);
        assert!(t.fresh.iter().all(|v| v.clause == "∨" && v.quantifier == "∃"));
    }

    #[test]
    fn fresh_names_avoid_formula_variables() {
        let t = translate_geq(&f("[](r1 | [][]r2)"), Polarity::Positive).unwrap();
        let names: Vec<&str> = t.fresh.iter().map(|v| v.name.as_str()).collect();
        assert!(!names.contains(&"r1") && !names.contains(&"r2"));
    }

    #[test]
    fn closed_goes_through_negation() {
        let t = translate_geq(&f("<>p"), Polarity::Positive).unwrap();
        assert_eq!(t.condition.to_string(), "A r1. p < -r1 -> r1 <= -q");
        assert!(matches!(translate_geq(&f("<>[]p"), Polarity::Positive), Err(Error::NotOpenOrClosed)));
    }

    #[test]
    fn g_closed() {
        let t = translate_g_closed(&f("[]<>p"), Polarity::Positive).unwrap();
        assert!(t.condition.to_string().starts_with("A c1. "));
        assert!(matches!(translate_g_closed(&f("<>[]p"), Polarity::Positive), Err(Error::NotGClosed)));
        let closed = translate_g_closed(&f("<>p"), Polarity::Positive).unwrap();
        assert_eq!(closed, translate_geq(&f("<>p"), Polarity::Positive).unwrap());
    }
}
