use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First-order sentence over an atom language `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition<A> {
    Atom(A),
    True,
    False,
    Not(Box<Condition<A>>),
    And(Box<Condition<A>>, Box<Condition<A>>),
    Or(Box<Condition<A>>, Box<Condition<A>>),
    Implies(Box<Condition<A>>, Box<Condition<A>>),
    Exists(Vec<String>, Box<Condition<A>>),
    Forall(Vec<String>, Box<Condition<A>>),
}

/// Variables an atom reads.
pub trait AtomVars {
    fn vars(&self, out: &mut BTreeSet<String>);
}

impl<A> Condition<A> {
    pub fn atom(a: A) -> Self {
        Condition::Atom(a)
    }
    pub fn not(self) -> Self {
        Condition::Not(Box::new(self))
    }
    pub fn and(self, o: Self) -> Self {
        Condition::And(Box::new(self), Box::new(o))
    }
    pub fn or(self, o: Self) -> Self {
        Condition::Or(Box::new(self), Box::new(o))
    }
    pub fn implies(self, o: Self) -> Self {
        Condition::Implies(Box::new(self), Box::new(o))
    }
    pub fn exists(vars: &[&str], body: Self) -> Self {
        Condition::Exists(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }
    pub fn forall(vars: &[&str], body: Self) -> Self {
        Condition::Forall(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }

    /// Conjunction of a list; `True` when empty.
    pub fn all(items: impl IntoIterator<Item = Self>) -> Self {
        items.into_iter().reduce(|a, b| a.and(b)).unwrap_or(Condition::True)
    }

    /// Longest chain of nested bound variables.
    pub fn quantifier_depth(&self) -> usize {
        use Condition::*;
        match self {
            Atom(_) | True | False => 0,
            Not(a) => a.quantifier_depth(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Exists(v, a) | Forall(v, a) => v.len() + a.quantifier_depth(),
        }
    }

    pub fn atoms(&self) -> Vec<&A> {
        use Condition::*;
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(c) = stack.pop() {
            match c {
                Atom(a) => out.push(a),
                True | False => {}
                Not(a) | Exists(_, a) | Forall(_, a) => stack.push(a),
                And(a, b) | Or(a, b) | Implies(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }
}

impl<A: AtomVars> Condition<A> {
    pub fn free_variables(&self) -> BTreeSet<String> {
        use Condition::*;
        let mut out = BTreeSet::new();
        match self {
            Atom(a) => a.vars(&mut out),
            True | False => {}
            Not(a) => out = a.free_variables(),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                out = a.free_variables();
                out.extend(b.free_variables());
            }
            Exists(v, a) | Forall(v, a) => {
                out = a.free_variables();
                for x in v {
                    out.remove(x);
                }
            }
        }
        out
    }
}

/// An interpretation of atoms over a finite universe.
pub trait Interpretation<A> {
    type Val: Copy;
    fn universe(&self) -> &[Self::Val];
    fn atom(&self, a: &A, env: &Env<Self::Val>) -> Result<bool>;
}

/// Variable assignment, innermost binding last.
#[derive(Clone, Debug, Default)]
pub struct Env<V> {
    bindings: Vec<(String, V)>,
}

impl<V: Copy> Env<V> {
    pub fn new() -> Self {
        Env { bindings: Vec::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, V)>) -> Self {
        Env { bindings: pairs.into_iter().collect() }
    }

    pub fn get(&self, name: &str) -> Result<V> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn push(&mut self, name: &str, v: V) {
        self.bindings.push((name.to_string(), v));
    }

    fn pop(&mut self) {
        self.bindings.pop();
    }
}

/// Evaluates `c` under `env`; unbound variables are errors.
pub fn evaluate<A, I: Interpretation<A>>(c: &Condition<A>, interp: &I, env: &mut Env<I::Val>) -> Result<bool> {
    use Condition::*;
    Ok(match c {
        Atom(a) => interp.atom(a, env)?,
        True => true,
        False => false,
        Not(a) => !evaluate(a, interp, env)?,
        And(a, b) => evaluate(a, interp, env)? && evaluate(b, interp, env)?,
        Or(a, b) => evaluate(a, interp, env)? || evaluate(b, interp, env)?,
        Implies(a, b) => !evaluate(a, interp, env)? || evaluate(b, interp, env)?,
        Exists(vars, body) => quantify(vars, body, interp, env, true)?,
        Forall(vars, body) => !quantify(vars, body, interp, env, false)?,
    })
}

/// Searches for an assignment of `vars` making `body` equal to `want`.
fn quantify<A, I: Interpretation<A>>(
    vars: &[String],
    body: &Condition<A>,
    interp: &I,
    env: &mut Env<I::Val>,
    want: bool,
) -> Result<bool> {
    let Some((first, rest)) = vars.split_first() else {
        return Ok(evaluate(body, interp, env)? == want);
    };
    for &v in interp.universe() {
        env.push(first, v);
        let found = quantify(rest, body, interp, env, want);
        env.pop();
        if found? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Evaluates a closed sentence, refusing deeper nesting than `max_bound`.
pub fn evaluate_closed<A: AtomVars, I: Interpretation<A>>(c: &Condition<A>, interp: &I, max_bound: usize) -> Result<bool> {
    if let Some(v) = c.free_variables().into_iter().next() {
        return Err(Error::UnboundVariable(v));
    }
    let depth = c.quantifier_depth();
    if depth > max_bound {
        return Err(Error::IllFormed(format!("{depth} nested quantified variables exceed the cap of {max_bound}")));
    }
    evaluate(c, interp, &mut Env::new())
}

// ---------------------------------------------------------------- text

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    Sym(&'static str),
}

pub(crate) fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    const SYMBOLS: &[(&str, &str)] = &[
        ("_|_", "_|_"),
        ("->", "->"),
        ("<=", "<="),
        ("(", "("),
        (")", ")"),
        (",", ","),
        (".", "."),
        (":", "."),
        ("~", "~"),
        ("&", "&"),
        ("|", "|"),
        ("=", "="),
        ("<", "<"),
        ("^", "^"),
        ("-", "-"),
        ("*", "*"),
        ("+", "+"),
        ("¬", "~"),
        ("∧", "&"),
        ("∨", "|"),
        ("→", "->"),
        ("≤", "<="),
        ("≺", "<"),
        ("⊥", "_|_"),
        ("∀", "A"),
        ("∃", "E"),
    ];
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().expect("non-empty");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if let Some(&(src, sym)) = SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) {
            let tok = if sym == "A" || sym == "E" { Tok::Ident(sym.to_string()) } else { Tok::Sym(sym) };
            out.push((i, tok));
            i += src.len();
        } else if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let n = rest[..len].parse().map_err(|_| Error::Parse { pos: i, msg: "number too large".into() })?;
            out.push((i, Tok::Num(n)));
            i += len;
        } else if c.is_alphabetic() || c == '_' {
            let len = rest.find(|ch: char| !(ch.is_alphanumeric() || ch == '_' || ch == '\'')).unwrap_or(rest.len());
            out.push((i, Tok::Ident(rest[..len].to_string())));
            i += len;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

pub struct Parser {
    toks: Vec<(usize, Tok)>,
    pub(crate) pos: usize,
    end: usize,
}

/// Words with a fixed meaning that cannot name variables.
pub(crate) const RESERVED: &[&str] = &["A", "E", "R", "T", "F"];

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.end)
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    pub(crate) fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.error(format!("expected `{sym}`"))
        }
    }

    pub(crate) fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn variable(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected a variable"),
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        match self.peek() {
            Some(&Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected a number"),
        }
    }

    /// `^k` after a relation symbol; `1` when absent.
    pub(crate) fn exponent(&mut self) -> Result<usize> {
        if self.eat("^") {
            self.number()
        } else {
            Ok(1)
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

/// Atom syntax plugged into the shared connective grammar.
pub trait AtomSyntax: Sized {
    fn parse_atom(p: &mut Parser) -> Result<Self>;
    /// Whether the token after a parenthesised group continues an atom.
    fn continues_atom(tok: Option<&Tok>) -> bool;
    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl<A: AtomSyntax> Condition<A> {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser::new(text)?;
        let c = parse_implies(&mut p)?;
        p.finish()?;
        Ok(c)
    }
}

fn parse_implies<A: AtomSyntax>(p: &mut Parser) -> Result<Condition<A>> {
    let lhs = parse_or(p)?;
    if p.eat("->") {
        Ok(lhs.implies(parse_implies(p)?))
    } else {
        Ok(lhs)
    }
}

fn parse_or<A: AtomSyntax>(p: &mut Parser) -> Result<Condition<A>> {
    let mut lhs = parse_and(p)?;
    while p.eat("|") {
        lhs = lhs.or(parse_and(p)?);
    }
    Ok(lhs)
}

fn parse_and<A: AtomSyntax>(p: &mut Parser) -> Result<Condition<A>> {
    let mut lhs = parse_unary(p)?;
    while p.eat("&") {
        lhs = lhs.and(parse_unary(p)?);
    }
    Ok(lhs)
}

fn parse_unary<A: AtomSyntax>(p: &mut Parser) -> Result<Condition<A>> {
    if p.eat("~") {
        return Ok(parse_unary(p)?.not());
    }
    for (word, exists) in [("A", false), ("E", true)] {
        if matches!(p.peek(), Some(Tok::Ident(s)) if s == word) && matches!(p.peek_at(1), Some(Tok::Ident(_))) {
            p.pos += 1;
            let mut vars = vec![p.variable()?];
            while p.eat(",") {
                vars.push(p.variable()?);
            }
            // The dot may be dropped before a nested quantifier.
            let nested = matches!(p.peek(), Some(Tok::Ident(s)) if s == "A" || s == "E");
            if !p.eat(".") && !nested {
                return p.error("expected `.`");
            }
            let body = Box::new(parse_implies(p)?);
            return Ok(if exists { Condition::Exists(vars, body) } else { Condition::Forall(vars, body) });
        }
    }
    if p.eat_word("T") {
        return Ok(Condition::True);
    }
    if p.eat_word("F") {
        return Ok(Condition::False);
    }
    if matches!(p.peek(), Some(Tok::Sym("("))) {
        let save = p.pos;
        p.pos += 1;
        if let Ok(inner) = parse_implies::<A>(p) {
            if p.eat(")") && !A::continues_atom(p.peek()) {
                return Ok(inner);
            }
        }
        p.pos = save;
    }
    Ok(Condition::Atom(A::parse_atom(p)?))
}

fn prec<A>(c: &Condition<A>) -> u8 {
    match c {
        Condition::Exists(..) | Condition::Forall(..) => 0,
        Condition::Implies(..) => 1,
        Condition::Or(..) => 2,
        Condition::And(..) => 3,
        _ => 4,
    }
}

struct Shown<'a, A>(&'a Condition<A>, u8);

impl<A: AtomSyntax> fmt::Display for Shown<'_, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Shown(c, min) = *self;
        let wrap = prec(c) < min;
        if wrap {
            f.write_str("(")?;
        }
        match c {
            Condition::Atom(a) => a.fmt_atom(f)?,
            Condition::True => f.write_str("T")?,
            Condition::False => f.write_str("F")?,
            Condition::Not(a) => write!(f, "~{}", Shown(a, 4))?,
            Condition::And(a, b) => write!(f, "{} & {}", Shown(a, 3), Shown(b, 4))?,
            Condition::Or(a, b) => write!(f, "{} | {}", Shown(a, 2), Shown(b, 3))?,
            Condition::Implies(a, b) => write!(f, "{} -> {}", Shown(a, 2), Shown(b, 1))?,
            Condition::Exists(v, a) => write!(f, "E {}. {}", v.join(", "), Shown(a, 0))?,
            Condition::Forall(v, a) => write!(f, "A {}. {}", v.join(", "), Shown(a, 0))?,
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<A: AtomSyntax> fmt::Display for Condition<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Shown(self, 0).fmt(f)
    }
}

impl<A: AtomSyntax> std::str::FromStr for Condition<A> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Condition::parse(s)
    }
}
