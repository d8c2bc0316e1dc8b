use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subordination::Colour;

/// Bimodal formulas. `◇E = R(−,E)` and `◆E = R(E,−)`; `□`, `■` and `→`
/// are kept as nodes for display but reduce to `¬◇¬`, `¬◆¬` and `¬a ∨ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Diamond(Box<Formula>),
    Boxed(Box<Formula>),
    BlackDiamond(Box<Formula>),
    BlackBoxed(Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn var(name: &str) -> Self {
        Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Implies(Box::new(self), Box::new(other))
    }

    pub fn diamond(self) -> Self {
        Diamond(Box::new(self))
    }

    pub fn boxed(self) -> Self {
        Boxed(Box::new(self))
    }

    pub fn black_diamond(self) -> Self {
        BlackDiamond(Box::new(self))
    }

    pub fn black_boxed(self) -> Self {
        BlackBoxed(Box::new(self))
    }

    /// Applies `wrap` `n` times.
    pub fn iterate(self, n: usize, wrap: fn(Formula) -> Formula) -> Self {
        (0..n).fold(self, |f, _| wrap(f))
    }

    pub fn parse(text: &str) -> Result<Formula> {
        Parser::new(text).parse_all()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Var(v) => {
                out.insert(v.clone());
            }
            Top | Bot => {}
            Not(a) | Diamond(a) | Boxed(a) | BlackDiamond(a) | BlackBoxed(a) => a.collect_vars(out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Var(_) | Top | Bot => 0,
            Not(a) => a.modal_depth(),
            Diamond(a) | Boxed(a) | BlackDiamond(a) | BlackBoxed(a) => 1 + a.modal_depth(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.modal_depth().max(b.modal_depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Var(_) | Top | Bot => 1,
            Not(a) | Diamond(a) | Boxed(a) | BlackDiamond(a) | BlackBoxed(a) => 1 + a.size(),
            And(a, b) | Or(a, b) | Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn uses(&self) -> (bool, bool) {
        match self {
            Var(_) | Top | Bot => (false, false),
            Not(a) => a.uses(),
            Diamond(a) | Boxed(a) => (true, a.uses().1),
            BlackDiamond(a) | BlackBoxed(a) => (a.uses().0, true),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                let (x, y) = (a.uses(), b.uses());
                (x.0 || y.0, x.1 || y.1)
            }
        }
    }

    /// White when no black modality occurs (including modality-free
    /// formulas), black when no white one does, bi otherwise.
    pub fn colour(&self) -> Colour {
        match self.uses() {
            (_, false) => Colour::White,
            (false, true) => Colour::Black,
            (true, true) => Colour::Bi,
        }
    }

    /// Removes double negations.
    pub fn canonical(&self) -> Formula {
        match self {
            Not(a) => match a.as_ref() {
                Not(b) => b.canonical(),
                _ => a.canonical().not(),
            },
            _ => self.map_children(Formula::canonical),
        }
    }

    fn map_children(&self, f: impl Fn(&Formula) -> Formula) -> Formula {
        match self {
            Var(_) | Top | Bot => self.clone(),
            Not(a) => Not(Box::new(f(a))),
            Diamond(a) => Diamond(Box::new(f(a))),
            Boxed(a) => Boxed(Box::new(f(a))),
            BlackDiamond(a) => BlackDiamond(Box::new(f(a))),
            BlackBoxed(a) => BlackBoxed(Box::new(f(a))),
            And(a, b) => And(Box::new(f(a)), Box::new(f(b))),
            Or(a, b) => Or(Box::new(f(a)), Box::new(f(b))),
            Implies(a, b) => Implies(Box::new(f(a)), Box::new(f(b))),
        }
    }

    /// Negation normal form: no `→`, negation only on variables.
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        let bin = |a: &Formula, b: &Formula, pa: bool, pb: bool, and: bool| {
            let (x, y) = (a.nnf_signed(pa), b.nnf_signed(pb));
            if and {
                x.and(y)
            } else {
                x.or(y)
            }
        };
        match (self, positive) {
            (Var(_), true) => self.clone(),
            (Var(_), false) => self.clone().not(),
            (Top, true) | (Bot, false) => Top,
            (Top, false) | (Bot, true) => Bot,
            (Not(a), s) => a.nnf_signed(!s),
            (And(a, b), s) => bin(a, b, s, s, s),
            (Or(a, b), s) => bin(a, b, s, s, !s),
            (Implies(a, b), true) => bin(a, b, false, true, false),
            (Implies(a, b), false) => bin(a, b, true, false, true),
            (Diamond(a), true) | (Boxed(a), false) => a.nnf_signed(positive).diamond(),
            (Boxed(a), true) | (Diamond(a), false) => a.nnf_signed(positive).boxed(),
            (BlackDiamond(a), true) | (BlackBoxed(a), false) => a.nnf_signed(positive).black_diamond(),
            (BlackBoxed(a), true) | (BlackDiamond(a), false) => a.nnf_signed(positive).black_boxed(),
        }
    }

    /// Replaces variables present in `map`.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            _ => self.map_children(|c| c.substitute(map)),
        }
    }

    /// Whether the formula is a literal or constant.
    pub fn is_literal(&self) -> bool {
        match self {
            Var(_) | Top | Bot => true,
            Not(a) => matches!(a.as_ref(), Var(_)),
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Implies(..) => 1,
            Or(..) => 2,
            And(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Var(v) => f.write_str(v)?,
            Top => f.write_str("T")?,
            Bot => f.write_str("F")?,
            Not(a) => {
                f.write_str("~")?;
                a.write_at(f, 4)?;
            }
            Diamond(a) | Boxed(a) | BlackDiamond(a) | BlackBoxed(a) => {
                f.write_str(match self {
                    Diamond(_) => "<>",
                    Boxed(_) => "[]",
                    BlackDiamond(_) => "<+>",
                    _ => "[+]",
                })?;
                a.write_at(f, 4)?;
            }
            And(a, b) => {
                a.write_at(f, 3)?;
                f.write_str(" & ")?;
                b.write_at(f, 4)?;
            }
            Or(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" | ")?;
                b.write_at(f, 3)?;
            }
            Implies(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" -> ")?;
                b.write_at(f, 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Diamond,
    Box,
    BlackDiamond,
    BlackBox,
    LParen,
    RParen,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
    lex_error: Option<Error>,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts = |i: usize, s: &str| {
        s.chars().enumerate().all(|(k, c)| chars.get(i + k).is_some_and(|&(_, d)| d == c))
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let fixed: &[(&str, Tok)] = &[
            ("<+>", Tok::BlackDiamond),
            ("[+]", Tok::BlackBox),
            ("<>", Tok::Diamond),
            ("[]", Tok::Box),
            ("->", Tok::Implies),
            ("◇", Tok::Diamond),
            ("□", Tok::Box),
            ("◆", Tok::BlackDiamond),
            ("■", Tok::BlackBox),
            ("→", Tok::Implies),
            ("~", Tok::Not),
            ("¬", Tok::Not),
            ("&", Tok::And),
            ("∧", Tok::And),
            ("|", Tok::Or),
            ("∨", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("⊤", Tok::Top),
            ("⊥", Tok::Bot),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| starts(i, s)) {
            out.push((pos, t.clone()));
            i += s.chars().count();
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_' || chars[j].1 == '\'') {
                j += 1;
            }
            let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            out.push((
                pos,
                match word.as_str() {
                    "T" | "top" | "true" => Tok::Top,
                    "F" | "bot" | "false" => Tok::Bot,
                    _ => Tok::Ident(word),
                },
            ));
            i = j;
            continue;
        }
        return Err(Error::Parse { pos, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> Self {
        match lex(text) {
            Ok(toks) => Parser { toks, pos: 0, len: text.len(), lex_error: None },
            Err(e) => Parser { toks: vec![], pos: 0, len: text.len(), lex_error: Some(e) },
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.len)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn parse_all(mut self) -> Result<Formula> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        let f = self.implication()?;
        if self.pos < self.toks.len() {
            return self.fail("trailing input");
        }
        Ok(f)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        let Some(tok) = self.peek().cloned() else {
            return self.fail("unexpected end of input");
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Not => self.unary()?.not(),
            Tok::Diamond => self.unary()?.diamond(),
            Tok::Box => self.unary()?.boxed(),
            Tok::BlackDiamond => self.unary()?.black_diamond(),
            Tok::BlackBox => self.unary()?.black_boxed(),
            Tok::Top => Top,
            Tok::Bot => Bot,
            Tok::Ident(v) => Var(v),
            Tok::LParen => {
                let f = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                f
            }
            Tok::RParen | Tok::And | Tok::Or | Tok::Implies => {
                self.pos -= 1;
                return self.fail("expected a formula");
            }
        })
    }
}
