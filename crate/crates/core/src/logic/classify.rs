use serde::Serialize;

use super::formula::Formula;
use Formula::*;

/// Syntactic classes of a formula, computed on its negation normal form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SyntaxClass {
    pub closed: bool,
    pub open: bool,
    pub positive: bool,
    pub negative: bool,
    pub s_positive: bool,
    pub s_negative: bool,
    pub g_closed: bool,
    pub g_open: bool,
    pub strongly_positive: bool,
    pub s_untied: bool,
    pub s_sahlqvist: bool,
    pub sahlqvist: bool,
}

impl SyntaxClass {
    /// Implications that hold by construction of the classes; the name of
    /// the first broken one.
    pub fn broken_implication(&self) -> Option<&'static str> {
        let rules: [(&str, bool, bool); 10] = [
            ("closed ⇒ g-closed", self.closed, self.g_closed),
            ("open ⇒ g-open", self.open, self.g_open),
            ("s-positive ⇒ positive", self.s_positive, self.positive),
            ("s-negative ⇒ negative", self.s_negative, self.negative),
            ("s-positive ⇒ g-closed", self.s_positive, self.g_closed),
            ("s-negative ⇒ g-open", self.s_negative, self.g_open),
            ("strongly positive ⇒ positive", self.strongly_positive, self.positive),
            ("strongly positive ⇒ s-untied", self.strongly_positive, self.s_untied),
            ("s-Sahlqvist ⇒ Sahlqvist", self.s_sahlqvist, self.sahlqvist),
            ("closed ∧ positive ⇒ s-positive", self.closed && self.positive, self.s_positive),
        ];
        rules.iter().find(|(_, a, b)| *a && !*b).map(|(n, _, _)| *n)
    }
}

fn literal(f: &Formula) -> bool {
    f.is_literal()
}

/// Built from literals and constants by `∨ ∧ ◇ ◆`.
fn closed(f: &Formula) -> bool {
    match f {
        And(a, b) | Or(a, b) => closed(a) && closed(b),
        Diamond(a) | BlackDiamond(a) => closed(a),
        _ => literal(f),
    }
}

/// Built from literals and constants by `∨ ∧ □ ■`.
fn open(f: &Formula) -> bool {
    match f {
        And(a, b) | Or(a, b) => open(a) && open(b),
        Boxed(a) | BlackBoxed(a) => open(a),
        _ => literal(f),
    }
}

fn signed(f: &Formula, want_positive: bool) -> bool {
    match f {
        Var(_) => want_positive,
        Not(_) => !want_positive,
        Top | Bot => true,
        And(a, b) | Or(a, b) => signed(a, want_positive) && signed(b, want_positive),
        Diamond(a) | BlackDiamond(a) | Boxed(a) | BlackBoxed(a) => signed(a, want_positive),
        Implies(..) => false,
    }
}

fn positive(f: &Formula) -> bool {
    signed(f, true)
}

fn negative(f: &Formula) -> bool {
    signed(f, false)
}

/// Closed positive formulas under `∨ ∧ □ ■`.
fn s_positive(f: &Formula) -> bool {
    (closed(f) && positive(f))
        || match f {
            And(a, b) | Or(a, b) => s_positive(a) && s_positive(b),
            Boxed(a) | BlackBoxed(a) => s_positive(a),
            _ => false,
        }
}

/// Open negative formulas under `∨ ∧ ◇ ◆`.
fn s_negative(f: &Formula) -> bool {
    (open(f) && negative(f))
        || match f {
            And(a, b) | Or(a, b) => s_negative(a) && s_negative(b),
            Diamond(a) | BlackDiamond(a) => s_negative(a),
            _ => false,
        }
}

fn g_closed(f: &Formula) -> bool {
    closed(f)
        || match f {
            And(a, b) | Or(a, b) => g_closed(a) && g_closed(b),
            Boxed(a) | BlackBoxed(a) => g_closed(a),
            _ => false,
        }
}

fn g_open(f: &Formula) -> bool {
    open(f)
        || match f {
            And(a, b) | Or(a, b) => g_open(a) && g_open(b),
            Diamond(a) | BlackDiamond(a) => g_open(a),
            _ => false,
        }
}

/// `□^⟨μ⟩p`: a variable under a prefix of `□` and `■`.
fn boxed_atom(f: &Formula) -> bool {
    match f {
        Var(_) => true,
        Boxed(a) | BlackBoxed(a) => boxed_atom(a),
        _ => false,
    }
}

/// Conjunction of boxed atoms; `⊤` is the empty conjunction.
fn strongly_positive(f: &Formula) -> bool {
    match f {
        Top => true,
        And(a, b) => strongly_positive(a) && strongly_positive(b),
        _ => boxed_atom(f),
    }
}

/// From strongly positive and s-negative formulas by `∧ ◇ ◆`.
fn s_untied(f: &Formula) -> bool {
    strongly_positive(f)
        || s_negative(f)
        || match f {
            And(a, b) => s_untied(a) && s_untied(b),
            Diamond(a) | BlackDiamond(a) => s_untied(a),
            _ => false,
        }
}

/// Classical antecedents: boxed atoms, constants and negative formulas
/// under `∧ ∨ ◇ ◆`.
fn sahlqvist_antecedent(f: &Formula) -> bool {
    matches!(f, Top | Bot)
        || boxed_atom(f)
        || negative(f)
        || match f {
            And(a, b) | Or(a, b) => sahlqvist_antecedent(a) && sahlqvist_antecedent(b),
            Diamond(a) | BlackDiamond(a) => sahlqvist_antecedent(a),
            _ => false,
        }
}

/// Splits an implication shape `a → b`, `¬a ∨ b` or `¬a`. Works on the
/// formula before normalization so the antecedent keeps its polarity.
fn implication_parts(f: &Formula) -> Option<(Formula, Formula)> {
    match f {
        Implies(a, b) => Some((a.nnf(), b.nnf())),
        Or(a, b) if matches!(a.as_ref(), Not(_)) => {
            let Not(inner) = a.as_ref() else { unreachable!() };
            Some((inner.nnf(), b.nnf()))
        }
        Not(a) => Some((a.nnf(), Bot)),
        _ => None,
    }
}

/// Closure of `shape` under `□`, `■`, `∧` and `∨`, starting on the raw
/// formula so implications stay visible.
fn boxed_closure(f: &Formula, shape: &dyn Fn(&Formula) -> bool) -> bool {
    shape(f)
        || match f {
            Boxed(a) | BlackBoxed(a) => boxed_closure(a, shape),
            And(a, b) | Or(a, b) => boxed_closure(a, shape) && boxed_closure(b, shape),
            _ => false,
        }
}

fn s_sahlqvist_implication(f: &Formula) -> bool {
    match implication_parts(f) {
        Some((a, c)) => s_untied(&a) && s_positive(&c),
        None => s_positive(&f.nnf()),
    }
}

fn sahlqvist_implication(f: &Formula) -> bool {
    match implication_parts(f) {
        Some((a, c)) => sahlqvist_antecedent(&a) && positive(&c),
        None => positive(&f.nnf()) || negative(&f.nnf()),
    }
}

pub fn classify(phi: &Formula) -> SyntaxClass {
    let n = phi.nnf();
    SyntaxClass {
        closed: closed(&n),
        open: open(&n),
        positive: positive(&n),
        negative: negative(&n),
        s_positive: s_positive(&n),
        s_negative: s_negative(&n),
        g_closed: g_closed(&n),
        g_open: g_open(&n),
        strongly_positive: strongly_positive(&n),
        s_untied: s_untied(&n),
        s_sahlqvist: boxed_closure(phi, &s_sahlqvist_implication),
        sahlqvist: boxed_closure(phi, &sahlqvist_implication),
    }
}

/// `ξ = φ(ψ̄)` with `φ` positive open in fresh variables and each `ψᵢ`
/// closed: the maximal closed subtrees of the normal form are cut out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GClosedDecomposition {
    pub skeleton: Formula,
    pub parts: Vec<(String, Formula)>,
}

pub fn g_closed_decomposition(xi: &Formula, fresh_prefix: &str) -> Option<GClosedDecomposition> {
    let n = xi.nnf();
    if !g_closed(&n) {
        return None;
    }
    let mut parts = Vec::new();
    let skeleton = cut(&n, fresh_prefix, &mut parts);
    Some(GClosedDecomposition { skeleton, parts })
}

fn cut(f: &Formula, prefix: &str, parts: &mut Vec<(String, Formula)>) -> Formula {
    if closed(f) {
        let name = format!("{prefix}{}", parts.len() + 1);
        parts.push((name.clone(), f.clone()));
        return Var(name);
    }
    match f {
        And(a, b) => cut(a, prefix, parts).and(cut(b, prefix, parts)),
        Or(a, b) => cut(a, prefix, parts).or(cut(b, prefix, parts)),
        Boxed(a) => cut(a, prefix, parts).boxed(),
        BlackBoxed(a) => cut(a, prefix, parts).black_boxed(),
        _ => unreachable!("g-closed normal forms only contain these nodes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> SyntaxClass {
        classify(&Formula::parse(s).unwrap())
    }

    #[test]
    fn p_implies_diamond_box_p() {
        let k = c("p -> <>[]p");
        assert!(k.sahlqvist);
        assert!(!k.s_sahlqvist);
    }

    #[test]
    fn klmn_family_is_s_sahlqvist() {
        for k in 0..=2 {
            for l in 0..=2 {
                for m in 0..=2 {
                    for n in 0..=2 {
                        let ante = Formula::var("p").iterate(l, Formula::boxed).iterate(k, Formula::diamond);
                        let cons = Formula::var("p").iterate(n, Formula::diamond).iterate(m, Formula::boxed);
                        let class = classify(&ante.implies(cons));
                        assert!(class.s_sahlqvist, "{k}{l}{m}{n}");
                        assert_eq!(class.broken_implication(), None);
                    }
                }
            }
        }
    }

    #[test]
    fn two_variable_example_is_s_sahlqvist() {
        assert!(c("[]([]p -> q) | []([]q -> p)").s_sahlqvist);
    }

    #[test]
    fn basic_classes() {
        let k = c("<>p & <+>~q");
        assert!(k.closed && !k.open && !k.positive && !k.negative && k.g_closed);
        let k = c("[]p | [+]T");
        assert!(k.open && k.positive && !k.closed && k.g_open && k.s_positive);
        assert!(c("[]<>p").s_positive);
        assert!(!c("<>[]p").s_positive);
        assert!(c("[][+]p & q").strongly_positive);
        assert!(c("<>([]p & <>[]~q)").s_untied);
        assert!(c("~p -> []q").s_sahlqvist);
    }

    #[test]
    fn decomposition_cuts_closed_subtrees() {
        let d = g_closed_decomposition(&Formula::parse("[]<>p & [](q | []<>~q)").unwrap(), "c").unwrap();
        assert_eq!(d.skeleton.to_string(), "[]c1 & [](c2 | []c3)");
        let parts: Vec<String> = d.parts.iter().map(|(_, f)| f.to_string()).collect();
        assert_eq!(parts, ["<>p", "q", "<>~q"]);
        assert!(g_closed_decomposition(&Formula::parse("<>[]p").unwrap(), "c").is_none());
    }
}
