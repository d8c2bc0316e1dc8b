use serde::Serialize;

use super::frame_cond::{eval_frame_condition, eval_frame_condition_omega, rel, FrameCondition};
use super::condition::Condition;
use super::sub_cond::{eval_sub_condition, SubCondition};
use crate::duality::of;
use crate::error::{Error, Result};
use crate::frame::{FrameMorphism, KripkeFrame};
use crate::generate::{all_frames_up_to, random_frame, rng};
use crate::logic::{frame_validity, omega_validity, Formula, DEFAULT_BUDGET};
use crate::omega::RelationSpec;
use crate::subordination::{Colour, MorphismKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledFormula {
    pub label: String,
    pub formula: Formula,
}

/// Formulas claimed equivalent to a frame condition and, optionally, to a
/// condition in the language of `≺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceTriple {
    pub name: String,
    pub formulas: Vec<LabelledFormula>,
    pub frame: FrameCondition,
    pub sub: Option<SubCondition>,
    /// Alternative printed forms kept for comparison, not for checking.
    pub reference: Vec<(String, String)>,
    pub note: String,
}

fn lf(label: &str, text: &str) -> LabelledFormula {
    LabelledFormula { label: label.into(), formula: Formula::parse(text).expect("library formula") }
}

fn fc(text: &str) -> FrameCondition {
    FrameCondition::parse(text).expect("library frame condition")
}

fn sc(text: &str) -> SubCondition {
    SubCondition::parse(text).expect("library condition")
}

fn power(f: Formula, n: usize, wrap: fn(Formula) -> Formula) -> Formula {
    f.iterate(n, wrap)
}

/// `◇ᵏ□ˡp → □ᵐ◇ⁿp`, its bicolour twin, the frame condition and the
/// algebra condition read off the clopen reformulation.
pub fn correspondent_klmn(k: usize, l: usize, m: usize, n: usize) -> CorrespondenceTriple {
    let p = Formula::var("p");
    let white = power(power(p.clone(), l, Formula::boxed), k, Formula::diamond)
        .implies(power(power(p.clone(), n, Formula::diamond), m, Formula::boxed));
    let twin = power(power(p.clone(), k, Formula::diamond), m, Formula::black_diamond)
        .implies(power(power(p.clone(), l, Formula::black_diamond), n, Formula::diamond));
    let printed = power(power(p.clone(), m, Formula::black_diamond), k, Formula::diamond)
        .implies(power(power(p, m, Formula::diamond), l, Formula::black_diamond));
    let frame = Condition::Forall(
        vec!["x".into(), "y".into(), "z".into()],
        Box::new(rel(k, "x", "y").and(rel(m, "x", "z")).implies(Condition::Exists(
            vec!["u".into()],
            Box::new(rel(l, "y", "u").and(rel(n, "z", "u"))),
        ))),
    );
    let sub = sc(&format!("A a, b, c. -a <^{l} -b & a _|_^{n} c -> E d. b <^{k} d & c _|_^{m} d"));
    CorrespondenceTriple {
        name: format!("klmn:{k},{l},{m},{n}"),
        formulas: vec![
            LabelledFormula { label: "white".into(), formula: white },
            LabelledFormula { label: "bicolour".into(), formula: twin },
        ],
        frame,
        sub: Some(sub),
        reference: vec![
            ("printed bicolour twin".into(), printed.to_string()),
            (
                "printed algebra condition".into(),
                format!("A a, b, c. -b < -a & a _|_^{n} c -> E d. b <^{k} d & c _|_^{m} d"),
            ),
        ],
        note: "bicolour twin obtained by adjunction; algebra condition from the clopen chain".into(),
    }
}

pub fn builtin_library() -> Vec<CorrespondenceTriple> {
    let mut out = vec![
        CorrespondenceTriple {
            name: "two-variable".into(),
            formulas: vec![lf("white", "[]([]p -> q) | []([]q -> p)")],
            frame: fc("A x, y, z. x R y & x R z -> y R z | z R y"),
            sub: Some(sc("A a, b. a _|_ b & b _|_ a -> E c. a < c & b _|_ c")),
            reference: vec![],
            note: String::new(),
        },
        CorrespondenceTriple {
            name: "seriality".into(),
            formulas: vec![lf("white", "[]p -> <>p"), lf("bicolour", "p -> <><+>p")],
            frame: fc("A x. E y. x R y"),
            sub: Some(sc("A b. 1 < b -> b = 1")),
            reference: vec![],
            note: "no black formula: see the seriality gap witness".into(),
        },
        CorrespondenceTriple {
            name: "unicolour-gap".into(),
            formulas: vec![lf("bicolour", "<><+><>p -> <>p")],
            frame: fc("A x, y, z, u. x R y & z R y & z R u -> x R u"),
            sub: None,
            reference: vec![],
            note: "no white or black formula: see the quotient witnesses".into(),
        },
        CorrespondenceTriple {
            name: "scheme-dcb".into(),
            formulas: vec![lf("white", "p -> <>[]p"), lf("black", "p -> <+>[+]p")],
            frame: fc("A x. E y. x R y & (A w. y R w -> w = x)"),
            sub: None,
            reference: vec![("equality form".into(), "A x. E y. x R y & y R x & (A w. y R w -> w = x)".into())],
            note: "the inclusion and equality forms agree: each chosen y has a successor of its own".into(),
        },
        CorrespondenceTriple {
            name: "symmetry".into(),
            formulas: vec![lf("bicolour", "<>p -> <+>p"), lf("white", "<>[]p -> p"), lf("black", "<+>[+]p -> p")],
            frame: fc("A x, y. x R y -> y R x"),
            sub: Some(sc("A a, b. a < b -> -b < -a")),
            reference: vec![],
            note: String::new(),
        },
    ];
    for k in 0..=2 {
        for l in 0..=2 {
            for m in 0..=2 {
                for n in 0..=2 {
                    out.push(correspondent_klmn(k, l, m, n));
                }
            }
        }
    }
    out
}

/// Library entry by name; `klmn:k,l,m,n` builds any family member.
pub fn builtin(name: &str) -> Result<CorrespondenceTriple> {
    if let Some(rest) = name.strip_prefix("klmn:") {
        let idx: Vec<usize> = rest
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::IllFormed(format!("bad index in `{name}`"))))
            .collect::<Result<_>>()?;
        if let [k, l, m, n] = idx[..] {
            return Ok(correspondent_klmn(k, l, m, n));
        }
        return Err(Error::IllFormed(format!("`{name}` needs four indices")));
    }
    builtin_library()
        .into_iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::IllFormed(format!("no builtin named `{name}`")))
}

/// Structures over which an equivalence is checked.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Every frame with at most this many points.
    Frames(usize),
    /// Seeded random frames.
    RandomFrames { count: usize, max_points: usize, seed: u64 },
    /// Named symbolic spaces on `ω⁺`, valuations bounded by `k`.
    Omega { spaces: Vec<(String, RelationSpec)>, k: u32 },
}

impl Family {
    /// `frames:N`, `random:COUNT:MAX_POINTS:SEED` or `omega:K`.
    pub fn parse(text: &str) -> Result<Family> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::IllFormed(format!("bad number in family `{text}`")));
        match parts[..] {
            ["frames", n] => Ok(Family::Frames(num(n)? as usize)),
            ["random", c, p, s] => Ok(Family::RandomFrames { count: num(c)? as usize, max_points: num(p)? as usize, seed: num(s)? }),
            ["omega", k] => Ok(Family::Omega { spaces: omega_spaces(), k: num(k)? as u32 }),
            _ => Err(Error::IllFormed(format!("unknown family `{text}`"))),
        }
    }

    fn frames(&self) -> Result<Vec<KripkeFrame>> {
        match self {
            Family::Frames(n) => Ok(all_frames_up_to(*n).collect()),
            Family::RandomFrames { count, max_points, seed } => {
                let mut r = rng(*seed);
                (0..*count)
                    .map(|_| {
                        use rand::Rng;
                        let n = r.gen_range(1..=*max_points);
                        let d = r.gen_range(0.1..0.6);
                        random_frame(&mut r, n, d)
                    })
                    .collect()
            }
            Family::Omega { .. } => Ok(vec![]),
        }
    }
}

pub fn omega_spaces() -> Vec<(String, RelationSpec)> {
    vec![
        ("accumulation-loop".into(), RelationSpec::accumulation_loop()),
        ("star-loop".into(), RelationSpec::star_loop()),
        ("converse-accumulation-loop".into(), RelationSpec::accumulation_loop().converse()),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub structure: String,
    pub formula_valid: bool,
    pub frame_holds: Option<bool>,
    pub sub_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub formula: String,
    pub structures_checked: usize,
    pub divergences: Vec<Divergence>,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Compares formula validity with each given condition over `family`:
/// the frame condition on the frame, the `≺` condition on its dual algebra.
pub fn check_equivalence(
    phi: &Formula,
    frame_cond: Option<&FrameCondition>,
    sub_cond: Option<&SubCondition>,
    family: &Family,
) -> Result<EquivalenceReport> {
    let mut divergences = Vec::new();
    let mut checked = 0;
    if let Family::Omega { spaces, k } = family {
        for (name, spec) in spaces {
            checked += 1;
            let formula_valid = omega_validity(spec, phi, *k, DEFAULT_BUDGET)?.valid;
            let frame_holds = frame_cond.map(|c| eval_frame_condition_omega(c, spec)).transpose()?;
            if frame_holds.is_some_and(|h| h != formula_valid) {
                divergences.push(Divergence { structure: name.clone(), formula_valid, frame_holds, sub_holds: None });
            }
        }
    } else {
        for frame in family.frames()? {
            checked += 1;
            let formula_valid = frame_validity(&frame, phi, DEFAULT_BUDGET)?.valid;
            let frame_holds = frame_cond.map(|c| eval_frame_condition(c, &frame)).transpose()?;
            let sub_holds = match sub_cond {
                Some(c) => Some(eval_sub_condition(c, &of(&frame)?)?),
                None => None,
            };
            if frame_holds.is_some_and(|h| h != formula_valid) || sub_holds.is_some_and(|h| h != formula_valid) {
                divergences.push(Divergence { structure: format!("{frame:?}"), formula_valid, frame_holds, sub_holds });
            }
        }
    }
    Ok(EquivalenceReport { formula: phi.to_string(), structures_checked: checked, divergences })
}

/// Every formula of a triple against its conditions.
pub fn check_triple(t: &CorrespondenceTriple, family: &Family) -> Result<Vec<(String, EquivalenceReport)>> {
    t.formulas
        .iter()
        .map(|f| Ok((f.label.clone(), check_equivalence(&f.formula, Some(&t.frame), t.sub.as_ref(), family)?)))
        .collect()
}

/// A morphism showing that some language cannot express a property: the
/// morphism kind preserves validity in that language, yet the property
/// holds on one end only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapWitness {
    pub name: String,
    pub language: Colour,
    pub property: FrameCondition,
    pub morphism: FrameMorphism,
    /// `(kind, is a morphism of that kind)`.
    pub kinds: Vec<(MorphismKind, bool)>,
    pub source_holds: bool,
    pub target_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCheck {
    pub name: String,
    pub kinds: Vec<(MorphismKind, bool)>,
    pub source_holds: bool,
    pub target_holds: bool,
    pub reproduces: bool,
}

impl GapWitness {
    pub fn check(&self) -> Result<GapCheck> {
        let kinds: Vec<(MorphismKind, bool)> = self.kinds.iter().map(|&(k, _)| (k, self.morphism.is_morphism(k))).collect();
        let source_holds = eval_frame_condition(&self.property, self.morphism.source())?;
        let target_holds = eval_frame_condition(&self.property, self.morphism.target())?;
        let reproduces = kinds == self.kinds && source_holds == self.source_holds && target_holds == self.target_holds;
        Ok(GapCheck { name: self.name.clone(), kinds, source_holds, target_holds, reproduces })
    }
}

pub fn gap_witnesses() -> Result<Vec<GapWitness>> {
    use MorphismKind::*;
    let serial = KripkeFrame::from_edges(2, [(0, 1), (1, 1)])?;
    let (_, inclusion) = serial.restrict(0b01)?;
    let five = KripkeFrame::from_named(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d"), ("c", "e")])?;
    let classes = [0, 1, 2, 1, 3];
    let (_, white_quotient) = five.quotient(&classes)?;
    let (_, black_quotient) = five.converse().quotient(&classes)?;
    let gap = fc("A x, y, z, u. x R y & z R y & z R u -> x R u");
    Ok(vec![
        GapWitness {
            name: "seriality/black subobject".into(),
            language: Colour::Black,
            property: fc("A x. E y. x R y"),
            morphism: inclusion,
            kinds: vec![(Black, true), (White, false)],
            source_holds: false,
            target_holds: true,
        },
        GapWitness {
            name: "unicolour-gap/white quotient".into(),
            language: Colour::White,
            property: gap.clone(),
            morphism: white_quotient,
            kinds: vec![(White, true), (Black, false)],
            source_holds: true,
            target_holds: false,
        },
        GapWitness {
            name: "unicolour-gap/black quotient of the converse".into(),
            language: Colour::Black,
            property: gap,
            morphism: black_quotient,
            kinds: vec![(Black, true), (White, false)],
            source_holds: true,
            target_holds: false,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_family_builtins_hold_on_small_frames() {
        for t in builtin_library().iter().filter(|t| !t.name.starts_with("klmn")) {
            for (label, report) in check_triple(t, &Family::Frames(3)).unwrap() {
                assert!(report.equivalent(), "{} {label}: {:?}", t.name, report.divergences.first());
                assert_eq!(report.structures_checked, 530);
            }
        }
    }

    #[test]
    fn klmn_samples() {
        for (idx, frame) in [((0, 1, 0, 0), "A x. x R x"), ((0, 0, 1, 1), "A x, y. x R y -> y R x"), ((1, 0, 0, 1), "T")] {
            let t = correspondent_klmn(idx.0, idx.1, idx.2, idx.3);
            let r = check_equivalence(&t.formulas[0].formula, Some(&fc(frame)), t.sub.as_ref(), &Family::Frames(3)).unwrap();
            assert!(r.equivalent(), "{idx:?}");
        }
        let trivial = correspondent_klmn(0, 0, 0, 0);
        assert_eq!(trivial.formulas[0].formula.to_string(), "p -> p");
    }

    #[test]
    fn gap_witnesses_reproduce() {
        for w in gap_witnesses().unwrap() {
            let c = w.check().unwrap();
            assert!(c.reproduces, "{c:?}");
        }
    }

    #[test]
    fn scheme_dcb_on_accumulation_loop() {
        let t = builtin("scheme-dcb").unwrap();
        let fam = Family::Omega { spaces: vec![("acc".into(), RelationSpec::accumulation_loop())], k: 6 };
        let r = check_equivalence(&t.formulas[0].formula, Some(&t.frame), None, &fam).unwrap();
        assert_eq!(r.divergences.len(), 1);
        assert!(r.divergences[0].formula_valid);
        assert_eq!(r.divergences[0].frame_holds, Some(false));
    }

    #[test]
    fn family_parsing() {
        assert_eq!(Family::parse("frames:3").unwrap(), Family::Frames(3));
        assert!(matches!(Family::parse("random:10:4:1").unwrap(), Family::RandomFrames { count: 10, .. }));
        assert!(Family::parse("frames").is_err());
        assert!(builtin("klmn:1,2,0,1").is_ok());
        assert!(builtin("nope").is_err());
    }
}
