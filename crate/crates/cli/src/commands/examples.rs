//! `examples`: the worked examples, each replayed against its documented
//! verdicts.

use clap::{Args, ValueEnum};
use subord::correspondence::{
    builtin, check_equivalence, check_triple, correspondent_klmn, eval_frame_condition_omega, gap_witnesses, Family,
    FrameCondition,
};
use subord::generate::all_frames_up_to;
use subord::logic::{classify, frame_validity, omega_scheme_validity, omega_validity, Formula, Semantics, DEFAULT_BUDGET};
use subord::omega::{
    boolean_join, congruence_check, subalgebra_step, EquivSpec, OmegaPlusSet, Point, RelationSpec, SpaceColour,
    SubalgebraStep,
};
use subord::KripkeFrame;

use crate::report::Report;
use crate::{CliResult, RunConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    AccumulationLoop,
    OmegaCongruences,
    Klmn,
    TwoVariable,
    Seriality,
    UnicolourGap,
    SchemeDcb,
    All,
}

/// Replay a worked example, or all of them.
#[derive(Args, Debug)]
pub struct ExamplesArgs {
    #[arg(value_enum)]
    pub name: Example,
}

type Claims = Vec<(String, bool)>;

fn f(text: &str) -> Formula {
    Formula::parse(text).expect("fixed example formula")
}

fn triple_equivalent(name: &str, family: &Family) -> CliResult<bool> {
    Ok(check_triple(&builtin(name)?, family)?.iter().all(|(_, rep)| rep.equivalent()))
}

fn accumulation_loop(k: u32) -> CliResult<Claims> {
    let rel = RelationSpec::accumulation_loop();
    let phi = f("p -> <>[]p");
    let v = omega_validity(&rel, &phi, k, DEFAULT_BUDGET)?;
    let shape = subord::omega::bounded_clopens(k).iter().all(|o| {
        let dbo = rel.diamond(&rel.boxed(o));
        dbo == if !o.is_empty() && !o.contains_omega() { o.with_omega(true) } else { o.clone() }
    });
    let val = [("p".to_string(), OmegaPlusSet::finite([0], false).complement())].into();
    let psi = rel.eval(&f("p & ~[]p"), &val)?;
    let instance = rel.eval(&f("<>[](p & ~[]p)"), &val)?;
    let scheme = omega_scheme_validity(&rel, &phi, k, DEFAULT_BUDGET)?;
    Ok(vec![
        (format!("p → ◇□p holds on clopens with exceptions below {k} ({} valuations)", v.valuations_checked), v.valid),
        ("every clopen O has O ⊆ ◇□O, adding only ω".into(), shape),
        (format!("ψ = p ∧ ¬□p at p = ω⁺∖{{0}} is {{ω}} (got {psi})"), psi == OmegaPlusSet::omega_only()),
        (format!("◇□ψ is empty (got {instance})"), instance.is_empty()),
        ("the scheme p → ◇□p fails".into(), !scheme.verdict.valid),
    ])
}

fn omega_congruences() -> CliResult<Claims> {
    let rel = RelationSpec::star_loop();
    let (theta, xi) = (EquivSpec::pairs(), EquivSpec::shifted_pairs());
    let join = boolean_join(&theta, &xi)?;
    let t = congruence_check(&rel, &theta, SpaceColour::White)?;
    let x = congruence_check(&rel, &xi, SpaceColour::White)?;
    let j = congruence_check(&rel, &join, SpaceColour::White)?;
    let (a, c) = (OmegaPlusSet::finite([0, 1], false), OmegaPlusSet::cofinite([2], true));
    let got = match j.violation {
        Some((x, y, z)) => format!("({x}, {y}, {z})"),
        None => "none".into(),
    };
    let step = |e: &EquivSpec| subalgebra_step(&rel, e, &a, &c);
    Ok(vec![
        ("θ = {0,1},{2,3},… is a congruence".into(), t.is_congruence()),
        ("ξ = {0},{1,2},{3,4},… is a congruence".into(), x.is_congruence()),
        ("θ ∨ ξ has classes {0,1} and the rest".into(), join.related(Point::Nat(0), Point::Nat(1)) && join.related(Point::Nat(2), Point::Omega)),
        ("θ ∨ ξ is a Boolean congruence".into(), j.boolean),
        (format!("θ ∨ ξ fails the lifting condition at (2, ω, 0) (got {got})"), j.violation == Some((Point::Nat(2), Point::Omega, Point::Nat(0)))),
        ("{0,1} ≺ ω⁺∖{2} is interpolated in the θ- and ξ-saturated clopens".into(), matches!(step(&theta)?, SubalgebraStep::Witness(_)) && matches!(step(&xi)?, SubalgebraStep::Witness(_))),
        ("but not in the (θ ∨ ξ)-saturated ones".into(), matches!(step(&join)?, SubalgebraStep::Refuted { .. })),
    ])
}

fn klmn() -> CliResult<Claims> {
    let family = Family::Frames(3);
    let (mut equivalent, mut sahlqvist, mut total) = (0, 0, 0);
    for k in 0..=2 {
        for l in 0..=2 {
            for m in 0..=2 {
                for n in 0..=2 {
                    let t = correspondent_klmn(k, l, m, n);
                    total += 1;
                    if check_triple(&t, &family)?.iter().all(|(_, rep)| rep.equivalent()) {
                        equivalent += 1;
                    }
                    if classify(&t.formulas[0].formula).s_sahlqvist {
                        sahlqvist += 1;
                    }
                }
            }
        }
    }
    Ok(vec![
        (format!("{equivalent}/{total} tuples: both formulas match the frame and ≺ conditions on frames up to 3 points"), equivalent == total),
        (format!("{sahlqvist}/{total} white formulas are s-Sahlqvist"), sahlqvist == total),
    ])
}

fn two_variable() -> CliResult<Claims> {
    Ok(vec![
        ("[]([]p -> q) | []([]q -> p) is s-Sahlqvist".into(), classify(&f("[]([]p -> q) | []([]q -> p)")).s_sahlqvist),
        ("it matches right-connectedness and its ≺ condition".into(), triple_equivalent("two-variable", &Family::Frames(3))?),
    ])
}

fn gap(prefix: &str) -> CliResult<bool> {
    let checks = gap_witnesses()?.into_iter().filter(|g| g.name.starts_with(prefix)).map(|g| g.check()).collect::<Result<Vec<_>, _>>()?;
    Ok(!checks.is_empty() && checks.iter().all(|c| c.reproduces))
}

fn seriality() -> CliResult<Claims> {
    let serial = KripkeFrame::from_edges(2, [(0, 1), (1, 1)])?;
    let (sub, _) = serial.restrict(0b01)?;
    let phi = f("[]p -> <>p");
    Ok(vec![
        ("[]p -> <>p and p -> <><+>p match seriality and 1 ≺ b ⇒ b = 1".into(), triple_equivalent("seriality", &Family::Frames(3))?),
        ("the serial frame validates []p -> <>p".into(), frame_validity(&serial, &phi, DEFAULT_BUDGET)?.valid),
        ("its black subobject does not".into(), !frame_validity(&sub, &phi, DEFAULT_BUDGET)?.valid),
        ("the subobject inclusion is black, not white".into(), gap("seriality")?),
    ])
}

fn unicolour_gap() -> CliResult<Claims> {
    let five = KripkeFrame::from_named(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d"), ("c", "e")])?;
    let (small, _) = five.quotient(&[0, 1, 2, 1, 3])?;
    let phi = f("<><+><>p -> <>p");
    let edges: Vec<String> = small.edges().map(|(x, y)| format!("{}→{}", small.label(x), small.label(y))).collect();
    Ok(vec![
        ("the 5-point frame validates <><+><>p -> <>p".into(), frame_validity(&five, &phi, DEFAULT_BUDGET)?.valid),
        (format!("the quotient identifying b and d ({}) does not", edges.join(", ")), !frame_validity(&small, &phi, DEFAULT_BUDGET)?.valid),
        ("the quotient edges are a→b/d, c→b/d, c→e".into(), small.edges().collect::<Vec<_>>() == [(0, 1), (2, 1), (2, 3)]),
        ("the quotient maps are white and black morphisms respectively".into(), gap("unicolour-gap")?),
        ("the bicolour formula matches its frame condition".into(), triple_equivalent("unicolour-gap", &Family::Frames(3))?),
    ])
}

fn scheme_dcb(k: u32) -> CliResult<Claims> {
    let phi = f("p -> <>[]p");
    let c = classify(&phi);
    let t = builtin("scheme-dcb")?;
    let equality = FrameCondition::parse(&t.reference[0].1)?;
    let eq = check_equivalence(&phi, Some(&equality), None, &Family::Frames(3))?;
    let rel = RelationSpec::accumulation_loop();
    let frames = all_frames_up_to(3).count();
    Ok(vec![
        ("p -> <>[]p is Sahlqvist but not s-Sahlqvist".into(), c.sahlqvist && !c.s_sahlqvist),
        (format!("the ⊆ form matches on all {frames} frames up to 3 points"), triple_equivalent("scheme-dcb", &Family::Frames(3))?),
        (format!("the = form matches as well ({} divergences)", eq.divergences.len()), eq.equivalent()),
        ("the formula holds on the accumulation loop".into(), omega_validity(&rel, &phi, k, DEFAULT_BUDGET)?.valid),
        ("its frame condition fails there".into(), !eval_frame_condition_omega(&t.frame, &rel)?),
        ("the scheme fails there".into(), !omega_scheme_validity(&rel, &phi, k, DEFAULT_BUDGET)?.verdict.valid),
    ])
}

const ALL: [Example; 7] = [
    Example::AccumulationLoop,
    Example::OmegaCongruences,
    Example::Klmn,
    Example::TwoVariable,
    Example::Seriality,
    Example::UnicolourGap,
    Example::SchemeDcb,
];

fn claims(e: Example, k: u32) -> CliResult<Claims> {
    match e {
        Example::AccumulationLoop => accumulation_loop(k),
        Example::OmegaCongruences => omega_congruences(),
        Example::Klmn => klmn(),
        Example::TwoVariable => two_variable(),
        Example::Seriality => seriality(),
        Example::UnicolourGap => unicolour_gap(),
        Example::SchemeDcb => scheme_dcb(k),
        Example::All => unreachable!("expanded by the caller"),
    }
}

pub fn run(a: &ExamplesArgs, cfg: &RunConfig) -> CliResult<Report> {
    let selected: Vec<Example> = if a.name == Example::All { ALL.to_vec() } else { vec![a.name] };
    let mut r = Report::new("examples");
    let mut summary = serde_json::Map::new();
    for e in selected {
        let name = e.to_possible_value().expect("named variant").get_name().to_string();
        r.line(format!("{name}:"));
        let mut ok = true;
        for (claim, holds) in claims(e, cfg.k as u32)? {
            r.line(format!("  [{}] {claim}", if holds { "ok" } else { "DIVERGES" }));
            ok &= holds;
        }
        if !ok {
            r.fail();
        }
        summary.insert(name, ok.into());
    }
    r.set("examples", summary);
    Ok(r)
}
