//! `check`: verdicts with witnesses on a single structure.

use clap::Args;
use subord::algebra::{generated_boolean_subalgebra, powerset_algebra, BooleanMorphism, Elem, ElementSet, SetTag};
use subord::omega::{congruence_check, EquivSpec, OmegaPlusSet, SpaceColour};
use subord::subordination::{
    check_axioms, check_morphism, is_congruence, is_subalgebra, Axiom, CongruenceKind, MorphismKind,
    SubordinationAlgebra,
};
use subord::wire::Structure;
use subord::BooleanAlgebra;

use super::{list, table};
use crate::report::Report;
use crate::{input, CliError, CliResult, RunConfig};

/// Check axioms, morphisms, congruences, subalgebras, filters or ω⁺ congruences.
#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Structure: file, `-`, inline JSON or a built-in ω⁺ space name.
    pub input: String,
    /// Axioms to check, e.g. `S1..S4,S7` or `all`. Defaults to S1..S4.
    #[arg(long)]
    pub axioms: Option<String>,
    /// Check the multi-operator laws and list `a ↦ ≺(a,−)`.
    #[arg(long)]
    pub multi_operator: bool,
    /// Partition (file or inline JSON) to test as a congruence.
    #[arg(long)]
    pub partition: Option<String>,
    /// Kind for `--partition`, `--subset` and `--map`: weak, white, black or strong.
    #[arg(long)]
    pub kind: Option<MorphismKind>,
    /// Comma-separated elements forming a Boolean subalgebra to test.
    #[arg(long)]
    pub subset: Option<String>,
    /// Morphism as its full value table, e.g. `0,3,3,3`.
    #[arg(long)]
    pub map: Option<String>,
    /// Codomain of `--map`.
    #[arg(long)]
    pub target: Option<String>,
    /// Comma-separated elements to test with `--tag`.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, value_parser = parse_tag)]
    pub tag: Option<SetTag>,
    /// Generators of a Boolean subalgebra to compute.
    #[arg(long)]
    pub generate: Option<String>,
    /// ω⁺ space for an equivalence input.
    #[arg(long, default_value = "accumulation-loop")]
    pub space: String,
}

fn parse_tag(s: &str) -> Result<SetTag, String> {
    match s {
        "filter" => Ok(SetTag::Filter),
        "ideal" => Ok(SetTag::Ideal),
        _ => Err("expected `filter` or `ideal`".into()),
    }
}

pub fn run(a: &CheckArgs, cfg: &RunConfig) -> CliResult<Report> {
    let s = input::structure(&a.input, cfg)?;
    let mut r = Report::new("check");
    match &s {
        Structure::Algebra(alg) => {
            let alg = powerset_algebra(alg.atom_count())?;
            r.line(format!("powerset algebra: {} atoms, {} elements", alg.atom_count(), alg.size()));
            boolean_checks(a, alg, cfg, &mut r)?;
        }
        Structure::Subordination(_) | Structure::Frame(_) => {
            let (sa, frame) = input::finite(&s, cfg)?;
            if let Some(f) = frame {
                r.line(format!("Of(F) of a {}-point frame", f.len()));
            }
            subordination_checks(a, &sa, cfg, &mut r)?;
            boolean_checks(a, sa.algebra(), cfg, &mut r)?;
        }
        Structure::Partition(p) => {
            let ok = p.boolean_kernel().is_ok();
            r.verdict(format!("partition with {} classes is a Boolean congruence", p.classes().len()), ok);
        }
        Structure::OmegaEquivalence(e) => omega_congruence(a, e, &mut r)?,
        Structure::OmegaSet(set) => topology(set, &mut r),
        Structure::Omega(_) => {
            return Err(CliError::Input("an ω⁺ relation alone has nothing to check; use `omega SPACE --set ...`".into()))
        }
    }
    Ok(r)
}

fn subordination_checks(a: &CheckArgs, s: &SubordinationAlgebra, cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    let which = match a.axioms.as_deref() {
        None => Axiom::BASIC.to_vec(),
        Some("all") => Axiom::ALL.to_vec(),
        Some(text) => Axiom::parse_list(text)?,
    };
    let report = check_axioms(s, &which);
    for v in &report.verdicts {
        match &v.witness {
            None => r.line(format!("{}: holds", v.axiom)),
            Some(w) => {
                r.line(format!("{}: {}", v.axiom, axiom_witness(v.axiom, w, s)));
                r.fail();
            }
        }
    }
    r.set("axioms", &report);

    if a.multi_operator {
        for x in s.algebra().elements() {
            r.line(format!("⟡{x} = {}", table(s.multi_operator(x).members().iter().copied())));
        }
        match s.check_multi_operator() {
            Ok(()) => r.line("multi-operator laws: hold"),
            Err(None) => {
                r.line("multi-operator laws: ⟡0 is not the whole algebra");
                r.fail();
            }
            Err(Some((x, y))) => {
                r.line(format!("multi-operator laws: ⟡({x}∨{y}) ≠ ⟡{x} ∩ ⟡{y}"));
                r.fail();
            }
        }
    }

    if let Some(p) = &a.partition {
        let kind = congruence_kind(a.kind.unwrap_or(MorphismKind::Strong))?;
        let partition = input::partition(p, s.algebra())?;
        let v = is_congruence(s, &partition, kind)?;
        let conditions = |c: Option<[bool; 4]>| c.map(|c| list(c.iter().map(|&b| if b { "yes" } else { "no" })));
        if let Some(w) = conditions(v.white) {
            r.line(format!("white conditions (1)-(4): {w}"));
        }
        if let Some(b) = conditions(v.black) {
            r.line(format!("black conditions (1)-(4): {b}"));
        }
        r.verdict(format!("{} congruence with kernel {}", kind.name(), v.kernel), v.holds);
        r.verdict("equivalent conditions agree", v.agree);
        r.set("congruence", &v);
    }

    if let Some(list) = &a.subset {
        let kind = a.kind.unwrap_or(MorphismKind::Strong);
        let set = ElementSet::new(s.algebra(), input::elements(list, s.algebra())?)?;
        let v = is_subalgebra(s, &set, kind)?;
        if let Some((x, y)) = v.white_witness {
            r.line(format!("white witness: {x}≺{y} with no c in A, {x}≺c≤{y}"));
        }
        if let Some((x, y)) = v.black_witness {
            r.line(format!("black witness: {y}≺{x} with no c in A, {y}≤c≺{x}"));
        }
        r.verdict(format!("{kind} subalgebra"), v.holds);
        r.verdict("inclusion is a morphism of the same kind", v.inclusion_agrees);
        r.set("subalgebra", &v);
    }

    if let (Some(map), Some(target)) = (&a.map, &a.target) {
        if !matches!(input::structure(target, cfg)?, Structure::Algebra(_)) {
            let kind = a.kind.unwrap_or(MorphismKind::Weak);
            let t = input::finite_arg(target, cfg)?;
            let f = BooleanMorphism::new(s.algebra(), t.algebra(), input::elements(map, t.algebra())?)?;
            let m = check_morphism(&f, s, &t, kind)?;
            if let Some(law) = m.boolean_violation {
                r.line(format!("Boolean law {law:?} fails"));
            }
            for (ax, w) in &m.checks {
                match w {
                    None => r.line(format!("{ax:?}: holds")),
                    Some((x, y)) => r.line(format!("{ax:?}: fails at ({x}, {y})")),
                }
            }
            if let Some(c) = m.operator_crosscheck {
                r.line(format!("agrees with ◇f(a) ≤ f(◇a): {}", if c { "yes" } else { "no" }));
            }
            r.verdict(format!("{kind} morphism"), m.holds());
            r.set("morphism", &m);
        }
    }
    Ok(())
}

fn congruence_kind(k: MorphismKind) -> CliResult<CongruenceKind> {
    match k {
        MorphismKind::White => Ok(CongruenceKind::White),
        MorphismKind::Black => Ok(CongruenceKind::Black),
        MorphismKind::Strong => Ok(CongruenceKind::Strong),
        MorphismKind::Weak => Err(CliError::Input("congruences are white, black or strong".into())),
    }
}

/// Checks on the underlying Boolean algebra: filters, generated
/// subalgebras and Boolean morphisms into a plain algebra.
fn boolean_checks(a: &CheckArgs, alg: BooleanAlgebra, cfg: &RunConfig, r: &mut Report) -> CliResult<()> {
    if let Some(set) = &a.set {
        let tag = a.tag.ok_or_else(|| CliError::Input("--set needs --tag filter|ideal".into()))?;
        let set = ElementSet::new(alg, input::elements(set, alg)?)?;
        let name = if tag == SetTag::Filter { "filter" } else { "ideal" };
        let (g, principal) = set.principal_generator(tag);
        r.verdict(format!("{} is a {name}", table(set.members().iter().copied())), set.satisfies(tag));
        r.line(format!("generated by {g}, principal: {}", if principal { "yes" } else { "no" }));
        r.set(name, set.satisfies(tag));
    }
    if let Some(gens) = &a.generate {
        let gens = input::elements(gens, alg)?;
        let sub = generated_boolean_subalgebra(alg, &gens)?;
        r.line(format!("generated Boolean subalgebra: {}", table(sub.members().iter().copied())));
        r.set("generated", sub.members());
    }
    if let (Some(map), Some(target)) = (&a.map, &a.target) {
        if let Structure::Algebra(t) = input::structure(target, cfg)? {
            let f = BooleanMorphism::new(alg, t, input::elements(map, t)?)?;
            match f.first_violation() {
                None => r.line("Boolean morphism: yes"),
                Some(law) => {
                    r.line(format!("Boolean morphism: no, {law:?} fails"));
                    r.fail();
                }
            }
        }
    }
    Ok(())
}

fn omega_congruence(a: &CheckArgs, e: &EquivSpec, r: &mut Report) -> CliResult<()> {
    let rel = input::relation(&a.space)?;
    let colours = match a.kind {
        None | Some(MorphismKind::Strong) => vec![SpaceColour::White, SpaceColour::Black],
        Some(MorphismKind::White) => vec![SpaceColour::White],
        Some(MorphismKind::Black) => vec![SpaceColour::Black],
        Some(MorphismKind::Weak) => return Err(CliError::Input("congruences are white, black or strong".into())),
    };
    r.line(format!("space: {}", a.space));
    for c in colours {
        let v = congruence_check(&rel, e, c)?;
        let name = if c == SpaceColour::White { "white" } else { "black" };
        r.verdict("Boolean congruence", v.boolean);
        match v.violation {
            None => r.line(format!("{name} lifting condition: holds (window below {} plus ω)", v.window)),
            Some((x, y, z)) => {
                r.line(format!("{name} lifting condition: fails at x={x}, y={y}, z={z}"));
                r.fail();
            }
        }
        r.line(format!("ω-class criterion: {}", if v.omega_criterion { "holds" } else { "fails" }));
        r.set(name, &v);
    }
    Ok(())
}

fn topology(set: &OmegaPlusSet, r: &mut Report) {
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.line(format!("set: {set}"));
    r.line(format!("complement: {}", set.complement()));
    r.line(format!("closure: {}", set.closure()));
    r.line(format!("interior: {}", set.interior()));
    r.line(format!("open: {}, closed: {}, clopen: {}", yes(set.is_open()), yes(set.is_closed()), yes(set.is_clopen())));
    r.set("clopen", set.is_clopen());
}

/// The least violating tuple of an axiom, written out.
pub fn axiom_witness(axiom: Axiom, w: &[Elem], s: &SubordinationAlgebra) -> String {
    let alg = s.algebra();
    match (axiom, w) {
        (Axiom::S1, [a, b]) => format!("{a}⊀{b}"),
        (Axiom::S2, [a, b, c]) => format!("{a}≺{b}, {a}≺{c}, {a}⊀{}", b & c),
        (Axiom::S3, [b, c, a]) => format!("{b}≺{a}, {c}≺{a}, {}⊀{a}", b | c),
        (Axiom::S4, [a, b, c, d]) => format!("{a}≤{b}≺{c}≤{d}, {a}⊀{d}"),
        (Axiom::S5, [a]) => format!("no nonzero b≺{a}"),
        (Axiom::S6, [a, b]) => format!("{a}≺{b}, {a}≰{b}"),
        (Axiom::S7, [a, b]) => format!("{a}≺{b}, {}⊀{}", alg.complement(*b), alg.complement(*a)),
        (Axiom::S8, [a, b]) => format!("{a}≺{b}, no c with {a}≺c≺{b}"),
        (Axiom::S2Complete, [a, m]) => format!("{a}⊀{m}, a meet of ≺({a},−)"),
        (Axiom::S3Complete, [a, j]) => format!("{j}⊀{a}, a join of ≺(−,{a})"),
        _ => format!("{w:?}"),
    }
}
