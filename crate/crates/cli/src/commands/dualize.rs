//! `dualize`: pass between finite subordination algebras and frames.

use clap::Args;
use subord::algebra::BooleanMorphism;
use subord::duality::{
    at, at_morphism, canonical_extension, delta_lift, factor_through_delta, mask_text, of, of_morphism, pset,
    sigma_pi_extension, ult, ult_morphism,
};
use subord::subordination::{MorphismKind, SubordinationAlgebra};
use subord::wire::Structure;
use subord::{FrameMorphism, KripkeFrame};

use super::table;
use crate::report::Report;
use crate::{input, CliError, CliResult, RunConfig};

/// Dual frame of an algebra or dual algebra of a frame, with round-trip check.
#[derive(Args, Debug)]
pub struct DualizeArgs {
    pub input: String,
    /// Use the discrete duality At/Pset instead of Ult/Of.
    #[arg(long)]
    pub discrete: bool,
    /// Report the canonical extension and its embedding `r`.
    #[arg(long)]
    pub canonical: bool,
    /// σ- and π-extensions at this point set of `Ult(S)`.
    #[arg(long)]
    pub sigma_pi: Option<String>,
    /// Morphism value table (algebra input) or point map (frame input).
    #[arg(long)]
    pub map: Option<String>,
    /// Codomain of `--map`.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, default_value = "weak")]
    pub kind: MorphismKind,
    /// Factor the algebra morphism through the canonical extension.
    #[arg(long)]
    pub factor: bool,
    /// Also write the dual structure as JSON to this file.
    #[arg(long)]
    pub emit: Option<String>,
}

pub fn run(a: &DualizeArgs, cfg: &RunConfig) -> CliResult<Report> {
    let s = input::structure(&a.input, cfg)?;
    let mut r = Report::new("dualize");
    let (algebra, dual) = match &s {
        Structure::Subordination(sa) => {
            let frame = if a.discrete { at(sa) } else { ult(sa) };
            let back = if a.discrete { pset(&frame)? } else { of(&frame)? };
            let (d, o) = if a.discrete { ("At", "Pset") } else { ("Ult", "Of") };
            r.line(format!("{d}(S): {} points, {} edges", frame.len(), frame.edges().count()));
            r.verdict(format!("round trip {o}({d}(S)) ≅ S"), back.is_isomorphic(sa));
            if let (Some(map), Some(target)) = (&a.map, &a.target) {
                algebra_morphism(a, sa, map, target, cfg, &mut r)?;
            }
            (sa.clone(), Structure::Frame(frame))
        }
        Structure::Frame(f) => {
            let (sa, _) = input::finite(&s, cfg)?;
            let sa = if a.discrete { pset(f)? } else { sa };
            let back = if a.discrete { at(&sa) } else { ult(&sa) };
            let (d, o) = if a.discrete { ("Pset", "At") } else { ("Of", "Ult") };
            r.line(format!("{d}(F): {} atoms, {} pairs", sa.algebra().atom_count(), sa.pairs().count()));
            r.verdict(format!("round trip {o}({d}(F)) ≅ F"), back.is_isomorphic(f));
            if let (Some(map), Some(target)) = (&a.map, &a.target) {
                frame_morphism(a, f, map, target, cfg, &mut r)?;
            }
            (sa.clone(), Structure::Subordination(sa))
        }
        other => return Err(CliError::Input(format!("cannot dualize a {} input", other.kind()))),
    };
    if a.canonical {
        let ext = canonical_extension(&algebra);
        r.line(format!("canonical extension: {} atoms", ext.extension.algebra().atom_count()));
        r.line(format!("r = {}", table(ext.r.map().iter().copied())));
        r.line(format!("r injective: {}, preserves ≺: {}, reflects ≺: {}", ext.injective, ext.preserves, ext.reflects));
        r.verdict("r is a weak embedding", ext.weak_embedding());
    }
    if let Some(e) = &a.sigma_pi {
        let e = input::elements(e, algebra.algebra())?;
        let e = e.iter().fold(0, |acc, x| acc | x);
        let (sigma, pi) = sigma_pi_extension(&algebra, e)?;
        r.line(format!("at E = {}: σ = {}, π = {}", mask_text(e), mask_text(sigma), mask_text(pi)));
        r.set("sigma", sigma);
        r.set("pi", pi);
    }
    if let Some(path) = &a.emit {
        let text = subord::wire::to_pretty_json(&dual) + "\n";
        std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
        r.line(format!("wrote {path}"));
    }
    r.set_structure(&dual);
    Ok(r)
}

fn algebra_morphism(
    a: &DualizeArgs,
    s: &SubordinationAlgebra,
    map: &str,
    target: &str,
    cfg: &RunConfig,
    r: &mut Report,
) -> CliResult<()> {
    let t = input::finite_arg(target, cfg)?;
    let f = BooleanMorphism::new(s.algebra(), t.algebra(), input::elements(map, t.algebra())?)?;
    let h = if a.discrete { at_morphism(&f, s, &t, a.kind)? } else { ult_morphism(&f, s, &t, a.kind)? };
    r.line(format!("dual point map: {}", super::list(h.map())));
    r.verdict(format!("dual is a {} frame morphism", a.kind), h.check(a.kind).holds());
    let back = of_morphism(&h, a.kind)?;
    r.verdict("dual of the dual is f", back.map() == f.map());
    let lift = delta_lift(&f, s, &t, a.kind)?;
    r.line(format!("lift to canonical extensions: {}", table(lift.map().iter().copied())));
    if a.factor {
        let d = factor_through_delta(&f, s, &t)?;
        r.line(format!("g: Sδ → C = {}", table(d.g.map().iter().copied())));
        r.verdict("g ∘ r = f", d.commutes);
        r.verdict("g is weak", d.g_weak);
        r.line(format!("g is white: {}", if d.g_white { "yes" } else { "no" }));
        r.line(format!("weak solutions of g ∘ r = f: {}", d.solutions));
        r.set("factorization_solutions", d.solutions);
    }
    Ok(())
}

fn frame_morphism(
    a: &DualizeArgs,
    f: &KripkeFrame,
    map: &str,
    target: &str,
    cfg: &RunConfig,
    r: &mut Report,
) -> CliResult<()> {
    let Structure::Frame(t) = input::structure(target, cfg)? else {
        return Err(CliError::Input("the target of a point map must be a frame".into()));
    };
    let h = FrameMorphism::new(f.clone(), t, input::indices(map)?)?;
    let report = h.check(a.kind);
    if !r.verdict(format!("{} frame morphism", a.kind), report.holds()) {
        r.set("frame_morphism", &report);
        return Ok(());
    }
    let dual = of_morphism(&h, a.kind)?;
    r.line(format!("dual algebra morphism: {}", table(dual.map().iter().copied())));
    Ok(())
}
