//! `correspond`: formulas against first-order conditions, and the
//! algorithmic translations.

use clap::{Args, ValueEnum};
use subord::correspondence::{
    builtin, builtin_library, check_equivalence, check_triple, eval_frame_condition, eval_frame_condition_omega,
    eval_sub_condition, translate_g_closed, translate_geq, translate_leq, EquivalenceReport, Family,
    FrameCondition, Polarity, SubCondition,
};
use subord::logic::Formula;
use subord::wire::Structure;

use crate::report::Report;
use crate::{input, CliError, CliResult, RunConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Geq,
    Leq,
    GClosed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolarityArg {
    Positive,
    Negative,
}

/// Check a formula against frame and algebra conditions, or translate it.
#[derive(Args, Debug)]
pub struct CorrespondArgs {
    /// Library triple, e.g. `seriality` or `klmn:1,0,1,1`.
    #[arg(long, conflicts_with = "formula")]
    pub builtin: Option<String>,
    #[arg(long)]
    pub formula: Option<String>,
    /// First-order frame condition, e.g. `A x. E y. x R y`.
    #[arg(long)]
    pub frame_condition: Option<String>,
    /// Condition in the language of ≺, e.g. `A b. 1 < b -> b = 1`.
    #[arg(long)]
    pub sub_condition: Option<String>,
    /// `frames:N`, `random:COUNT:MAX_POINTS[:SEED]` or `omega:K`.
    #[arg(long, default_value = "frames:3")]
    pub family: String,
    /// Evaluate the given conditions on this structure instead.
    #[arg(long)]
    pub structure: Option<String>,
    #[arg(long, value_enum)]
    pub translate: Option<Direction>,
    #[arg(long, value_enum, default_value_t = PolarityArg::Positive)]
    pub polarity: PolarityArg,
    /// List the library triples.
    #[arg(long)]
    pub list: bool,
}

fn family(text: &str, cfg: &RunConfig) -> CliResult<Family> {
    let parts: Vec<&str> = text.split(':').collect();
    let text = if parts.len() == 3 && parts[0] == "random" { format!("{text}:{}", cfg.seed) } else { text.to_string() };
    let f = Family::parse(&text)?;
    let points = match &f {
        Family::Frames(n) => *n,
        Family::RandomFrames { max_points, .. } => *max_points,
        Family::Omega { .. } => 0,
    };
    if points > cfg.max_points {
        return Err(CliError::Input(format!("family reaches {points} points, --max-points is {}", cfg.max_points)));
    }
    Ok(f)
}

fn equivalence_lines(r: &mut Report, label: &str, rep: &EquivalenceReport) {
    let n = rep.divergences.len();
    r.verdict(format!("{label} {}: equivalent on {} structures", rep.formula, rep.structures_checked), n == 0);
    if let Some(d) = rep.divergences.first() {
        r.line(format!(
            "  {n} divergences, first on {}: formula {}, frame condition {:?}, ≺ condition {:?}",
            d.structure, d.formula_valid, d.frame_holds, d.sub_holds
        ));
    }
}

pub fn run(a: &CorrespondArgs, cfg: &RunConfig) -> CliResult<Report> {
    let mut r = Report::new("correspond");
    if a.list {
        let lib = builtin_library();
        for t in &lib {
            let fs: Vec<String> = t.formulas.iter().map(|f| format!("{}: {}", f.label, f.formula)).collect();
            r.line(format!("{}: {}", t.name, fs.join("; ")));
        }
        r.set("builtins", lib.iter().map(|t| t.name.clone()).collect::<Vec<_>>());
        return Ok(r);
    }
    let frame_cond = a.frame_condition.as_deref().map(FrameCondition::parse).transpose()?;
    let sub_cond = a.sub_condition.as_deref().map(SubCondition::parse).transpose()?;

    if let Some(name) = &a.builtin {
        let t = builtin(name)?;
        r.line(format!("frame condition: {}", t.frame));
        if let Some(s) = &t.sub {
            r.line(format!("≺ condition: {s}"));
        }
        for (label, text) in &t.reference {
            r.line(format!("reference {label}: {text}"));
        }
        if !t.note.is_empty() {
            r.line(format!("note: {}", t.note));
        }
        let reports = check_triple(&t, &family(&a.family, cfg)?)?;
        for (label, rep) in &reports {
            equivalence_lines(&mut r, label, rep);
        }
        r.set("reports", &reports);
        return Ok(r);
    }

    if let Some(structure) = &a.structure {
        if frame_cond.is_none() && sub_cond.is_none() {
            return Err(CliError::Input("--structure needs --frame-condition or --sub-condition".into()));
        }
        let s = input::structure(structure, cfg)?;
        if let Some(c) = &frame_cond {
            let holds = match &s {
                Structure::Frame(f) => eval_frame_condition(c, f)?,
                Structure::Omega(rel) => eval_frame_condition_omega(c, rel)?,
                other => return Err(CliError::Input(format!("frame conditions need a frame, got {}", other.kind()))),
            };
            r.verdict(format!("{c} holds"), holds);
        }
        if let Some(c) = &sub_cond {
            let (sa, _) = input::finite(&s, cfg)?;
            r.verdict(format!("{c} holds"), eval_sub_condition(c, &sa)?);
        }
        return Ok(r);
    }

    let text = a.formula.as_deref().ok_or_else(|| CliError::Input("give --builtin, --formula or --list".into()))?;
    let phi = Formula::parse(text)?;
    if let Some(dir) = a.translate {
        let pol = match a.polarity {
            PolarityArg::Positive => Polarity::Positive,
            PolarityArg::Negative => Polarity::Negative,
        };
        let t = match dir {
            Direction::Geq => translate_geq(&phi, pol)?,
            Direction::Leq => translate_leq(&phi, pol)?,
            Direction::GClosed => translate_g_closed(&phi, pol)?,
        };
        r.line(format!("hypothesis: {} ({:?})", t.hypothesis, t.polarity));
        r.line(format!("condition: {}", t.condition));
        for v in &t.fresh {
            r.line(format!("  {} {} for {} ({})", v.quantifier, v.name, v.subformula, v.clause));
        }
        r.set("translation", &t);
        r.set("condition", t.condition.to_string());
        return Ok(r);
    }
    if frame_cond.is_none() && sub_cond.is_none() {
        return Err(CliError::Input("--formula needs --frame-condition, --sub-condition or --translate".into()));
    }
    let rep = check_equivalence(&phi, frame_cond.as_ref(), sub_cond.as_ref(), &family(&a.family, cfg)?)?;
    equivalence_lines(&mut r, "formula", &rep);
    r.set("report", &rep);
    Ok(r)
}
