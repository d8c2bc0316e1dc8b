//! `validate`: validity of a formula or scheme on a finite structure, a
//! frame or an `ω⁺` space.

use std::collections::BTreeMap;

use clap::Args;
use subord::algebra::Elem;
use subord::duality::{mask_text, of};
use subord::logic::{
    check_tense_frame, check_tense_table, classify, frame_validity, omega_scheme_validity, omega_validity,
    scheme_validity, validity, AlgebraModel, BimodalFrame, Formula, Semantics, TableAlgebra, TenseReport,
    DEFAULT_BUDGET,
};
use subord::omega::{bounded_clopens, OmegaPlusSet};
use subord::wire::Structure;

use crate::report::Report;
use crate::{input, CliError, CliResult, RunConfig};

/// Decide validity of a formula, or of the scheme it stands for.
#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Structure: file, `-`, inline JSON or a built-in ω⁺ space name.
    #[arg(long)]
    pub structure: String,
    #[arg(long)]
    pub formula: String,
    /// Validity under every substitution of formulas for variables.
    #[arg(long)]
    pub scheme: bool,
    /// Evaluate under this valuation (JSON object) instead of sweeping.
    #[arg(long)]
    pub valuation: Option<String>,
    /// Also print the syntactic classes of the formula.
    #[arg(long)]
    pub classify: bool,
    /// Check the tense axioms on the structure.
    #[arg(long)]
    pub tense: bool,
    /// Black relation for `--tense` on a frame; defaults to the converse.
    #[arg(long)]
    pub black: Option<String>,
}

fn show_counter<V>(counter: &BTreeMap<String, V>, show: impl Fn(&V) -> String) -> String {
    counter.iter().map(|(k, v)| format!("{k} = {}", show(v))).collect::<Vec<_>>().join(", ")
}

fn tense_line<V>(r: &mut Report, t: &TenseReport<V>) {
    r.line(format!(
        "K white {}, K black {}, p → □◆p {}, ◆□p → p {}",
        t.k_white.valid, t.k_black.valid, t.t1.valid, t.t2.valid
    ));
    r.verdict("tense axioms hold", t.is_tense());
}

pub fn run(a: &ValidateArgs, cfg: &RunConfig) -> CliResult<Report> {
    let phi = Formula::parse(&a.formula)?;
    let s = input::structure(&a.structure, cfg)?;
    let mut r = Report::new("validate");
    r.line(format!("formula: {phi}"));
    r.line(format!("negation normal form: {}", phi.nnf()));
    r.set("formula", phi.to_string());
    if a.classify {
        let c = classify(&phi);
        r.line(format!(
            "closed {}, open {}, g-closed {}, g-open {}, Sahlqvist {}, s-Sahlqvist {}",
            c.closed, c.open, c.g_closed, c.g_open, c.sahlqvist, c.s_sahlqvist
        ));
        r.set("class", c);
    }
    match &s {
        Structure::Omega(rel) => {
            let k = cfg.k as u32;
            if let Some(v) = &a.valuation {
                let v = input::valuation::<OmegaPlusSet>(v)?;
                let value = rel.eval(&phi, &v)?;
                r.line(format!("value: {value}"));
                r.set("value", &value);
            } else if a.scheme {
                let sv = omega_scheme_validity(rel, &phi, k, DEFAULT_BUDGET)?;
                r.line(format!(
                    "{} closure of clopens with exceptions below k={k}: {} sets",
                    sv.colour, sv.closure_size
                ));
                finish(&mut r, sv.verdict.valid, sv.verdict.valuations_checked, sv.verdict.counter.as_ref(), |e| e.to_string());
                for (var, term) in &sv.witness_terms {
                    r.line(format!("  {var} generated by {term}"));
                }
            } else {
                let v = omega_validity(rel, &phi, k, DEFAULT_BUDGET)?;
                r.line(format!("bounded clopen sweep: exceptions below k={k}, {} clopens", bounded_clopens(k).len()));
                finish(&mut r, v.valid, v.valuations_checked, v.counter.as_ref(), |e| e.to_string());
            }
            if a.tense {
                return Err(CliError::Input("--tense needs a finite structure".into()));
            }
        }
        Structure::Frame(f) => {
            if let Some(v) = &a.valuation {
                let v = input::valuation::<Elem>(v)?;
                let value = f.eval(&phi, &v)?;
                r.line(format!("value: {}", mask_text(value)));
                r.set("value", value);
            } else if a.scheme {
                scheme(&mut r, &of(f)?, &phi)?;
            } else {
                let v = frame_validity(f, &phi, DEFAULT_BUDGET)?;
                finish(&mut r, v.valid, v.valuations_checked, v.counter.as_ref(), |e| mask_text(*e));
            }
            if a.tense {
                let b = match &a.black {
                    Some(black) => match input::structure(black, cfg)? {
                        Structure::Frame(black) => BimodalFrame::new(f.clone(), black)?,
                        _ => return Err(CliError::Input("--black must be a frame".into())),
                    },
                    None => BimodalFrame::of(f),
                };
                tense_line(&mut r, &check_tense_frame(&b, DEFAULT_BUDGET)?);
            }
        }
        Structure::Subordination(sa) => {
            if let Some(v) = &a.valuation {
                let v = input::valuation::<Elem>(v)?;
                let value = AlgebraModel::new(sa).eval(&phi, &v)?;
                r.line(format!("value in Sδ: {}", mask_text(value)));
                r.set("value", value);
            } else if a.scheme {
                scheme(&mut r, sa, &phi)?;
            } else {
                let v = validity(sa, &phi, DEFAULT_BUDGET)?;
                finish(&mut r, v.valid, v.valuations_checked, v.counter.as_ref(), |e| e.to_string());
            }
            if a.tense {
                let table = TableAlgebra {
                    algebra: sa.algebra(),
                    diamond: sa.diamond_table(),
                    black_diamond: sa.black_diamond_table(),
                };
                tense_line(&mut r, &check_tense_table(&table, DEFAULT_BUDGET)?);
            }
        }
        other => return Err(CliError::Input(format!("cannot validate on a {} input", other.kind()))),
    }
    Ok(r)
}

fn scheme(r: &mut Report, s: &subord::SubordinationAlgebra, phi: &Formula) -> CliResult<()> {
    let sv = scheme_validity(s, phi, DEFAULT_BUDGET)?;
    r.line(format!("{} modalization: {} elements", sv.colour, sv.closure_size));
    finish(r, sv.verdict.valid, sv.verdict.valuations_checked, sv.verdict.counter.as_ref(), |e| mask_text(*e));
    for (var, term) in &sv.witness_terms {
        r.line(format!("  {var} generated by {term}"));
    }
    Ok(())
}

fn finish<V>(r: &mut Report, valid: bool, checked: u128, counter: Option<&BTreeMap<String, V>>, show: impl Fn(&V) -> String) {
    r.line(format!("valuations checked: {checked}"));
    r.set("valuations_checked", checked as u64);
    r.verdict("valid", valid);
    r.set("valid", valid);
    if let Some(c) = counter {
        r.line(format!("counter-valuation: {}", show_counter(c, &show)));
        let shown: BTreeMap<&String, String> = c.iter().map(|(k, v)| (k, show(v))).collect();
        r.set("counter", shown);
    }
}
