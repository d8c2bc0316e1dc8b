//! `omega`: exact operations on eventually periodic subsets of `ω⁺`.

use clap::Args;
use subord::omega::bounded_clopens;

use crate::report::Report;
use crate::{input, CliResult, RunConfig};

/// Images, σ/π values and filters for a set in an ω⁺ space.
#[derive(Args, Debug)]
pub struct OmegaArgs {
    /// Space name (`accumulation-loop`, `star-loop`, `converse-accumulation-loop`) or relation JSON.
    pub space: String,
    /// Set JSON, e.g. `{"kind":"cofinite","exceptions":[1],"omega":true}`.
    #[arg(long)]
    pub set: Option<String>,
    /// Second set: Boolean combinations and `SET ≺ OTHER`.
    #[arg(long, requires = "set")]
    pub other: Option<String>,
    /// Length of the descending chain printed for a non-principal filter.
    #[arg(long, default_value_t = 4)]
    pub chain: usize,
}

pub fn run(a: &OmegaArgs, cfg: &RunConfig) -> CliResult<Report> {
    let rel = input::relation(&a.space)?;
    let mut r = Report::new("omega");
    r.line(format!(
        "relation: {} base pairs, diagonal {}, ω-row {}, ω-column {}, ω-loop {}",
        rel.base_pairs.len(),
        rel.diagonal,
        rel.omega_row,
        rel.omega_col,
        rel.omega_loop
    ));
    let Some(set) = &a.set else {
        r.line(format!("clopens with exceptions below k={}: {}", cfg.k, bounded_clopens(cfg.k as u32).len()));
        return Ok(r);
    };
    let e = input::omega_set(set)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.line(format!("E = {e}"));
    r.line(format!("complement {}, closure {}, interior {}", e.complement(), e.closure(), e.interior()));
    r.line(format!("open {}, closed {}, clopen {}", yes(e.is_open()), yes(e.is_closed()), yes(e.is_clopen())));
    r.line(format!("◇E = {}", rel.diamond(&e)));
    r.line(format!("◆E = {}", rel.black_diamond(&e)));
    r.line(format!("□E = {}", rel.boxed(&e)));
    r.line(format!("■E = {}", rel.black_boxed(&e)));
    r.set("diamond", rel.diamond(&e));
    r.set("black_diamond", rel.black_diamond(&e));
    r.set("box", rel.boxed(&e));
    r.set("black_box", rel.black_boxed(&e));

    let sp = rel.sigma_pi(&e);
    r.line(format!("σ = {}, π = {}, direct image = {}", sp.sigma, sp.pi, sp.direct));
    r.verdict("σ, π and the direct image agree", sp.agree());
    r.set("sigma_pi", &sp);

    let (lhs, rhs) = rel.intersection_lemma_box(&e);
    r.line(format!("□(cl E) = {lhs}, ⋂{{□O | O ⊇ E clopen}} = {rhs}"));

    if e.is_clopen() {
        let v = rel.nonprincipal_witness(&e, a.chain)?;
        match &v.least {
            Some(least) => r.line(format!("≺(E,−) is principal, generated by {least}")),
            None if v.principal => r.line("≺(E,−) is principal"),
            None => {
                r.line("≺(E,−) is not principal; descending chain:");
                for u in &v.chain {
                    r.line(format!("  {u}"));
                }
            }
        }
        r.set("principal", v.principal);
    }

    if let Some(other) = &a.other {
        let f = input::omega_set(other)?;
        r.line(format!("F = {f}"));
        r.line(format!("E ∧ F = {}, E ∨ F = {}", e.meet(&f), e.join(&f)));
        r.line(format!("E ⊆ F: {}", yes(e.is_subset(&f))));
        let holds = rel.subordination_holds(&e, &f)?;
        r.line(format!("E ≺ F: {}", yes(holds)));
        r.set("prec", holds);
    }
    Ok(r)
}
