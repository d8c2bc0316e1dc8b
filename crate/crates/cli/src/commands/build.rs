//! Constructions: `quotient`, `product` and `modalize`.

use clap::Args;
use subord::algebra::ElementSet;
use subord::duality::{canonical_extension, canonical_product_map, mask_text, modalize};
use subord::logic::{check_tense_frame, BimodalFrame, DEFAULT_BUDGET};
use subord::subordination::{
    categorical_product_test, check_morphism, congruence_lattice, first_isomorphism, is_congruence, product, quotient,
    second_isomorphism, third_isomorphism, Congruence, CongruenceKind, MorphismKind, Partition,
};
use subord::wire::Structure;

use super::{list, ColourArg};
use crate::report::Report;
use crate::{input, CliError, CliResult, RunConfig};

/// Quotient by a congruence given as a partition or a kernel.
#[derive(Args, Debug)]
pub struct QuotientArgs {
    pub input: String,
    /// Partition as JSON (file or inline).
    #[arg(long, conflicts_with = "kernel")]
    pub partition: Option<String>,
    /// Kernel element: the 0-class is its down-set.
    #[arg(long)]
    pub kernel: Option<String>,
    #[arg(long, default_value = "strong")]
    pub kind: CongruenceKind,
    /// Enumerate and verify the congruence lattice.
    #[arg(long)]
    pub lattice: bool,
    /// Check the isomorphism theorems for this congruence.
    #[arg(long)]
    pub theorems: bool,
    /// Subalgebra for the second isomorphism theorem.
    #[arg(long)]
    pub subset: Option<String>,
    #[arg(long)]
    pub emit: Option<String>,
}

pub fn run_quotient(a: &QuotientArgs, cfg: &RunConfig) -> CliResult<Report> {
    let (s, _) = input::finite(&input::structure(&a.input, cfg)?, cfg)?;
    let alg = s.algebra();
    let mut r = Report::new("quotient");
    let kind = a.kind;
    if a.lattice {
        let lattice = congruence_lattice(&s, kind);
        r.line(format!("{} congruences: {} kernels [{}]", kind.name(), lattice.len(), list(&lattice.kernels)));
        let check = lattice.verify();
        r.verdict("bounded, meets are intersections, joins are congruences, frame law", check.all());
        r.set("lattice", &lattice.kernels);
        r.set("lattice_check", check);
    }
    let partition = match (&a.partition, &a.kernel) {
        (Some(p), _) => input::partition(p, alg)?,
        (None, Some(k)) => {
            let k = input::elements(k, alg)?;
            Partition::from_kernel(alg, k.iter().fold(0, |acc, x| acc | x))
        }
        (None, None) if a.lattice => return Ok(r),
        (None, None) => return Err(CliError::Input("give --partition or --kernel".into())),
    };
    let Ok(kernel) = partition.boolean_kernel() else {
        r.verdict("partition is a Boolean congruence", false);
        return Ok(r);
    };
    let v = is_congruence(&s, &partition, kind)?;
    r.set("congruence", &v);
    if !r.verdict(format!("{} congruence with kernel {kernel}", kind.name()), v.holds) {
        return Ok(r);
    }
    let c = Congruence { kernel, kind };
    let q = quotient(&s, &c)?;
    r.line(format!("quotient: {} atoms, {} pairs", q.algebra.algebra().atom_count(), q.algebra.pairs().count()));
    r.line(format!("projection: {}", super::table(q.projection.map().iter().copied())));
    r.verdict(format!("projection is a {} morphism", kind.name()), q.projection_verified);
    let kinds: Vec<&str> = MorphismKind::ALL
        .into_iter()
        .filter(|&k| check_morphism(&q.projection, &s, &q.algebra, k).map(|m| m.holds()).unwrap_or(false))
        .map(MorphismKind::name)
        .collect();
    r.line(format!("projection kinds: {}", kinds.join(", ")));
    r.set("projection_kinds", &kinds);
    if kernel == 0 {
        r.verdict("identity partition gives back the input", q.algebra == s);
    }
    if a.theorems {
        let first = first_isomorphism(&q.projection, &s, &q.algebra, kind)?;
        r.verdict("first isomorphism theorem on the projection", first.all());
        let third = third_isomorphism(&s, &c)?;
        r.line(format!(
            "third: Con(B/θ) has {} members, ↑θ has {}",
            third.quotient_congruences, third.filter_size
        ));
        r.verdict("third isomorphism theorem", third.isomorphic);
        if let Some(sub) = &a.subset {
            let set = ElementSet::new(alg, input::elements(sub, alg)?)?;
            let second = second_isomorphism(&s, &set, &c)?;
            r.verdict("second isomorphism theorem", second.all());
        }
    }
    let out = Structure::Subordination(q.algebra);
    emit(a.emit.as_deref(), &out, &mut r)?;
    r.set_structure(&out);
    Ok(r)
}

fn emit(path: Option<&str>, s: &Structure, r: &mut Report) -> CliResult<()> {
    if let Some(path) = path {
        std::fs::write(path, subord::wire::to_pretty_json(s) + "\n")
            .map_err(|source| CliError::Io { path: path.into(), source })?;
        r.line(format!("wrote {path}"));
    }
    Ok(())
}

/// Product of one to three algebras, with the categorical product test.
#[derive(Args, Debug)]
pub struct ProductArgs {
    #[arg(required = true)]
    pub inputs: Vec<String>,
    /// Domain algebra for the categorical test; defaults to the first factor.
    #[arg(long)]
    pub test: Option<String>,
    #[arg(long, default_value = "strong")]
    pub kind: MorphismKind,
    #[arg(long)]
    pub emit: Option<String>,
}

pub fn run_product(a: &ProductArgs, cfg: &RunConfig) -> CliResult<Report> {
    let family = a.inputs.iter().map(|i| input::finite_arg(i, cfg)).collect::<CliResult<Vec<_>>>()?;
    let atoms: usize = family.iter().map(|s| s.algebra().atom_count()).sum();
    if atoms > cfg.max_atoms {
        return Err(CliError::Input(format!("product has {atoms} atoms, --max-atoms is {}", cfg.max_atoms)));
    }
    let mut r = Report::new("product");
    let p = product(&family)?;
    r.line(format!("product: {atoms} atoms, {} pairs", p.algebra.pairs().count()));
    for (j, (proj, factor)) in p.projections.iter().zip(&family).enumerate() {
        let ok = check_morphism(proj, &p.algebra, factor, MorphismKind::Strong)?.holds();
        r.verdict(format!("projection {j} is strong"), ok);
    }
    if family.len() <= 3 {
        let test = match &a.test {
            Some(t) => input::finite_arg(t, cfg)?,
            None => family[0].clone(),
        };
        let t = categorical_product_test(&family, &test, a.kind)?;
        r.line(format!("categorical test: {} tuples of {} morphisms paired", t.tuples_checked, a.kind));
        r.verdict("every tuple pairs to a unique morphism", t.holds());
    }
    let m = canonical_product_map(&family)?;
    r.line(format!("canonical map (ΠAⱼ)δ → Π(Aⱼδ): bijective {}", m.bijective));
    r.line(format!("good family: {}, s-good family: {}", m.good, m.s_good));
    r.set("good", m.good);
    r.set("s_good", m.s_good);
    let out = Structure::Subordination(p.algebra);
    emit(a.emit.as_deref(), &out, &mut r)?;
    r.set_structure(&out);
    Ok(r)
}

/// Subalgebra of the canonical extension generated by the image of B.
#[derive(Args, Debug)]
pub struct ModalizeArgs {
    pub input: String,
    #[arg(long, value_enum, default_value_t = ColourArg::Bi)]
    pub colour: ColourArg,
    /// Largest closure computed before giving up.
    #[arg(long, default_value_t = 1 << 16)]
    pub budget: usize,
}

pub fn run_modalize(a: &ModalizeArgs, cfg: &RunConfig) -> CliResult<Report> {
    let (s, _) = input::finite(&input::structure(&a.input, cfg)?, cfg)?;
    let mut r = Report::new("modalize");
    let ext = canonical_extension(&s);
    let m = modalize(&s, a.colour.into(), a.budget)?;
    r.line(format!("embedding r = {}", super::table(ext.r.map().iter().copied())));
    r.line(format!("{} closure: {} of {} elements of Sδ", m.colour, m.len(), m.extension_size));
    r.line(format!("whole extension: {}", if m.is_whole_extension() { "yes" } else { "no" }));
    for g in &m.elements {
        r.line(format!("  {} = {}", mask_text(g.element), g.term));
    }
    let tense = check_tense_frame(&BimodalFrame::of(&ext.frame), DEFAULT_BUDGET)?;
    r.verdict("Sδ satisfies the tense axioms", tense.is_tense());
    r.set("closure_size", m.len());
    r.set("extension_size", m.extension_size);
    r.set("modalization", &m);
    Ok(r)
}
