//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every criterion is exact; the runtime limits are part of the verdict.

mod common;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use subord::algebra::{BooleanAlgebra, BooleanMorphism, Elem};
use subord::correspondence::{
    builtin, check_equivalence, check_triple, correspondent_klmn, eval_frame_condition, eval_frame_condition_omega,
    eval_sub_condition_with, evaluate, gap_witnesses, translate_g_closed, translate_geq, translate_leq, Env, Family, FrameCondition,
    Polarity, SubModel,
};
use subord::duality::{of, sigma_pi_extension, ult};
use subord::generate::{
    all_frames_up_to, all_subordination_algebras, all_subordination_relations, open_closed_corpus, random_formula,
    random_frame, random_subordination_algebra, rng,
};
use subord::logic::{
    classify, frame_validity, omega_scheme_validity, omega_validity, validity, AlgebraModel, Formula, Semantics,
    Valuation, DEFAULT_BUDGET,
};
use subord::omega::{
    bounded_clopens, boolean_join, congruence_check, subalgebra_step, EquivSpec, OmegaPlusSet, Point, RelationSpec,
    SpaceColour, SubalgebraStep,
};
use subord::subordination::{
    all_partitions, check_morphism, congruence_lattice, first_isomorphism, is_congruence, product, quotient,
    second_isomorphism, third_isomorphism, Colour, Congruence, CongruenceKind, Partition,
    SubordinationAlgebra,
};
use subord::Error;

use common::{kinds_for, subalgebras_of_kind, subordination_closure};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn f(s: &str) -> Formula {
    Formula::parse(s).expect("formula")
}

fn criterion_1() -> Outcome {
    let mut exhaustive = 0;
    let mut bad = 0;
    for atoms in 1..=2 {
        for s in all_subordination_relations(atoms).expect("small") {
            exhaustive += 1;
            if !of(&ult(&s)).unwrap().is_isomorphic(&s) {
                bad += 1;
            }
        }
    }
    let mut r = rng(1);
    for i in 0..500 {
        let alg = BooleanAlgebra::new(3 + i % 2).unwrap();
        let gens: Vec<(Elem, Elem)> = (0..r.gen_range(1..6))
            .map(|_| (r.gen_range(0..alg.size() as Elem), r.gen_range(0..alg.size() as Elem)))
            .collect();
        let s = subordination_closure(alg, &gens);
        if !of(&ult(&s)).unwrap().is_isomorphic(&s) {
            bad += 1;
        }
    }
    let mut frames = 0;
    for frame in all_frames_up_to(3) {
        frames += 1;
        if !ult(&of(&frame).unwrap()).is_isomorphic(&frame) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{exhaustive} exhaustive + 500 random algebras, {frames} frames, {bad} failures"))
}

/// Condition (2) read directly off the partition.
fn lifting_condition(s: &SubordinationAlgebra, p: &Partition) -> bool {
    let labels = p.labels();
    let alg = s.algebra();
    alg.elements().all(|x| {
        alg.elements().filter(|&y| labels[x as usize] == labels[y as usize]).all(|y| {
            alg.elements()
                .filter(|&c| s.prec(y, c))
                .all(|c| alg.elements().any(|d| s.prec(x, d) && labels[d as usize] == labels[c as usize]))
        })
    })
}

fn criterion_2() -> Outcome {
    let mut partitions_checked = 0u64;
    let mut disagreements = 0;
    let mut lattices = 0;
    let mut lattice_failures = 0;
    for atoms in 1..=3 {
        let alg = BooleanAlgebra::new(atoms).unwrap();
        let parts = all_partitions(alg).unwrap();
        for s in all_subordination_algebras(atoms).unwrap() {
            for p in &parts {
                partitions_checked += 1;
                match is_congruence(&s, p, CongruenceKind::White) {
                    Ok(_) => {
                        for kind in CongruenceKind::ALL {
                            let v = is_congruence(&s, p, kind).unwrap();
                            let direct = match kind {
                                CongruenceKind::White => lifting_condition(&s, p),
                                CongruenceKind::Black => lifting_condition(&s.opposite(), p),
                                CongruenceKind::Strong => lifting_condition(&s, p) && lifting_condition(&s.opposite(), p),
                            };
                            if !v.agree || v.holds != direct {
                                disagreements += 1;
                            }
                        }
                    }
                    Err(Error::NotBooleanCongruence(_)) => {}
                    Err(_) => disagreements += 1,
                }
            }
            for kind in CongruenceKind::ALL {
                lattices += 1;
                if !congruence_lattice(&s, kind).verify().all() {
                    lattice_failures += 1;
                }
            }
        }
    }

    let mut r = rng(2);
    let mut iso_failures = 0;
    for i in 0..200 {
        let kind = CongruenceKind::ALL[i % 3];
        let atoms = r.gen_range(3..=4);
        let s = random_subordination_algebra(&mut r, atoms).unwrap();
        let congruences: Vec<Congruence> = congruence_lattice(&s, kind).congruences().collect();
        let theta = *congruences.choose(&mut r).unwrap();

        let target = random_subordination_algebra(&mut r, 2).unwrap();
        let mut maps: Vec<BooleanMorphism> = BooleanMorphism::all_between(s.algebra(), target.algebra())
            .into_iter()
            .filter(|g| check_morphism(g, &s, &target, kind.morphism_kind()).unwrap().holds())
            .collect();
        let first_ok = match maps.pop() {
            Some(g) => first_isomorphism(&g, &s, &target, kind).unwrap().all(),
            None => {
                let q = quotient(&s, &theta).unwrap();
                first_isomorphism(&q.projection, &s, &q.algebra, kind).unwrap().all()
            }
        };
        let subs = subalgebras_of_kind(&s, kind.morphism_kind());
        let sub = subs.choose(&mut r).unwrap();
        let second_ok = second_isomorphism(&s, sub, &theta).unwrap().all();
        let third_ok = third_isomorphism(&s, &theta).unwrap().isomorphic;
        if !(first_ok && second_ok && third_ok) {
            iso_failures += 1;
        }
    }
    outcome(
        disagreements == 0 && lattice_failures == 0 && iso_failures == 0,
        format!(
            "{partitions_checked} partitions, {disagreements} disagreements; {lattices} lattices, {lattice_failures} law failures; 200 isomorphism instances, {iso_failures} failures"
        ),
    )
}

fn criterion_3() -> Outcome {
    let rel = RelationSpec::accumulation_loop();
    let phi = f("p -> <>[]p");
    let formula = omega_validity(&rel, &phi, 6, DEFAULT_BUDGET).unwrap();
    // Every clopen O satisfies O ⊆ ◇□O, with ◇□O = O ∪ {ω} exactly when O is non-empty without ω.
    let shape = bounded_clopens(6).iter().all(|o| {
        let dbo = rel.diamond(&rel.boxed(o));
        let expected = if !o.is_empty() && !o.contains_omega() { o.with_omega(true) } else { o.clone() };
        dbo == expected
    });
    let v: Valuation<OmegaPlusSet> = [("p".to_string(), OmegaPlusSet::finite([0], false).complement())].into();
    let psi = rel.eval(&f("p & ~[]p"), &v).unwrap();
    let instance = rel.eval(&f("<>[](p & ~[]p)"), &v).unwrap();
    let scheme = omega_scheme_validity(&rel, &phi, 6, DEFAULT_BUDGET).unwrap();
    let pass = formula.valid
        && shape
        && psi == OmegaPlusSet::omega_only()
        && instance.is_empty()
        && !scheme.verdict.valid;
    outcome(
        pass,
        format!(
            "formula valid over {} valuations; ψ = {psi}; ◇□ψ = {instance}; scheme valid = {}",
            formula.valuations_checked, scheme.verdict.valid
        ),
    )
}

fn criterion_4() -> Outcome {
    let rel = RelationSpec::star_loop();
    let theta = EquivSpec::pairs();
    let xi = EquivSpec::shifted_pairs();
    let t = congruence_check(&rel, &theta, SpaceColour::White).unwrap();
    let x = congruence_check(&rel, &xi, SpaceColour::White).unwrap();
    let join = boolean_join(&theta, &xi).unwrap();
    let j = congruence_check(&rel, &join, SpaceColour::White).unwrap();
    let a = OmegaPlusSet::finite([0, 1], false);
    let c = OmegaPlusSet::cofinite([2], true);
    let witnesses = [&theta, &xi]
        .iter()
        .all(|e| matches!(subalgebra_step(&rel, e, &a, &c), Ok(SubalgebraStep::Witness(_))));
    let refuted = matches!(subalgebra_step(&rel, &join, &a, &c), Ok(SubalgebraStep::Refuted { .. }));
    let pass = t.is_congruence()
        && x.is_congruence()
        && j.boolean
        && j.violation == Some((Point::Nat(2), Point::Omega, Point::Nat(0)))
        && witnesses
        && refuted;
    outcome(pass, format!("θ, ξ congruences: {}, {}; join violation {:?}; subalgebra certificate {}", t.is_congruence(), x.is_congruence(), j.violation, witnesses && refuted))
}

fn criterion_5() -> Outcome {
    let family = Family::Frames(3);
    let mut divergences = 0;
    let mut structures = 0;
    for k in 0..=2 {
        for l in 0..=2 {
            for m in 0..=2 {
                for n in 0..=2 {
                    let t = correspondent_klmn(k, l, m, n);
                    let white = &t.formulas[0].formula;
                    let report = check_equivalence(white, Some(&t.frame), t.sub.as_ref(), &family).unwrap();
                    structures += report.structures_checked;
                    divergences += report.divergences.len();
                }
            }
        }
    }
    outcome(divergences == 0, format!("81 tuples, {structures} frame checks, {divergences} divergences"))
}

fn criterion_6() -> Outcome {
    let algebras = all_subordination_algebras(2).unwrap();
    let corpus = open_closed_corpus(&["p"], 2, 6);
    let mut checks = 0u64;
    let mut divergences = 0;
    for phi in &corpus {
        let translations: Vec<_> = [Polarity::Positive, Polarity::Negative]
            .into_iter()
            .flat_map(|pol| [(true, pol, translate_geq(phi, pol).unwrap()), (false, pol, translate_leq(phi, pol).unwrap())])
            .collect();
        for s in &algebras {
            let model = AlgebraModel::new(s);
            let alg = s.algebra();
            let full = model.extension.frame.full();
            let sub_model = SubModel::new(s, 1);
            for p in alg.elements() {
                let value = model.eval(phi, &[("p".to_string(), p)].into()).unwrap();
                for q in alg.elements() {
                    for (geq, pol, t) in &translations {
                        let hyp = model.extension.r.apply(if *pol == Polarity::Positive { q } else { alg.complement(q) });
                        let semantic = if *geq { hyp & !value & full == 0 } else { value & !hyp & full == 0 };
                        let mut env = Env::from_pairs([("p".to_string(), p), (t.hypothesis.clone(), q)]);
                        let syntactic = evaluate(&t.condition, &sub_model, &mut env).unwrap();
                        checks += 1;
                        if semantic != syntactic {
                            divergences += 1;
                        }
                    }
                }
            }
        }
    }
    let phi = f("[]<>p");
    let mut g_divergences = 0;
    for pol in [Polarity::Positive, Polarity::Negative] {
        let t = translate_g_closed(&phi, pol).unwrap();
        for s in &algebras {
            let model = AlgebraModel::new(s);
            let alg = s.algebra();
            for p in alg.elements() {
                let value = model.eval(&phi, &[("p".to_string(), p)].into()).unwrap();
                for q in alg.elements() {
                    let hyp = model.extension.r.apply(if pol == Polarity::Positive { q } else { alg.complement(q) });
                    let env = [("p".to_string(), p), (t.hypothesis.clone(), q)];
                    if (hyp & !value & alg.top() == 0) != eval_sub_condition_with(&t.condition, s, &env).unwrap() {
                        g_divergences += 1;
                    }
                }
            }
        }
    }
    outcome(
        divergences == 0 && g_divergences == 0,
        format!(
            "{} formulas, {checks} checks, {divergences} divergences; g-closed □◇p: {g_divergences} divergences",
            corpus.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let phi = f("p -> <>[]p");
    let class = classify(&phi);
    let inclusion = builtin("scheme-dcb").unwrap().frame;
    let equality = FrameCondition::parse("A x. E y. x R y & y R x & (A w. y R w -> w = x)").unwrap();
    let mut div_inclusion = 0;
    let mut div_equality = 0;
    let mut frames = 0;
    for frame in all_frames_up_to(3) {
        frames += 1;
        let valid = frame_validity(&frame, &phi, DEFAULT_BUDGET).unwrap().valid;
        if eval_frame_condition(&inclusion, &frame).unwrap() != valid {
            div_inclusion += 1;
        }
        if eval_frame_condition(&equality, &frame).unwrap() != valid {
            div_equality += 1;
        }
    }
    let rel = RelationSpec::accumulation_loop();
    let holds = omega_validity(&rel, &phi, 6, DEFAULT_BUDGET).unwrap().valid;
    let condition_fails = !eval_frame_condition_omega(&inclusion, &rel).unwrap();
    let pass = class.sahlqvist && !class.s_sahlqvist && div_inclusion == 0 && holds && condition_fails;
    outcome(
        pass,
        format!(
            "Sahlqvist {} s-Sahlqvist {}; {frames} frames: ⊆-form {div_inclusion} and =-form {div_equality} divergences; accumulation loop formula {holds}, f(φ) {}",
            class.sahlqvist, class.s_sahlqvist, !condition_fails
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut failures = 0;
    let mut nonvacuous = 0;
    for colour in [Colour::White, Colour::Black, Colour::Bi] {
        let (ckind, mkind) = kinds_for(colour);
        for _ in 0..300 {
            let (a, b) = (r.gen_range(1..=3), r.gen_range(1..=3));
            let s = random_subordination_algebra(&mut r, a).unwrap();
            let t = random_subordination_algebra(&mut r, b).unwrap();
            let phi = random_formula(&mut r, &["p", "q"], 2, colour);
            let valid = |a: &SubordinationAlgebra| validity(a, &phi, DEFAULT_BUDGET).unwrap().valid;
            let vs = valid(&s);
            if vs {
                nonvacuous += 1;
                for theta in congruence_lattice(&s, ckind).congruences() {
                    if !valid(&quotient(&s, &theta).unwrap().algebra) {
                        failures += 1;
                    }
                }
                for sub in subalgebras_of_kind(&s, mkind) {
                    if !valid(&s.restrict(&sub).unwrap().0) {
                        failures += 1;
                    }
                }
            }
            let prod = product(&[s.clone(), t.clone()]).unwrap();
            if valid(&prod.algebra) != (vs && valid(&t)) {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("900 pairs, {nonvacuous} with a valid source, {failures} failures"))
}

fn criterion_9() -> Outcome {
    let gaps: Vec<_> = gap_witnesses().unwrap().iter().map(|g| g.check().unwrap()).collect();
    let reproduced = gaps.iter().filter(|g| g.reproduces).count();
    let five = subord::KripkeFrame::from_named(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d"), ("c", "e")]).unwrap();
    let (small, _) = five.quotient(&[0, 1, 2, 1, 3]).unwrap();
    let expected = vec![(0, 1), (2, 1), (2, 3)];
    let gap_formula = f("<><+><>p -> <>p");
    let five_valid = frame_validity(&five, &gap_formula, DEFAULT_BUDGET).unwrap().valid;
    let quotient_valid = frame_validity(&small, &gap_formula, DEFAULT_BUDGET).unwrap().valid;
    let serial = subord::KripkeFrame::from_edges(2, [(0, 1), (1, 1)]).unwrap();
    let (sub, _) = serial.restrict(0b01).unwrap();
    let serial_white = frame_validity(&serial, &f("[]p -> <>p"), DEFAULT_BUDGET).unwrap().valid;
    let sub_white = frame_validity(&sub, &f("[]p -> <>p"), DEFAULT_BUDGET).unwrap().valid;
    let symmetry = check_triple(&builtin("symmetry").unwrap(), &Family::Frames(3)).unwrap();
    let symmetric_ok = symmetry.iter().all(|(_, rep)| rep.equivalent());
    let pass = reproduced == gaps.len()
        && five_valid
        && !quotient_valid
        && small.edges().collect::<Vec<_>>() == expected
        && serial_white
        && !sub_white
        && symmetric_ok;
    outcome(
        pass,
        format!(
            "{reproduced}/{} gap witnesses; 5-point frame {five_valid}, quotient {quotient_valid}; seriality frame {serial_white}, subobject {sub_white}; symmetry triple {}",
            gaps.len(),
            if symmetric_ok { "equivalent" } else { "diverges" }
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut finite = 0;
    let mut bad = 0;
    for frame in all_frames_up_to(3) {
        let s = of(&frame).unwrap();
        for e in frame.point_sets() {
            finite += 1;
            let direct = frame.diamond(e);
            if sigma_pi_extension(&s, e).unwrap() != (direct, direct) {
                bad += 1;
            }
        }
    }
    let mut sets = bounded_clopens(4);
    sets.extend([
        OmegaPlusSet::omega_only(),
        OmegaPlusSet::evens(),
        OmegaPlusSet::evens().with_omega(true),
        OmegaPlusSet::finite([1, 3], false),
        OmegaPlusSet::cofinite([0, 2], false),
        OmegaPlusSet::finite([0, 5], true),
    ]);
    let mut symbolic = 0;
    for (_, rel) in subord::correspondence::omega_spaces() {
        for e in &sets {
            symbolic += 1;
            if !rel.sigma_pi(e).agree() {
                bad += 1;
            }
        }
    }
    // The random frame family adds instances beyond three points.
    let mut r = rng(10);
    for _ in 0..50 {
        let frame = random_frame(&mut r, 4, 0.4).unwrap();
        let s = of(&frame).unwrap();
        for e in frame.point_sets() {
            finite += 1;
            if sigma_pi_extension(&s, e).unwrap() != (frame.diamond(e), frame.diamond(e)) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{finite} finite and {symbolic} symbolic sets, {bad} mismatches"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("duality round trip", Duration::from_secs(60), criterion_1),
        ("congruence theory", Duration::from_secs(60), criterion_2),
        ("ω⁺ non-normality", Duration::from_secs(5), criterion_3),
        ("ω⁺ congruence join", Duration::from_secs(5), criterion_4),
        ("klmn correspondence", Duration::from_secs(300), criterion_5),
        ("translations", Duration::from_secs(300), criterion_6),
        ("Sahlqvist classification", Duration::MAX, criterion_7),
        ("preservation", Duration::from_secs(120), criterion_8),
        ("expressivity", Duration::MAX, criterion_9),
        ("smoothness", Duration::MAX, criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed < *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {name}: {} ({}; {:.2}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
