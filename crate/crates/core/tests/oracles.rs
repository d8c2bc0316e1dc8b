//! Library results checked against brute-force oracles and against frozen
//! values from the worked examples.

mod common;

use subord::algebra::BooleanAlgebra;
use subord::correspondence::{
    builtin, check_equivalence, correspondent_klmn, eval_sub_condition, Family, SubCondition,
};
use subord::duality::{at, canonical_extension, of, ult};
use subord::generate::{all_frames, all_frames_up_to, all_subordination_relations, nnf_corpus, random_formula, rng};
use subord::logic::{
    check_tense_frame, classify, frame_validity, validity, AlgebraModel, BimodalFrame, Formula,
    DEFAULT_BUDGET,
};
use subord::omega::{boolean_join, EquivSpec, OmegaPlusSet, Point, RelationSpec};
use subord::subordination::{
    all_partitions, check_axioms, congruence_lattice, Axiom, Colour, CongruenceKind, SubordinationAlgebra,
};
use subord::KripkeFrame;

use common::{boolean_subalgebras, forces, set_partitions, subordination_closure};

fn f(s: &str) -> Formula {
    Formula::parse(s).unwrap()
}

#[test]
fn enumeration_counts() {
    assert_eq!(all_subordination_relations(1).unwrap().len(), 2);
    assert_eq!(all_subordination_relations(2).unwrap().len(), 16);
    assert_eq!(all_frames_up_to(3).count(), 530);
    let bell: Vec<usize> = (1..=5).map(|n| set_partitions(n).len()).collect();
    assert_eq!(bell, [1, 2, 5, 15, 52]);
    assert_eq!(all_partitions(BooleanAlgebra::new(3).unwrap()).unwrap().len(), 4140);
    assert_eq!(boolean_subalgebras(BooleanAlgebra::new(3).unwrap()).len(), 5);
}

#[test]
fn ult_matches_searched_ultrafilters() {
    for s in all_subordination_relations(2).unwrap() {
        let alg = s.algebra();
        let us = alg.ultrafilters_by_search();
        assert_eq!(us.len(), 2);
        // Order the searched ultrafilters by the atom they contain.
        let mut by_atom = vec![None; 2];
        for u in &us {
            let atom = alg.atoms().position(|a| u.contains(a)).unwrap();
            by_atom[atom] = Some(u.clone());
        }
        let us: Vec<_> = by_atom.into_iter().map(Option::unwrap).collect();
        let oracle = KripkeFrame::from_fn(2, |x, y| {
            us[y].members().iter().all(|&b| alg.elements().filter(|&c| s.prec(b, c)).all(|c| us[x].contains(c)))
        })
        .unwrap();
        assert_eq!(ult(&s).relation(), oracle.relation());
        assert_eq!(at(&s).relation(), oracle.relation());
    }
}

#[test]
fn closure_generator_hits_every_small_relation() {
    let alg = BooleanAlgebra::new(2).unwrap();
    for s in all_subordination_relations(2).unwrap() {
        let gens: Vec<_> = s.pairs().collect();
        assert_eq!(subordination_closure(alg, &gens), s);
    }
}

#[test]
fn algebraic_evaluation_matches_pointwise_forcing() {
    let corpus = nnf_corpus(&["p"], 3, 5);
    let mut r = rng(4);
    let mut extra: Vec<Formula> =
        (0..200).map(|_| random_formula(&mut r, &["p", "q"], 3, Colour::Bi)).collect();
    extra.retain(|phi| phi.modal_depth() <= 3);
    let frames: Vec<KripkeFrame> = all_frames_up_to(2).chain(all_frames(3).step_by(7)).collect();
    for frame in &frames {
        let model = AlgebraModel::new(&of(frame).unwrap());
        for phi in corpus.iter().chain(&extra) {
            let vars: Vec<String> = phi.variables().into_iter().collect();
            let assignments = 1u32 << (vars.len() * frame.len());
            for bits in 0..assignments {
                let value_of = |i: usize| (bits >> (i * frame.len())) & ((1 << frame.len()) - 1);
                let v = vars.iter().enumerate().map(|(i, name)| (name.clone(), value_of(i))).collect();
                let algebraic = model.eval(phi, &v).unwrap();
                let point = |name: &str, x: usize| {
                    let i = vars.iter().position(|n| n == name).unwrap();
                    value_of(i) >> x & 1 == 1
                };
                let pointwise = (0..frame.len()).filter(|&x| forces(frame, phi, x, &point)).fold(0, |acc, x| acc | 1 << x);
                assert_eq!(algebraic, pointwise, "{phi} on {frame:?}");
            }
        }
    }
}

#[test]
fn canonical_extensions_are_tense() {
    for frame in all_frames_up_to(3) {
        let s = of(&frame).unwrap();
        let ext = canonical_extension(&s);
        assert!(ext.weak_embedding());
        assert!(check_tense_frame(&BimodalFrame::of(&ext.frame), DEFAULT_BUDGET).unwrap().is_tense());
    }
}

#[test]
fn tense_iff_converse_on_two_points() {
    for white in all_frames(2) {
        for black in all_frames(2) {
            let b = BimodalFrame::new(white.clone(), black).unwrap();
            let report = check_tense_frame(&b, DEFAULT_BUDGET).unwrap();
            assert_eq!(report.is_tense(), b.black_is_converse());
        }
    }
}

#[test]
fn order_relation_and_trivial_violation() {
    let alg = BooleanAlgebra::new(2).unwrap();
    let order = SubordinationAlgebra::order(alg);
    assert!(check_axioms(&order, &Axiom::BASIC).all_hold());
    let bad = SubordinationAlgebra::from_pairs(BooleanAlgebra::new(1).unwrap(), [(1, 1)]).unwrap();
    let report = check_axioms(&bad, &Axiom::BASIC);
    assert_eq!(report.first_failure().unwrap().axiom, Axiom::S1);
}

#[test]
fn unicolour_gap_quotient_relation() {
    let five = KripkeFrame::from_named(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d"), ("c", "e")]).unwrap();
    let (small, h) = five.quotient(&[0, 1, 2, 1, 3]).unwrap();
    assert_eq!(small.edges().collect::<Vec<_>>(), [(0, 1), (2, 1), (2, 3)]);
    assert_eq!(small.label(1), "b/d");
    assert!(h.is_morphism(subord::MorphismKind::White));
    let phi = f("<><+><>p -> <>p");
    assert!(frame_validity(&five, &phi, DEFAULT_BUDGET).unwrap().valid);
    assert!(!frame_validity(&small, &phi, DEFAULT_BUDGET).unwrap().valid);
}

#[test]
fn omega_join_has_the_head_pair_and_one_big_class() {
    let j = boolean_join(&EquivSpec::pairs(), &EquivSpec::shifted_pairs()).unwrap();
    assert!(j.related(Point::Nat(0), Point::Nat(1)));
    assert!(!j.related(Point::Nat(1), Point::Nat(2)));
    for n in 2..40 {
        assert!(j.related(Point::Nat(n), Point::Omega), "{n}");
    }
}

#[test]
fn accumulation_loop_diamond_box_images() {
    let rel = RelationSpec::accumulation_loop();
    let o = OmegaPlusSet::finite([1, 4], false);
    assert_eq!(rel.diamond(&rel.boxed(&o)), OmegaPlusSet::finite([1, 4], true));
    let c = OmegaPlusSet::cofinite([3], true);
    assert_eq!(rel.diamond(&rel.boxed(&c)), c);
}

fn printed_twin_divergent_tuples() -> usize {
    let family = Family::Frames(3);
    let mut count = 0;
    for k in 0..=2 {
        for l in 0..=2 {
            for m in 0..=2 {
                for n in 0..=2 {
                    let t = correspondent_klmn(k, l, m, n);
                    let printed = f(&t.reference[0].1);
                    if !check_equivalence(&printed, Some(&t.frame), None, &family).unwrap().equivalent() {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn printed_condition_divergent_tuples() -> usize {
    let mut count = 0;
    let frames: Vec<KripkeFrame> = all_frames_up_to(3).collect();
    for k in 0..=2 {
        for l in 0..=2 {
            for m in 0..=2 {
                for n in 0..=2 {
                    let t = correspondent_klmn(k, l, m, n);
                    let printed = SubCondition::parse(&t.reference[1].1).unwrap();
                    let derived = t.sub.as_ref().unwrap();
                    let diverges = frames.iter().any(|fr| {
                        let s = of(fr).unwrap();
                        eval_sub_condition(&printed, &s).unwrap() != eval_sub_condition(derived, &s).unwrap()
                    });
                    if diverges {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn klmn_reference_forms_diverge() {
    assert_eq!(printed_twin_divergent_tuples(), 70);
    assert_eq!(printed_condition_divergent_tuples(), 81);
}

#[test]
fn klmn_bicolour_twin_matches_white_formula() {
    for (k, l, m, n) in [(0, 1, 0, 1), (1, 0, 1, 1), (2, 1, 0, 2), (1, 1, 1, 1)] {
        let t = correspondent_klmn(k, l, m, n);
        for frame in all_frames_up_to(3).step_by(3) {
            let a = frame_validity(&frame, &t.formulas[0].formula, DEFAULT_BUDGET).unwrap().valid;
            let b = frame_validity(&frame, &t.formulas[1].formula, DEFAULT_BUDGET).unwrap().valid;
            assert_eq!(a, b, "klmn {k}{l}{m}{n} on {frame:?}");
        }
    }
}

#[test]
fn seriality_algebra_condition() {
    let t = builtin("seriality").unwrap();
    for frame in all_frames_up_to(3) {
        let serial = (0..frame.len()).all(|x| frame.successors(x) != 0);
        assert_eq!(eval_sub_condition(t.sub.as_ref().unwrap(), &of(&frame).unwrap()).unwrap(), serial);
    }
}

#[test]
fn classification_examples() {
    let c = classify(&f("p -> <>[]p"));
    assert!(c.sahlqvist && !c.s_sahlqvist);
    assert!(classify(&f("[]([]p -> q) | []([]q -> p)")).s_sahlqvist);
    for t in subord::correspondence::builtin_library().iter().filter(|t| t.name.starts_with("klmn")) {
        assert!(classify(&t.formulas[0].formula).s_sahlqvist, "{}", t.name);
    }
}

#[test]
fn congruence_counts_on_a_chain_frame() {
    let frame = KripkeFrame::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let s = of(&frame).unwrap();
    let white = congruence_lattice(&s, CongruenceKind::White);
    let black = congruence_lattice(&s, CongruenceKind::Black);
    let strong = congruence_lattice(&s, CongruenceKind::Strong);
    assert!(white.verify().all() && black.verify().all() && strong.verify().all());
    for k in &strong.kernels {
        assert!(white.contains(*k) && black.contains(*k));
    }
    assert!(strong.contains(0) && strong.contains(0b111));
}

#[test]
fn validity_examples() {
    let alg = BooleanAlgebra::new(2).unwrap();
    let order = SubordinationAlgebra::order(alg);
    assert!(validity(&order, &f("[]p -> p"), DEFAULT_BUDGET).unwrap().valid);
    assert!(validity(&order, &f("p -> []p"), DEFAULT_BUDGET).unwrap().valid);
}
