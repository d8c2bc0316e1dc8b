//! Exhaustive and seeded random families of frames, subordination
//! algebras and formulas.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::BooleanAlgebra;
use crate::duality::of;
use crate::error::{Error, Result};
use crate::frame::KripkeFrame;
use crate::logic::{classify, Formula};
use crate::subordination::{check_axioms, Axiom, Colour, SubordinationAlgebra};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every relation on `n` points.
pub fn all_frames(n: usize) -> impl Iterator<Item = KripkeFrame> {
    let bits = n * n;
    assert!(bits < 32, "too many frames to enumerate");
    (0u32..1 << bits).map(move |m| KripkeFrame::from_fn(n, |x, y| m >> (x * n + y) & 1 == 1).expect("small frame"))
}

/// Every frame on `1..=max_points` points.
pub fn all_frames_up_to(max_points: usize) -> impl Iterator<Item = KripkeFrame> {
    (1..=max_points).flat_map(all_frames)
}

/// Every subordination relation on the `atoms`-atom algebra, found by
/// filtering all binary relations through (S1)–(S4).
pub fn all_subordination_relations(atoms: usize) -> Result<Vec<SubordinationAlgebra>> {
    let alg = BooleanAlgebra::new(atoms)?;
    let n = alg.size();
    if n * n > 16 {
        return Err(Error::TooManyAtoms { requested: atoms, cap: 2 });
    }
    Ok((0u32..1 << (n * n))
        .map(|m| SubordinationAlgebra::from_fn(alg, |a, b| m >> (a as usize * n + b as usize) & 1 == 1))
        .filter(|s| check_axioms(s, &Axiom::BASIC).all_hold())
        .collect())
}

/// Every subordination algebra on `atoms` atoms, as `of(F)` for every
/// frame on that many points.
pub fn all_subordination_algebras(atoms: usize) -> Result<Vec<SubordinationAlgebra>> {
    if atoms * atoms >= 32 {
        return Err(Error::TooManyAtoms { requested: atoms, cap: 5 });
    }
    all_frames(atoms).map(|f| of(&f)).collect()
}

/// A frame whose pairs are present independently with probability `density`.
pub fn random_frame(rng: &mut impl Rng, points: usize, density: f64) -> Result<KripkeFrame> {
    KripkeFrame::from_fn(points, |_, _| rng.gen_bool(density))
}

pub fn random_subordination_algebra(rng: &mut impl Rng, atoms: usize) -> Result<SubordinationAlgebra> {
    let density = rng.gen_range(0.1..0.7);
    of(&random_frame(rng, atoms, density)?)
}

/// A formula of modal depth at most `depth` whose modalities all belong to
/// `colour`.
pub fn random_formula(rng: &mut impl Rng, vars: &[&str], depth: usize, colour: Colour) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        let f = match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::var(vars.choose(rng).expect("at least one variable")),
        };
        return if rng.gen_bool(0.3) { f.not() } else { f };
    }
    let modal: &[fn(Formula) -> Formula] = match colour {
        Colour::White => &[Formula::diamond, Formula::boxed],
        Colour::Black => &[Formula::black_diamond, Formula::black_boxed],
        Colour::Bi => &[Formula::diamond, Formula::boxed, Formula::black_diamond, Formula::black_boxed],
    };
    match rng.gen_range(0..6) {
        0 => random_formula(rng, vars, depth, colour).not(),
        1 => random_formula(rng, vars, depth - 1, colour).and(random_formula(rng, vars, depth - 1, colour)),
        2 => random_formula(rng, vars, depth - 1, colour).or(random_formula(rng, vars, depth - 1, colour)),
        3 => random_formula(rng, vars, depth - 1, colour).implies(random_formula(rng, vars, depth - 1, colour)),
        _ => modal.choose(rng).expect("non-empty")(random_formula(rng, vars, depth - 1, colour)),
    }
}

/// Normal-form formulas over `vars` with modal depth at most `depth` and
/// at most `max_size` nodes, deduplicated, in order of size.
pub fn nnf_corpus(vars: &[&str], depth: usize, max_size: usize) -> Vec<Formula> {
    let mut literals: Vec<Formula> = vec![Formula::Top, Formula::Bot];
    for v in vars {
        literals.push(Formula::var(v));
        literals.push(Formula::var(v).not());
    }
    // levels[d][s]: modal depth ≤ d, size exactly s.
    let mut levels: Vec<Vec<Vec<Formula>>> = Vec::new();
    for d in 0..=depth {
        let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
        for s in 1..=max_size {
            let mut out = Vec::new();
            out.extend(literals.iter().filter(|l| l.size() == s).cloned());
            if d > 0 && s >= 2 {
                for f in &levels[d - 1][s - 1] {
                    for wrap in [Formula::diamond, Formula::boxed, Formula::black_diamond, Formula::black_boxed] {
                        out.push(wrap(f.clone()));
                    }
                }
            }
            for ls in 1..s.saturating_sub(1) {
                let rs = s - 1 - ls;
                for a in &by_size[ls] {
                    for b in &by_size[rs] {
                        out.push(a.clone().and(b.clone()));
                        out.push(a.clone().or(b.clone()));
                    }
                }
            }
            by_size[s] = out;
        }
        levels.push(by_size);
    }
    let mut all: Vec<Formula> = levels.pop().unwrap_or_default().into_iter().flatten().collect();
    let mut seen = std::collections::HashSet::new();
    all.retain(|f| seen.insert(f.clone()));
    all
}

/// The open or closed members of [`nnf_corpus`].
pub fn open_closed_corpus(vars: &[&str], depth: usize, max_size: usize) -> Vec<Formula> {
    nnf_corpus(vars, depth, max_size)
        .into_iter()
        .filter(|f| {
            let c = classify(f);
            c.open || c.closed
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_counts() {
        assert_eq!(all_frames(2).count(), 16);
        assert_eq!(all_frames_up_to(3).count(), 2 + 16 + 512);
    }

    #[test]
    fn relation_filter_matches_frames() {
        for atoms in 1..=2 {
            let brute = all_subordination_relations(atoms).unwrap();
            let dual = all_subordination_algebras(atoms).unwrap();
            assert_eq!(brute.len(), dual.len());
            for s in &dual {
                assert!(brute.contains(s));
            }
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a: Vec<Formula> = (0..5).map(|_| 0).scan(rng(7), |r, _| Some(random_formula(r, &["p", "q"], 2, Colour::Bi))).collect();
        let b: Vec<Formula> = (0..5).map(|_| 0).scan(rng(7), |r, _| Some(random_formula(r, &["p", "q"], 2, Colour::Bi))).collect();
        assert_eq!(a, b);
        let white = random_formula(&mut rng(3), &["p"], 3, Colour::White);
        assert_ne!(white.colour(), Colour::Black);
    }

    #[test]
    fn corpus_shape() {
        let c = open_closed_corpus(&["p"], 2, 5);
        assert!(!c.contains(&Formula::parse("[]<>p").unwrap()));
        assert!(c.contains(&Formula::parse("[][]p").unwrap()));
        assert!(c.contains(&Formula::parse("<>p | ~p").unwrap()));
        assert!(c.iter().all(|f| f.modal_depth() <= 2 && f.size() <= 5));
    }
}
