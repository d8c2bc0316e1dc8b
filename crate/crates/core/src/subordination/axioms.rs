use serde::{Deserialize, Serialize};

use super::SubordinationAlgebra;
use crate::algebra::Elem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    #[serde(rename = "S'2")]
    S2Complete,
    #[serde(rename = "S'3")]
    S3Complete,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::S1,
        Axiom::S2,
        Axiom::S3,
        Axiom::S4,
        Axiom::S5,
        Axiom::S6,
        Axiom::S7,
        Axiom::S8,
        Axiom::S2Complete,
        Axiom::S3Complete,
    ];

    pub const BASIC: [Axiom; 4] = [Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::S1 => "S1",
            Axiom::S2 => "S2",
            Axiom::S3 => "S3",
            Axiom::S4 => "S4",
            Axiom::S5 => "S5",
            Axiom::S6 => "S6",
            Axiom::S7 => "S7",
            Axiom::S8 => "S8",
            Axiom::S2Complete => "S'2",
            Axiom::S3Complete => "S'3",
        }
    }

    pub fn parse(s: &str) -> Result<Axiom> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::IllFormed(format!("unknown axiom `{s}`")))
    }

    /// Expand a list such as `S1..S4,S7`.
    pub fn parse_list(s: &str) -> Result<Vec<Axiom>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some((lo, hi)) = part.split_once("..") {
                let (lo, hi) = (Axiom::parse(lo)?, Axiom::parse(hi)?);
                out.extend(Axiom::ALL.into_iter().filter(|a| *a >= lo && *a <= hi));
            } else {
                out.push(Axiom::parse(part)?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    /// Lexicographically least violating tuple, in the variable order of the
    /// axiom's statement.
    pub witness: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub verdicts: Vec<AxiomVerdict>,
    /// (S1)–(S4) hold, so (S'2)/(S'3) hold automatically on a finite algebra.
    pub basic_axioms_hold: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn holds(&self, axiom: Axiom) -> Option<bool> {
        self.verdict(axiom).map(|v| v.holds)
    }

    pub fn first_failure(&self) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| !v.holds)
    }
}

pub fn check_axioms(s: &SubordinationAlgebra, which: &[Axiom]) -> AxiomReport {
    let mut which = which.to_vec();
    which.sort();
    which.dedup();
    let verdicts = which
        .into_iter()
        .map(|axiom| {
            let witness = find_violation(s, axiom);
            AxiomVerdict { axiom, holds: witness.is_none(), witness }
        })
        .collect();
    let basic_axioms_hold = Axiom::BASIC.into_iter().all(|a| find_violation(s, a).is_none());
    AxiomReport { verdicts, basic_axioms_hold }
}

pub(crate) fn satisfies_basic(s: &SubordinationAlgebra) -> bool {
    Axiom::BASIC.into_iter().all(|a| find_violation(s, a).is_none())
}

fn find_violation(s: &SubordinationAlgebra, axiom: Axiom) -> Option<Vec<Elem>> {
    let alg = s.algebra();
    let els = || alg.elements();
    let p = |a, b| s.prec(a, b);
    match axiom {
        Axiom::S1 => {
            if !p(0, 0) {
                Some(vec![0, 0])
            } else if !p(alg.top(), alg.top()) {
                Some(vec![alg.top(), alg.top()])
            } else {
                None
            }
        }
        Axiom::S2 => els().find_map(|a| {
            els().filter(|&b| p(a, b)).find_map(|b| {
                els().find(|&c| p(a, c) && !p(a, b & c)).map(|c| vec![a, b, c])
            })
        }),
        Axiom::S3 => els().find_map(|b| {
            els().find_map(|c| els().find(|&a| p(b, a) && p(c, a) && !p(b | c, a)).map(|a| vec![b, c, a]))
        }),
        Axiom::S4 => els().find_map(|a| {
            els().filter(|&b| alg.leq(a, b)).find_map(|b| {
                els().filter(|&c| p(b, c)).find_map(|c| {
                    els().find(|&d| alg.leq(c, d) && !p(a, d)).map(|d| vec![a, b, c, d])
                })
            })
        }),
        Axiom::S5 => els().find(|&a| a != 0 && !els().any(|b| b != 0 && p(b, a))).map(|a| vec![a]),
        Axiom::S6 => els().find_map(|a| els().find(|&b| p(a, b) && !alg.leq(a, b)).map(|b| vec![a, b])),
        Axiom::S7 => els().find_map(|a| {
            els().find(|&b| p(a, b) && !p(alg.complement(b), alg.complement(a))).map(|b| vec![a, b])
        }),
        Axiom::S8 => els().find_map(|a| {
            els().find(|&b| p(a, b) && !els().any(|c| p(a, c) && p(c, b))).map(|b| vec![a, b])
        }),
        Axiom::S2Complete => els().find_map(|a| {
            closure(alg.elements().filter(|&b| p(a, b)).collect(), alg.top(), |x, y| x & y)
                .into_iter()
                .find(|&m| !p(a, m))
                .map(|m| vec![a, m])
        }),
        Axiom::S3Complete => els().find_map(|a| {
            closure(alg.elements().filter(|&b| p(b, a)).collect(), 0, |x, y| x | y)
                .into_iter()
                .find(|&j| !p(j, a))
                .map(|j| vec![a, j])
        }),
    }
}

/// Every value of `op` over a subfamily of `gens`, the empty family giving
/// `unit`. Returned sorted.
fn closure(gens: Vec<Elem>, unit: Elem, op: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
    let mut set = std::collections::BTreeSet::from([unit]);
    for g in gens {
        let current: Vec<Elem> = set.iter().copied().collect();
        for x in current {
            set.insert(op(x, g));
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BooleanAlgebra;
    use crate::subordination::Colour;

    #[test]
    fn order_satisfies_every_axiom() {
        for n in 1..=3 {
            let s = SubordinationAlgebra::order(BooleanAlgebra::new(n).unwrap());
            let report = check_axioms(&s, &Axiom::ALL);
            assert!(report.all_hold(), "{report:?}");
            assert!(report.basic_axioms_hold);
        }
    }

    #[test]
    fn top_pair_only_fails_s1() {
        let b = BooleanAlgebra::new(2).unwrap();
        let s = SubordinationAlgebra::from_pairs(b, [(3, 3)]).unwrap();
        let report = check_axioms(&s, &Axiom::BASIC);
        assert_eq!(report.verdict(Axiom::S1).unwrap().witness, Some(vec![0, 0]));
        assert!(!report.basic_axioms_hold);
    }

    #[test]
    fn empty_relation_witnesses() {
        let b = BooleanAlgebra::new(1).unwrap();
        let s = SubordinationAlgebra::from_pairs(b, []).unwrap();
        let report = check_axioms(&s, &Axiom::ALL);
        assert_eq!(report.first_failure().unwrap().axiom, Axiom::S1);
        // The empty family has meet 1, and 0 ⊀ 1.
        assert_eq!(report.verdict(Axiom::S2Complete).unwrap().witness, Some(vec![0, 1]));
        assert_eq!(report.verdict(Axiom::S5).unwrap().witness, Some(vec![1]));
    }

    #[test]
    fn s4_witness_is_least() {
        let b = BooleanAlgebra::new(1).unwrap();
        // 0 ≺ 0 but not 0 ≺ 1.
        let s = SubordinationAlgebra::from_pairs(b, [(0, 0), (1, 1)]).unwrap();
        let v = check_axioms(&s, &[Axiom::S4]);
        assert_eq!(v.verdicts[0].witness, Some(vec![0, 0, 0, 1]));
    }

    #[test]
    fn complete_axioms_follow_from_basic_ones() {
        let b = BooleanAlgebra::new(2).unwrap();
        for code in 0u32..16 {
            let op: Vec<Elem> = b
                .elements()
                .map(|e| (if e & 1 == 1 { code & 3 } else { 0 }) | (if e & 2 == 2 { code >> 2 & 3 } else { 0 }))
                .collect();
            for colour in [Colour::White, Colour::Black] {
                let s = SubordinationAlgebra::from_operator(b, &op, colour).unwrap();
                let report = check_axioms(&s, &Axiom::ALL);
                assert!(report.basic_axioms_hold);
                assert_eq!(report.holds(Axiom::S2Complete), Some(true));
                assert_eq!(report.holds(Axiom::S3Complete), Some(true));
            }
        }
    }

    #[test]
    fn axiom_list_parsing() {
        assert_eq!(Axiom::parse_list("S1..S4").unwrap(), Axiom::BASIC.to_vec());
        assert_eq!(Axiom::parse_list("s7, S'2").unwrap(), vec![Axiom::S7, Axiom::S2Complete]);
        assert!(Axiom::parse_list("S9").is_err());
    }
}
