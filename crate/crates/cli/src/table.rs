//! Which library operations each subcommand reaches, with a runnable
//! example invocation for each.

use serde::Serialize;

use crate::report::Report;

#[derive(Debug, Serialize)]
pub struct CommandInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub operations: &'static [&'static str],
    pub example: &'static [&'static str],
}

const ORDER_1: &str = r#"{"kind":"subordination","atoms":1,"pairs":[[0,0],[0,1],[1,1]]}"#;
const CHAIN_FRAME: &str = r#"{"kind":"frame","points":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;
const OPERATOR_2: &str = r#"{"kind":"subordination","atoms":2,"operator":[0,2,1,3],"colour":"white"}"#;

pub const COMMANDS: &[CommandInfo] = &[
    CommandInfo {
        name: "check",
        summary: "axioms, multi-operator laws, congruences, subalgebras, morphisms, filters and ω⁺ congruences",
        operations: &[
            "powerset_algebra",
            "filter_ideal_check",
            "generated_boolean_subalgebra",
            "check_boolean_morphism",
            "check_axioms",
            "from_operator",
            "to_multi_operator",
            "check_morphism",
            "is_congruence",
            "is_subalgebra",
            "congruence_check",
            "set_ops",
        ],
        example: &["check", OPERATOR_2, "--axioms", "S1..S8", "--multi-operator"],
    },
    CommandInfo {
        name: "dualize",
        summary: "Ult/Of and At/Pset duals, morphism duals, canonical extension, σ/π extensions",
        operations: &[
            "ult",
            "of",
            "dual_morphism",
            "discrete_duals",
            "canonical_extension",
            "factor_through_delta",
            "sigma_pi_extension",
        ],
        example: &["dualize", CHAIN_FRAME, "--canonical", "--sigma-pi", "5"],
    },
    CommandInfo {
        name: "quotient",
        summary: "quotient by a congruence, congruence lattices and the isomorphism theorems",
        operations: &["is_congruence", "quotient", "congruence_lattice", "isomorphism_theorems", "check_morphism"],
        example: &["quotient", CHAIN_FRAME, "--kernel", "0", "--kind", "strong", "--lattice", "--theorems"],
    },
    CommandInfo {
        name: "product",
        summary: "products, the categorical product test and the canonical product map",
        operations: &["product", "canonical_product_map", "check_morphism"],
        example: &["product", ORDER_1, ORDER_1],
    },
    CommandInfo {
        name: "modalize",
        summary: "modal, black or tense subalgebra of the canonical extension generated by B",
        operations: &["modalize", "canonical_extension", "tense_check"],
        example: &["modalize", CHAIN_FRAME, "--colour", "bi"],
    },
    CommandInfo {
        name: "validate",
        summary: "validity, scheme validity, evaluation, classification and tense axioms",
        operations: &["parse", "print", "eval", "eval_formula", "validity", "scheme_validity", "classify", "tense_check"],
        example: &["validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p", "--classify"],
    },
    CommandInfo {
        name: "correspond",
        summary: "correspondence triples, equivalence checks, condition evaluation and translations",
        operations: &[
            "builtin_library",
            "correspondent_klmn",
            "check_equivalence",
            "eval_frame_condition",
            "eval_sub_condition",
            "translate_leq",
            "translate_geq",
            "translate_g_closed",
        ],
        example: &["correspond", "--builtin", "seriality", "--family", "frames:2"],
    },
    CommandInfo {
        name: "omega",
        summary: "symbolic sets on ω⁺: Boolean and topological operations, images, σ/π, filters",
        operations: &[
            "set_ops",
            "rel_images",
            "subordination_holds",
            "nonprincipal_witness",
            "sigma_pi_symbolic",
        ],
        example: &["omega", "accumulation-loop", "--set", r#"{"kind":"finite","exceptions":[0],"omega":false}"#],
    },
    CommandInfo {
        name: "examples",
        summary: "replay the worked examples and their documented verdicts",
        operations: &["congruence_check", "eval_formula", "check_equivalence", "classify"],
        example: &["examples", "unicolour-gap"],
    },
    CommandInfo {
        name: "commands",
        summary: "this table",
        operations: &[],
        example: &["commands"],
    },
];

pub fn report() -> Report {
    let mut r = Report::new("commands");
    for c in COMMANDS {
        r.line(format!("{:<11}{}", c.name, c.summary));
    }
    r.set("commands", COMMANDS);
    r
}
