//! JSON forms of the finite and symbolic structures.
//!
//! A subordination algebra is given either by its pairs or by an operator
//! table with a colour; a frame by named points and edges. [`Structure`]
//! wraps every kind under a `"kind"` tag.

use serde::{Deserialize, Serialize};

use crate::algebra::{BooleanAlgebra, Elem};
use crate::error::{Error, Result};
use crate::frame::KripkeFrame;
use crate::omega::{EquivSpec, OmegaPlusSet, RelationSpec};
use crate::subordination::{Colour, Partition, SubordinationAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubordinationJson {
    pub atoms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(Elem, Elem)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<Colour>,
}

impl SubordinationJson {
    pub fn from_algebra(s: &SubordinationAlgebra) -> Self {
        let pairs = s.relation().pairs().map(|(a, b)| (a as Elem, b as Elem)).collect();
        SubordinationJson { atoms: s.algebra().atom_count(), pairs: Some(pairs), operator: None, colour: None }
    }

    pub fn build(&self) -> Result<SubordinationAlgebra> {
        let alg = BooleanAlgebra::new(self.atoms)?;
        match (&self.pairs, &self.operator) {
            (Some(pairs), None) => SubordinationAlgebra::from_pairs(alg, pairs.iter().copied()),
            (None, Some(op)) => SubordinationAlgebra::from_operator(alg, op, self.colour.unwrap_or(Colour::White)),
            _ => Err(Error::IllFormed("give exactly one of `pairs` and `operator`".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    pub points: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl FrameJson {
    pub fn from_frame(f: &KripkeFrame) -> Self {
        FrameJson {
            points: f.labels().to_vec(),
            edges: f.edges().map(|(x, y)| (f.label(x).to_string(), f.label(y).to_string())).collect(),
        }
    }

    pub fn build(&self) -> Result<KripkeFrame> {
        let points: Vec<&str> = self.points.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        KripkeFrame::from_named(&points, &edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub atoms: usize,
    pub classes: Vec<Vec<Elem>>,
}

impl PartitionJson {
    pub fn from_partition(p: &Partition) -> Self {
        PartitionJson { atoms: p.algebra().atom_count(), classes: p.classes().to_vec() }
    }

    pub fn build(&self) -> Result<Partition> {
        Partition::new(BooleanAlgebra::new(self.atoms)?, self.classes.clone())
    }
}

/// Any input structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureJson {
    Algebra { atoms: usize },
    Subordination(SubordinationJson),
    Frame(FrameJson),
    Partition(PartitionJson),
    Omega { relation: RelationSpec },
    OmegaEquivalence { equivalence: EquivSpec },
    OmegaSet { set: OmegaPlusSet },
}

/// A built structure.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Algebra(BooleanAlgebra),
    Subordination(SubordinationAlgebra),
    Frame(KripkeFrame),
    Partition(Partition),
    Omega(RelationSpec),
    OmegaEquivalence(EquivSpec),
    OmegaSet(OmegaPlusSet),
}

impl StructureJson {
    pub fn build(&self) -> Result<Structure> {
        Ok(match self {
            StructureJson::Algebra { atoms } => Structure::Algebra(BooleanAlgebra::new(*atoms)?),
            StructureJson::Subordination(s) => Structure::Subordination(s.build()?),
            StructureJson::Frame(f) => Structure::Frame(f.build()?),
            StructureJson::Partition(p) => Structure::Partition(p.build()?),
            StructureJson::Omega { relation } => Structure::Omega(relation.clone()),
            StructureJson::OmegaEquivalence { equivalence } => {
                equivalence.validate()?;
                Structure::OmegaEquivalence(equivalence.clone())
            }
            StructureJson::OmegaSet { set } => Structure::OmegaSet(set.clone()),
        })
    }
}

impl Structure {
    pub fn to_json(&self) -> StructureJson {
        match self {
            Structure::Algebra(a) => StructureJson::Algebra { atoms: a.atom_count() },
            Structure::Subordination(s) => StructureJson::Subordination(SubordinationJson::from_algebra(s)),
            Structure::Frame(f) => StructureJson::Frame(FrameJson::from_frame(f)),
            Structure::Partition(p) => StructureJson::Partition(PartitionJson::from_partition(p)),
            Structure::Omega(r) => StructureJson::Omega { relation: r.clone() },
            Structure::OmegaEquivalence(e) => StructureJson::OmegaEquivalence { equivalence: e.clone() },
            Structure::OmegaSet(s) => StructureJson::OmegaSet { set: s.clone() },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "algebra",
            Structure::Subordination(_) => "subordination",
            Structure::Frame(_) => "frame",
            Structure::Partition(_) => "partition",
            Structure::Omega(_) => "omega",
            Structure::OmegaEquivalence(_) => "omega_equivalence",
            Structure::OmegaSet(_) => "omega_set",
        }
    }
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let json: StructureJson = serde_json::from_str(text).map_err(|e| Error::IllFormed(format!("JSON: {e}")))?;
    json.build()
}

pub fn to_pretty_json(s: &Structure) -> String {
    serde_json::to_string_pretty(&s.to_json()).expect("structures serialize")
}
