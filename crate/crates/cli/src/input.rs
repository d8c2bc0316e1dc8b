//! Reading structures, element lists, sets and valuations from arguments.
//!
//! A structure argument is a file path, `-` for stdin, inline JSON starting
//! with `{`, or the name of a built-in `ω⁺` space.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use subord::algebra::Elem;
use subord::correspondence::omega_spaces;
use subord::duality::of;
use subord::logic::Valuation;
use subord::omega::{OmegaPlusSet, RelationSpec};
use subord::subordination::{Partition, SubordinationAlgebra};
use subord::wire::{parse_structure, PartitionJson, Structure};
use subord::{BooleanAlgebra, KripkeFrame};

use crate::{CliError, CliResult, RunConfig};

const ALIASES: [(&str, &str); 3] = [
    ("omega-accumulation", "accumulation-loop"),
    ("omega-star", "star-loop"),
    ("omega-converse", "converse-accumulation-loop"),
];

pub fn named_space(name: &str) -> Option<RelationSpec> {
    let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, n)| n);
    omega_spaces().into_iter().find(|(n, _)| n == name).map(|(_, r)| r)
}

pub fn space_names() -> Vec<String> {
    omega_spaces().into_iter().map(|(n, _)| n).chain(ALIASES.iter().map(|(a, _)| a.to_string())).collect()
}

/// Raw text behind an argument: inline JSON, stdin or a file.
pub fn text(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io { path: "-".into(), source });
    }
    std::fs::read_to_string(arg).map_err(|source| CliError::Io { path: arg.into(), source })
}

pub fn structure(arg: &str, cfg: &RunConfig) -> CliResult<Structure> {
    if let Some(rel) = named_space(arg) {
        return Ok(Structure::Omega(rel));
    }
    let s = parse_structure(&text(arg)?)?;
    admit(&s, cfg)?;
    Ok(s)
}

fn admit(s: &Structure, cfg: &RunConfig) -> CliResult<()> {
    let atoms = match s {
        Structure::Algebra(a) => a.atom_count(),
        Structure::Subordination(sa) => sa.algebra().atom_count(),
        Structure::Partition(p) => p.algebra().atom_count(),
        Structure::Frame(f) => {
            if f.len() > cfg.max_points {
                return Err(CliError::Input(format!("frame has {} points, --max-points is {}", f.len(), cfg.max_points)));
            }
            0
        }
        _ => 0,
    };
    if atoms > cfg.max_atoms {
        return Err(CliError::Input(format!("algebra has {atoms} atoms, --max-atoms is {}", cfg.max_atoms)));
    }
    Ok(())
}

/// A finite subordination algebra, reading a frame as its dual `Of(F)`.
pub fn finite(s: &Structure, cfg: &RunConfig) -> CliResult<(SubordinationAlgebra, Option<KripkeFrame>)> {
    match s {
        Structure::Subordination(sa) => Ok((sa.clone(), None)),
        Structure::Frame(f) => {
            if f.len() > cfg.max_atoms {
                return Err(CliError::Input(format!("Of(F) has {} atoms, --max-atoms is {}", f.len(), cfg.max_atoms)));
            }
            Ok((of(f)?, Some(f.clone())))
        }
        other => Err(CliError::Input(format!("expected a subordination algebra or frame, got {}", other.kind()))),
    }
}

pub fn finite_arg(arg: &str, cfg: &RunConfig) -> CliResult<SubordinationAlgebra> {
    Ok(finite(&structure(arg, cfg)?, cfg)?.0)
}

fn number(s: &str) -> CliResult<u64> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0b") {
        Some(bits) => u64::from_str_radix(bits, 2),
        None => s.parse(),
    };
    parsed.map_err(|_| CliError::Input(format!("`{s}` is not a number")))
}

/// Comma-separated elements, decimal or `0b` binary.
/// Splits `1,2,3` or `[1, 2, 3]` into its entries.
fn entries(list: &str) -> impl Iterator<Item = &str> {
    let list = list.trim();
    let list = list.strip_prefix('[').and_then(|l| l.strip_suffix(']')).unwrap_or(list);
    list.split(',').filter(|p| !p.trim().is_empty())
}

pub fn elements(list: &str, alg: BooleanAlgebra) -> CliResult<Vec<Elem>> {
    entries(list)
        .map(|p| {
            let e = Elem::try_from(number(p)?).map_err(|_| CliError::Input(format!("`{p}` is too large")))?;
            Ok(alg.check(e)?)
        })
        .collect()
}

pub fn indices(list: &str) -> CliResult<Vec<usize>> {
    entries(list).map(|p| Ok(number(p)? as usize)).collect()
}

pub fn partition(arg: &str, alg: BooleanAlgebra) -> CliResult<Partition> {
    let text = text(arg)?;
    let p = match parse_structure(&text) {
        Ok(Structure::Partition(p)) => p,
        _ => json::<PartitionJson>(&text)?.build()?,
    };
    if p.algebra() != alg {
        return Err(CliError::Input(format!(
            "partition is over {} atoms, the algebra has {}",
            p.algebra().atom_count(),
            alg.atom_count()
        )));
    }
    Ok(p)
}

pub fn json<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("JSON: {e}")))
}

pub fn omega_set(arg: &str) -> CliResult<OmegaPlusSet> {
    let text = text(arg)?;
    match parse_structure(&text) {
        Ok(Structure::OmegaSet(s)) => Ok(s),
        _ => json(&text),
    }
}

pub fn relation(arg: &str) -> CliResult<RelationSpec> {
    if let Some(r) = named_space(arg) {
        return Ok(r);
    }
    let text = text(arg)?;
    match parse_structure(&text) {
        Ok(Structure::Omega(r)) => Ok(r),
        _ => json(&text).map_err(|_| {
            CliError::Input(format!("`{arg}` is neither an ω⁺ relation nor one of {}", space_names().join(", ")))
        }),
    }
}

/// A JSON object from variable names to values.
pub fn valuation<V: DeserializeOwned>(arg: &str) -> CliResult<Valuation<V>> {
    let v: BTreeMap<String, V> = json(&text(arg)?)?;
    Ok(v)
}
