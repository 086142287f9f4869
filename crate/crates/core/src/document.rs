//! TOML documents for structures, class specifications and prefixes.
//!
//! A structure document:
//!
//! ```toml
//! size = 3
//!
//! [[relations]]
//! name = "E"
//! arity = 2
//! symmetric = true
//!
//! [tuples]
//! E = [[0, 1], [1, 2]]
//! ```
//!
//! A class document names its `kind` (`linear-order`, `unrestricted` or `forb`), lists
//! `relations` (omitted for linear orders), and carries `[[constraints]]` or `[[forbidden]]`
//! blocks, each with `size` and `tuples`. Constraint order is the λ order. A prefix document
//! holds a `[class]` table, `size`, `[tuples]` and one `[[schedule]]` entry per vertex.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::class::{ClassKind, ClassSpec};
use crate::error::{CoreError, Result};
use crate::limit::{EnumeratedPrefix, QueueItem, ScheduleEntry};
use crate::structure::{FinStructure, Relation, Signature};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub name: String,
    pub arity: u8,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetric: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TuplesDoc {
    pub size: usize,
    #[serde(default)]
    pub tuples: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub size: usize,
    pub relations: Vec<RelationDoc>,
    #[serde(default)]
    pub tuples: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<TuplesDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbidden: Vec<TuplesDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDoc {
    pub vertex: usize,
    pub realized: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Vec<u8>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PrefixDoc {
    pub size: usize,
    pub class: ClassDoc,
    #[serde(default)]
    pub tuples: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default)]
    pub schedule: Vec<ScheduleDoc>,
}

fn signature_from_docs(docs: &[RelationDoc]) -> Result<Arc<Signature>> {
    Signature::new(
        docs.iter()
            .map(|r| Relation { name: r.name.clone(), arity: r.arity, symmetric: r.symmetric })
            .collect(),
    )
}

fn signature_to_docs(sig: &Signature) -> Vec<RelationDoc> {
    sig.relations()
        .iter()
        .map(|r| RelationDoc { name: r.name.clone(), arity: r.arity, symmetric: r.symmetric })
        .collect()
}

fn structure_from_tuples(
    sig: Arc<Signature>,
    size: usize,
    tuples: &BTreeMap<String, Vec<Vec<usize>>>,
) -> Result<FinStructure> {
    let list: Vec<(&str, Vec<Vec<usize>>)> =
        tuples.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    FinStructure::from_tuples(sig, size, &list)
}

/// Tuple lists by relation name; symmetric relations list each pair once with `i ≤ j`.
fn tuples_of(s: &FinStructure) -> BTreeMap<String, Vec<Vec<usize>>> {
    let mut out = BTreeMap::new();
    for (r, rel) in s.signature().relations().iter().enumerate() {
        let mut ts = s.tuples(r);
        if rel.arity == 2 && rel.symmetric {
            ts.retain(|t| t[0] <= t[1]);
        }
        out.insert(rel.name.clone(), ts);
    }
    out
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| CoreError::Document(e.to_string()))
}

fn render<T: Serialize>(doc: &T) -> Result<String> {
    toml::to_string(doc).map_err(|e| CoreError::Document(e.to_string()))
}

pub fn structure_to_doc(s: &FinStructure) -> StructureDoc {
    StructureDoc { size: s.size(), relations: signature_to_docs(s.signature()), tuples: tuples_of(s) }
}

pub fn structure_from_doc(doc: &StructureDoc) -> Result<FinStructure> {
    structure_from_tuples(signature_from_docs(&doc.relations)?, doc.size, &doc.tuples)
}

pub fn structure_to_toml(s: &FinStructure) -> Result<String> {
    render(&structure_to_doc(s))
}

pub fn structure_from_toml(text: &str) -> Result<FinStructure> {
    structure_from_doc(&parse(text)?)
}

pub fn class_to_doc(spec: &ClassSpec) -> ClassDoc {
    let block = |s: &FinStructure| TuplesDoc { size: s.size(), tuples: tuples_of(s) };
    let (kind, relations, constraints, forbidden) = match spec.kind() {
        ClassKind::LinearOrder => ("linear-order", Vec::new(), Vec::new(), Vec::new()),
        ClassKind::Unrestricted { constraints } => (
            "unrestricted",
            signature_to_docs(spec.signature()),
            constraints.iter().map(block).collect(),
            Vec::new(),
        ),
        ClassKind::Forb { forbidden } => (
            "forb",
            signature_to_docs(spec.signature()),
            Vec::new(),
            forbidden.iter().map(block).collect(),
        ),
    };
    ClassDoc {
        name: Some(spec.name().to_string()),
        kind: kind.to_string(),
        relations,
        constraints,
        forbidden,
    }
}

pub fn class_from_doc(doc: &ClassDoc) -> Result<ClassSpec> {
    let name = doc.name.clone().unwrap_or_else(|| doc.kind.clone());
    match doc.kind.as_str() {
        "linear-order" => {
            if !doc.constraints.is_empty() || !doc.forbidden.is_empty() {
                return Err(CoreError::Document("linear-order takes no constraint blocks".into()));
            }
            let sig = if doc.relations.is_empty() {
                Signature::order()
            } else {
                signature_from_docs(&doc.relations)?
            };
            ClassSpec::new(&name, sig, ClassKind::LinearOrder)
        }
        "unrestricted" => {
            if !doc.forbidden.is_empty() {
                return Err(CoreError::Document("unrestricted classes take no forbidden blocks".into()));
            }
            let sig = signature_from_docs(&doc.relations)?;
            let constraints = doc
                .constraints
                .iter()
                .map(|b| structure_from_tuples(sig.clone(), b.size, &b.tuples))
                .collect::<Result<Vec<_>>>()?;
            ClassSpec::new(&name, sig, ClassKind::Unrestricted { constraints })
        }
        "forb" => {
            if !doc.constraints.is_empty() {
                return Err(CoreError::Document("forb classes take no constraint blocks".into()));
            }
            let sig = signature_from_docs(&doc.relations)?;
            let forbidden = doc
                .forbidden
                .iter()
                .map(|b| structure_from_tuples(sig.clone(), b.size, &b.tuples))
                .collect::<Result<Vec<_>>>()?;
            ClassSpec::new(&name, sig, ClassKind::Forb { forbidden })
        }
        other => Err(CoreError::Document(format!(
            "unknown class kind `{other}` (expected linear-order, unrestricted or forb)"
        ))),
    }
}

pub fn class_to_toml(spec: &ClassSpec) -> Result<String> {
    render(&class_to_doc(spec))
}

pub fn class_from_toml(text: &str) -> Result<ClassSpec> {
    class_from_doc(&parse(text)?)
}

pub fn prefix_to_toml(p: &EnumeratedPrefix) -> Result<String> {
    let doc = PrefixDoc {
        size: p.size(),
        class: class_to_doc(p.spec()),
        tuples: tuples_of(p.structure()),
        schedule: p
            .schedule()
            .iter()
            .map(|e| ScheduleDoc {
                vertex: e.vertex,
                realized: e.realized.clone(),
                stage: e.source.as_ref().map(|q| q.stage),
                rank: e.source.as_ref().map(|q| q.rank),
                source: e.source.as_ref().map(|q| q.literals.clone()),
            })
            .collect(),
    };
    render(&doc)
}

pub fn prefix_from_toml(text: &str) -> Result<EnumeratedPrefix> {
    let doc: PrefixDoc = parse(text)?;
    let spec = class_from_doc(&doc.class)?;
    let structure = structure_from_tuples(spec.signature().clone(), doc.size, &doc.tuples)?;
    if doc.schedule.is_empty() {
        return EnumeratedPrefix::from_structure(&spec, structure);
    }
    let schedule = doc
        .schedule
        .iter()
        .map(|e| {
            let source = match (e.stage, e.rank, &e.source) {
                (Some(stage), Some(rank), Some(lits)) => {
                    Some(QueueItem { stage, rank, literals: lits.clone() })
                }
                (None, None, None) => None,
                _ => {
                    return Err(CoreError::Document(format!(
                        "schedule entry {} must give all or none of stage, rank, source",
                        e.vertex
                    )))
                }
            };
            Ok(ScheduleEntry { vertex: e.vertex, realized: e.realized.clone(), source })
        })
        .collect::<Result<Vec<_>>>()?;
    EnumeratedPrefix::from_parts(spec, structure, schedule)
}
