//! JSON documents for instances and seedings.
//!
//! Instance files look like
//! `{"n": 4, "kind": "popularity", "target": null, "entries": [{"i": 4, "v": 3}]}`
//! where the keys of an entry depend on the kind. Pairs that are not listed
//! are worth 0.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GameValueFunction, Instance, Player, Round, Seeding, Value, ValueKind};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub i: Player,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Player>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Round>,
    #[serde(default)]
    pub v: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub n: usize,
    pub kind: ValueKind,
    #[serde(default)]
    pub target: Option<Value>,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

fn insert_unique<K: Ord + std::fmt::Debug>(
    map: &mut BTreeMap<K, Value>,
    key: K,
    v: Value,
) -> Result<()> {
    if map.insert(key, v).is_some() {
        return Err(Error::InvalidInstance("duplicate entry".into()));
    }
    Ok(())
}

impl TryFrom<InstanceDoc> for Instance {
    type Error = Error;

    fn try_from(doc: InstanceDoc) -> Result<Self> {
        let shape_err = |e: &EntryDoc, want: &str| {
            Error::InvalidInstance(format!(
                "{} entry for player {} must have exactly the keys {want}",
                doc.kind.as_str(),
                e.i
            ))
        };
        let values = match doc.kind {
            ValueKind::General => {
                let mut t = BTreeMap::new();
                for e in &doc.entries {
                    match (e.j, e.r) {
                        (Some(j), Some(r)) => insert_unique(&mut t, (e.i, j, r), e.v)?,
                        _ => return Err(shape_err(e, "i, j, r, v")),
                    }
                }
                GameValueFunction::General(t)
            }
            ValueKind::RoundOblivious => {
                let mut t = BTreeMap::new();
                for e in &doc.entries {
                    match (e.j, e.r) {
                        (Some(j), None) => insert_unique(&mut t, (e.i, j), e.v)?,
                        _ => return Err(shape_err(e, "i, j, v")),
                    }
                }
                GameValueFunction::RoundOblivious(t)
            }
            ValueKind::WinCount => {
                let mut t = BTreeMap::new();
                for e in &doc.entries {
                    match (e.j, e.r) {
                        (None, Some(r)) => insert_unique(&mut t, (e.i, r), e.v)?,
                        _ => return Err(shape_err(e, "i, r, v")),
                    }
                }
                GameValueFunction::WinCount(t)
            }
            ValueKind::Popularity => {
                let mut t = BTreeMap::new();
                for e in &doc.entries {
                    match (e.j, e.r) {
                        (None, None) => insert_unique(&mut t, e.i, e.v)?,
                        _ => return Err(shape_err(e, "i, v")),
                    }
                }
                GameValueFunction::Popularity(t)
            }
        };
        Instance::new(doc.n, values, doc.target)
    }
}

impl From<Instance> for InstanceDoc {
    fn from(inst: Instance) -> Self {
        let entries = match inst.values() {
            GameValueFunction::General(t) => t
                .iter()
                .map(|(&(i, j, r), &v)| EntryDoc {
                    i,
                    j: Some(j),
                    r: Some(r),
                    v,
                })
                .collect(),
            GameValueFunction::RoundOblivious(t) => t
                .iter()
                .map(|(&(i, j), &v)| EntryDoc {
                    i,
                    j: Some(j),
                    r: None,
                    v,
                })
                .collect(),
            GameValueFunction::WinCount(t) => t
                .iter()
                .map(|(&(i, r), &v)| EntryDoc {
                    i,
                    j: None,
                    r: Some(r),
                    v,
                })
                .collect(),
            GameValueFunction::Popularity(t) => t
                .iter()
                .map(|(&i, &v)| EntryDoc {
                    i,
                    j: None,
                    r: None,
                    v,
                })
                .collect(),
        };
        InstanceDoc {
            n: inst.n(),
            kind: inst.kind(),
            target: inst.target(),
            entries,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedingDoc {
    pub order: Vec<Player>,
}

impl TryFrom<SeedingDoc> for Seeding {
    type Error = Error;

    fn try_from(doc: SeedingDoc) -> Result<Self> {
        Seeding::new(doc.order)
    }
}

impl From<Seeding> for SeedingDoc {
    fn from(s: Seeding) -> Self {
        SeedingDoc {
            order: s.into_order(),
        }
    }
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty-printed instance document with a trailing newline.
pub fn instance_to_json(instance: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(instance).expect("instance documents always serialize");
    s.push('\n');
    s
}

/// Parses `{"order": [...]}`. Extra fields are ignored, so a solver result
/// document is accepted as a seeding too.
pub fn seeding_from_json(text: &str) -> Result<Seeding> {
    Ok(serde_json::from_str(text)?)
}

pub fn seeding_to_json(seeding: &Seeding) -> String {
    serde_json::to_string(seeding).expect("seedings always serialize")
}
