//! The model file format: one canonical pretty-printed JSON document per
//! structure, and a morphism document that points at two model files.
//!
//! ```json
//! {
//!   "entityTypes": ["Emp"],
//!   "sorts": ["Str"],
//!   "keys": ["e1"],
//!   "values": ["Alice"],
//!   "entIncidence": [["Emp", "e1"]],
//!   "attrIncidence": [["Str", "Alice"]],
//!   "signatures": { "Emp": [{ "index": "name", "sort": "Str" }] },
//!   "tuples": { "e1": [{ "index": "name", "value": "Alice" }] }
//! }
//! ```
//!
//! Names starting with `E:` or `A:`, and the self index, are reserved for
//! generated structures and are rejected on input.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use fole_core::list::IndexedList;
use fole_core::name::{Name, NameMap, NameSet};
use fole_core::{Classification, Schema, Structure, StructureMorphism, Universe};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: reserved name `{name}`")]
    Reserved { path: String, name: String },
    #[error("{path}: `{owner}` lists `{entry}` twice")]
    Duplicate { path: String, owner: String, entry: String },
    #[error("{path}: {source}")]
    Core {
        path: String,
        #[source]
        source: fole_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SignatureEntry {
    pub index: String,
    pub sort: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TupleEntry {
    pub index: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct ModelDocument {
    pub entity_types: Vec<String>,
    pub sorts: Vec<String>,
    pub keys: Vec<String>,
    pub values: Vec<String>,
    pub ent_incidence: Vec<(String, String)>,
    pub attr_incidence: Vec<(String, String)>,
    pub signatures: BTreeMap<String, Vec<SignatureEntry>>,
    pub tuples: BTreeMap<String, Vec<TupleEntry>>,
}

fn strings(set: &NameSet) -> Vec<String> {
    set.iter().map(|n| n.to_string()).collect()
}

fn pairs(c: &Classification) -> Vec<(String, String)> {
    c.incidence_iter().map(|(t, i)| (t.to_string(), i.to_string())).collect()
}

impl ModelDocument {
    /// The canonical document of a structure: every array sorted.
    pub fn from_structure(m: &Structure) -> Self {
        ModelDocument {
            entity_types: strings(m.entity_types()),
            sorts: strings(m.sorts()),
            keys: strings(m.keys()),
            values: strings(m.values()),
            ent_incidence: pairs(m.ent()),
            attr_incidence: pairs(m.attr()),
            signatures: m
                .schema()
                .signatures()
                .iter()
                .map(|(r, sig)| {
                    let entries = sig
                        .iter()
                        .map(|(i, s)| SignatureEntry {
                            index: i.to_string(),
                            sort: s.to_string(),
                        })
                        .collect();
                    (r.to_string(), entries)
                })
                .collect(),
            tuples: m
                .universe()
                .tuples()
                .iter()
                .map(|(k, tup)| {
                    let entries = tup
                        .iter()
                        .map(|(i, v)| TupleEntry {
                            index: i.to_string(),
                            value: v.to_string(),
                        })
                        .collect();
                    (k.to_string(), entries)
                })
                .collect(),
        }
    }

    fn names(&self) -> impl Iterator<Item = &String> {
        let lists = [&self.entity_types, &self.sorts, &self.keys, &self.values];
        let incidence = self.ent_incidence.iter().chain(&self.attr_incidence).flat_map(|(a, b)| [a, b]);
        let signatures = self
            .signatures
            .iter()
            .flat_map(|(r, es)| std::iter::once(r).chain(es.iter().flat_map(|e| [&e.index, &e.sort])));
        let tuples = self
            .tuples
            .iter()
            .flat_map(|(k, es)| std::iter::once(k).chain(es.iter().flat_map(|e| [&e.index, &e.value])));
        lists.into_iter().flatten().chain(incidence).chain(signatures).chain(tuples)
    }

    /// Builds the structure. Only reference errors are reported here; the
    /// structure itself is not checked.
    pub fn to_structure(&self, path: &str) -> Result<Structure, ModelError> {
        if let Some(name) = self.names().find(|n| Name::from(n.as_str()).is_reserved()) {
            return Err(ModelError::Reserved {
                path: path.into(),
                name: name.clone(),
            });
        }
        let core = |source| ModelError::Core {
            path: path.into(),
            source,
        };
        let set = |v: &[String]| v.iter().map(|s| Name::from(s.as_str())).collect::<NameSet>();
        let (entity_types, sorts, keys, values) = (
            set(&self.entity_types),
            set(&self.sorts),
            set(&self.keys),
            set(&self.values),
        );
        let ent = Classification::new(entity_types.clone(), keys.clone(), self.ent_incidence.iter().cloned()).map_err(core)?;
        let attr = Classification::new(sorts.clone(), values.clone(), self.attr_incidence.iter().cloned()).map_err(core)?;
        let lists = |owner: &String, entries: Vec<(&String, &String)>| {
            let mut list = IndexedList::new();
            for (i, v) in entries {
                if list.insert(i.as_str(), v.as_str()).is_some() {
                    return Err(ModelError::Duplicate {
                        path: path.into(),
                        owner: owner.clone(),
                        entry: i.clone(),
                    });
                }
            }
            Ok((Name::from(owner.as_str()), list))
        };
        let signatures = self
            .signatures
            .iter()
            .map(|(r, es)| lists(r, es.iter().map(|e| (&e.index, &e.sort)).collect()))
            .collect::<Result<_, _>>()?;
        let tuples = self
            .tuples
            .iter()
            .map(|(k, es)| lists(k, es.iter().map(|e| (&e.index, &e.value)).collect()))
            .collect::<Result<_, _>>()?;
        Ok(Structure::new(
            ent,
            attr,
            Schema::new(entity_types, sorts, signatures),
            Universe::new(keys, values, tuples),
        ))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, ModelError> {
    serde_json::from_str(text).map_err(|e| ModelError::Parse {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses a model document; `path` only labels errors.
pub fn parse_model(text: &str, path: &str) -> Result<Structure, ModelError> {
    parse_json::<ModelDocument>(text, path)?.to_structure(path)
}

/// The canonical text of a structure, newline-terminated.
pub fn emit_model(m: &Structure) -> String {
    let mut out = serde_json::to_string_pretty(&ModelDocument::from_structure(m)).expect("plain strings serialize");
    out.push('\n');
    out
}

fn read(path: &Path) -> Result<String, ModelError> {
    fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<Structure, ModelError> {
    parse_model(&read(path)?, &path.display().to_string())
}

/// Two model files and the four maps of a morphism between them. `r` and `f`
/// map source types to target types, `k` and `g` map target instances to
/// source instances. Paths are relative to the document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MorphismDocument {
    pub source_ref: String,
    pub target_ref: String,
    #[serde(default)]
    pub r: Vec<(String, String)>,
    #[serde(default)]
    pub f: Vec<(String, String)>,
    #[serde(default)]
    pub k: Vec<(String, String)>,
    #[serde(default)]
    pub g: Vec<(String, String)>,
}

/// A loaded morphism document with both endpoints parsed.
#[derive(Clone, Debug)]
pub struct LoadedMorphism {
    pub source: Structure,
    pub target: Structure,
    pub r: NameMap,
    pub f: NameMap,
    pub k: NameMap,
    pub g: NameMap,
}

impl LoadedMorphism {
    pub fn into_morphism(self) -> StructureMorphism {
        StructureMorphism::new(self.source, self.target, self.r, self.k, self.f, self.g)
    }
}

fn name_map(pairs: &[(String, String)], label: &str, path: &str) -> Result<NameMap, ModelError> {
    let mut seen = BTreeSet::new();
    let mut map = NameMap::new();
    for (a, b) in pairs {
        for n in [a, b] {
            if Name::from(n.as_str()).is_reserved() {
                return Err(ModelError::Reserved {
                    path: path.into(),
                    name: n.clone(),
                });
            }
        }
        if !seen.insert(a) {
            return Err(ModelError::Duplicate {
                path: path.into(),
                owner: label.into(),
                entry: a.clone(),
            });
        }
        map.insert(a.as_str(), b.as_str());
    }
    Ok(map)
}

pub fn parse_morphism(text: &str, path: &Path) -> Result<LoadedMorphism, ModelError> {
    let label = path.display().to_string();
    let doc: MorphismDocument = parse_json(text, &label)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(LoadedMorphism {
        source: load_model(&base.join(&doc.source_ref))?,
        target: load_model(&base.join(&doc.target_ref))?,
        r: name_map(&doc.r, "r", &label)?,
        f: name_map(&doc.f, "f", &label)?,
        k: name_map(&doc.k, "k", &label)?,
        g: name_map(&doc.g, "g", &label)?,
    })
}

pub fn load_morphism(path: &Path) -> Result<LoadedMorphism, ModelError> {
    parse_morphism(&read(path)?, path)
}
