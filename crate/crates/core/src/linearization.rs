//! Flattening a structure into entity-index-attribute quadruples, and the
//! olog view of a unified model (entity types and sorts coincide) as a graph
//! with an instance functor.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::classification::Classification;
use crate::error::Error;
use crate::list::{IndexedList, Tuple};
use crate::name::{Name, NameMap, NameSet};
use crate::schema::{Schema, Universe};
use crate::structure::Structure;

/// `⟨(r, k), i, (s, t)⟩`: key `k` of type `r` has value `t` of sort `s` at index `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinQuad {
    pub entity_type: Name,
    pub key: Name,
    pub index: Name,
    pub sort: Name,
    pub value: Name,
}

/// One quad per classified key and signature index.
pub fn linearize(m: &Structure) -> Result<BTreeSet<LinQuad>, Error> {
    m.require_valid("linearized structure")?;
    let mut quads = BTreeSet::new();
    for (r, k) in m.ent().incidence_iter() {
        let sig = m.schema().signature(r).expect("valid");
        let tup = m.universe().tuple(k).expect("valid");
        for (i, s) in sig.iter() {
            quads.insert(LinQuad {
                entity_type: r.clone(),
                key: k.clone(),
                index: i.clone(),
                sort: s.clone(),
                value: tup.get(i).expect("designation holds").clone(),
            });
        }
    }
    Ok(quads)
}

/// What quads cannot carry: classified keys of types with an empty signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Skeleton {
    pub nullary_incidence: BTreeSet<(Name, Name)>,
}

impl Skeleton {
    pub fn of(m: &Structure) -> Skeleton {
        let nullary_incidence = m
            .ent()
            .incidence_iter()
            .filter(|(r, _)| m.schema().signature(r).is_some_and(IndexedList::is_empty))
            .map(|(r, k)| (r.clone(), k.clone()))
            .collect();
        Skeleton { nullary_incidence }
    }
}

/// The entity incidence and the tuples of classified keys, recovered from quads.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Delinearized {
    pub incidence: BTreeSet<(Name, Name)>,
    pub rows: BTreeMap<Name, Tuple>,
}

impl Delinearized {
    /// The same data read directly off a structure.
    pub fn of(m: &Structure) -> Delinearized {
        Delinearized {
            incidence: m.ent().incidence(),
            rows: m
                .ent()
                .incidence_iter()
                .filter_map(|(_, k)| m.universe().tuple(k).map(|t| (k.clone(), t.clone())))
                .collect(),
        }
    }
}

/// Rebuilds incidence and rows from quads, a schema and a skeleton.
pub fn delinearize(quads: &BTreeSet<LinQuad>, schema: &Schema, skeleton: &Skeleton) -> Result<Delinearized, Error> {
    let mut out = Delinearized::default();
    for q in quads {
        let sig = schema
            .signature(&q.entity_type)
            .ok_or_else(|| Error::InconsistentQuads(format!("{} has no signature", q.entity_type)))?;
        if sig.get(&q.index) != Some(&q.sort) {
            return Err(Error::InconsistentQuads(format!(
                "index {} of {} is not of sort {}",
                q.index, q.entity_type, q.sort
            )));
        }
        let row = out.rows.entry(q.key.clone()).or_default();
        if let Some(previous) = row.insert(q.index.clone(), q.value.clone()) {
            if previous != q.value {
                return Err(Error::InconsistentQuads(format!(
                    "key {} has values {previous} and {} at index {}",
                    q.key, q.value, q.index
                )));
            }
        }
        out.incidence.insert((q.entity_type.clone(), q.key.clone()));
    }
    for (r, k) in &skeleton.nullary_incidence {
        out.incidence.insert((r.clone(), k.clone()));
        out.rows.entry(k.clone()).or_default();
    }
    for (r, k) in &out.incidence {
        let sig = schema
            .signature(r)
            .ok_or_else(|| Error::InconsistentQuads(format!("{r} has no signature")))?;
        if !sig.same_arity(&out.rows[k]) {
            return Err(Error::InconsistentQuads(format!("key {k} of {r} does not cover the signature of {r}")));
        }
    }
    Ok(out)
}

/// A signature slot `r --(r, i)--> s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OlogEdge {
    pub source: Name,
    pub index: Name,
    pub target: Name,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OlogGraph {
    pub nodes: NameSet,
    pub edges: BTreeSet<OlogEdge>,
}

fn require_unified(m: &Structure) -> Result<(), Error> {
    let sorts_not_types: Vec<Name> = m.sorts().difference(m.entity_types()).cloned().collect();
    let types_not_sorts: Vec<Name> = m.entity_types().difference(m.sorts()).cloned().collect();
    if sorts_not_types.is_empty() && types_not_sorts.is_empty() {
        Ok(())
    } else {
        Err(Error::NotUnifiedModel {
            sorts_not_types,
            types_not_sorts,
        })
    }
}

/// The graph of a unified model: one node per type, one edge per signature slot.
pub fn olog_schema(m: &Structure) -> Result<OlogGraph, Error> {
    m.require_valid("olog structure")?;
    require_unified(m)?;
    let edges = m
        .schema()
        .signatures()
        .iter()
        .flat_map(|(r, sig)| {
            sig.iter().map(move |(i, s)| OlogEdge {
                source: r.clone(),
                index: i.clone(),
                target: s.clone(),
            })
        })
        .collect();
    Ok(OlogGraph {
        nodes: m.entity_types().clone(),
        edges,
    })
}

/// Extents as node sets and index projections as edge functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OlogInstance {
    pub node_sets: BTreeMap<Name, NameSet>,
    pub edge_fns: BTreeMap<OlogEdge, NameMap>,
}

impl OlogInstance {
    /// Follows a path of edges from `key`; `None` if the path leaves the
    /// domain of some edge function.
    pub fn follow<'a>(&self, path: impl IntoIterator<Item = &'a OlogEdge>, key: &Name) -> Option<Name> {
        let mut at = key.clone();
        for edge in path {
            at = self.edge_fns.get(edge)?.get(&at)?.clone();
        }
        Some(at)
    }
}

pub fn olog_instance(m: &Structure) -> Result<OlogInstance, Error> {
    let graph = olog_schema(m)?;
    let node_sets: BTreeMap<Name, NameSet> = m.ent().extent_map().clone();
    let mut edge_fns = BTreeMap::new();
    let mut dangling = Vec::new();
    for edge in graph.edges {
        let mut map = NameMap::new();
        for k in &node_sets[&edge.source] {
            let t = m.universe().tuple(k).and_then(|t| t.get(&edge.index)).expect("designation holds");
            if !node_sets[&edge.target].contains(t) {
                dangling.push((edge.target.clone(), t.clone()));
            }
            map.insert(k.clone(), t.clone());
        }
        edge_fns.insert(edge, map);
    }
    if !dangling.is_empty() {
        dangling.sort();
        dangling.dedup();
        return Err(Error::ReferentialViolation(dangling));
    }
    Ok(OlogInstance { node_sets, edge_fns })
}

/// The index used by the self-describing signatures that [`unify`] adds.
pub const UNIFIED_INDEX: &str = "value";

/// Turns a mixed model into a unified one.
///
/// Every sort that is not an entity type becomes one, with signature
/// `(value: x)`; its values become keys of that type, each described by
/// `(value: y)`. Every entity type that is not a sort becomes one, whose
/// values are its keys. A value of a promoted sort that is already a key
/// is an error, since its tuple cannot describe it.
pub fn unify(m: &Structure) -> Result<Structure, Error> {
    m.require_valid("unified structure")?;
    let promoted_sorts: NameSet = m.sorts().difference(m.entity_types()).cloned().collect();
    let promoted_types: NameSet = m.entity_types().difference(m.sorts()).cloned().collect();
    let types: NameSet = m.entity_types().union(m.sorts()).cloned().collect();

    let mut signatures = m.schema().signatures().clone();
    let mut tuples = m.universe().tuples().clone();
    let mut keys = m.keys().clone();
    let mut values = m.values().clone();
    let mut ent_incidence = m.ent().incidence();
    let mut attr_incidence = m.attr().incidence();

    for x in &promoted_sorts {
        signatures.insert(x.clone(), IndexedList::from_pairs([(UNIFIED_INDEX, x.clone())]));
        for y in m.attr().extent(x)? {
            if m.keys().contains(y) {
                return Err(Error::InvalidInput(format!("value {y} of sort {x} is already a key")));
            }
            keys.insert(y.clone());
            tuples.insert(y.clone(), IndexedList::from_pairs([(UNIFIED_INDEX, y.clone())]));
            ent_incidence.insert((x.clone(), y.clone()));
        }
    }
    for r in &promoted_types {
        for k in m.ent().extent(r)? {
            values.insert(k.clone());
            attr_incidence.insert((r.clone(), k.clone()));
        }
    }
    let ent = Classification::new(types.clone(), keys.clone(), ent_incidence)?;
    let attr = Classification::new(types.clone(), values.clone(), attr_incidence)?;
    Ok(Structure::new(
        ent,
        attr,
        Schema::new(types.clone(), types, signatures),
        Universe::new(keys, values, tuples),
    ))
}
