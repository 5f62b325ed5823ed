//! Key embedding: put every key back into its own tuple.
//!
//! The embedded structure keeps the entity classification, types its lists
//! over the parallel sum `E + A`, and prepends a self index to every list:
//! `σ̇(r) = (⟐self: E:r) + σ(r)` and `τ̇(k) = (⟐self: E:k) + τ(k)`, with the
//! original entries tagged into the attribute summand.

use alloc::collections::BTreeMap;
use alloc::format;

use super::{Structure, StructureMorphism};
use crate::error::Error;
use crate::list::IndexedList;
use crate::name::{Name, NameMap, NameSet, ATTRIBUTE_TAG, ENTITY_TAG, SELF_INDEX};
use crate::schema::{Schema, Universe};

fn embed_list(owner: &Name, list: &IndexedList) -> IndexedList {
    let mut out = list.map_targets(|v| v.tagged(ATTRIBUTE_TAG));
    out.insert(SELF_INDEX, owner.tagged(ENTITY_TAG));
    out
}

fn tagged_sum(entity_side: &NameSet, attribute_side: &NameSet) -> NameSet {
    entity_side
        .iter()
        .map(|n| n.tagged(ENTITY_TAG))
        .chain(attribute_side.iter().map(|n| n.tagged(ATTRIBUTE_TAG)))
        .collect()
}

fn sum_map(entity_side: &NameMap, attribute_side: &NameMap) -> NameMap {
    entity_side
        .iter()
        .map(|(a, b)| (a.tagged(ENTITY_TAG), b.tagged(ENTITY_TAG)))
        .chain(
            attribute_side
                .iter()
                .map(|(a, b)| (a.tagged(ATTRIBUTE_TAG), b.tagged(ATTRIBUTE_TAG))),
        )
        .collect()
}

/// The key-embedding structure of a valid structure.
pub fn key_embed(m: &Structure) -> Result<Structure, Error> {
    m.require_valid("key embedding input")?;
    if let Some(r) = m
        .schema()
        .signatures()
        .iter()
        .find(|(_, sig)| sig.get(SELF_INDEX).is_some())
        .map(|(r, _)| r)
    {
        return Err(Error::InvalidStructure(format!(
            "signature of {r} already uses the reserved index {SELF_INDEX}"
        )));
    }
    let signatures: BTreeMap<Name, IndexedList> = m
        .schema()
        .signatures()
        .iter()
        .map(|(r, sig)| (r.clone(), embed_list(r, sig)))
        .collect();
    let tuples: BTreeMap<Name, IndexedList> = m
        .universe()
        .tuples()
        .iter()
        .map(|(k, tup)| (k.clone(), embed_list(k, tup)))
        .collect();
    let schema = Schema::new(
        m.entity_types().clone(),
        tagged_sum(m.entity_types(), m.sorts()),
        signatures,
    );
    let universe = Universe::new(m.keys().clone(), tagged_sum(m.keys(), m.values()), tuples);
    Ok(Structure::new(
        m.ent().clone(),
        m.ent().parallel_sum(m.attr()),
        schema,
        universe,
    ))
}

/// The key-embedding morphism `⟨r, k, r+f, k+g⟩ : Ṁ₂ ⇄ Ṁ₁` of a valid
/// structure morphism `⟨r, k, f, g⟩ : M₂ ⇄ M₁`.
pub fn key_embed_morphism(phi: &StructureMorphism) -> Result<StructureMorphism, Error> {
    phi.require_valid()?;
    Ok(StructureMorphism::new(
        key_embed(&phi.source)?,
        key_embed(&phi.target)?,
        phi.entity_map.clone(),
        phi.key_map.clone(),
        sum_map(&phi.entity_map, &phi.sort_map),
        sum_map(&phi.key_map, &phi.value_map),
    ))
}
