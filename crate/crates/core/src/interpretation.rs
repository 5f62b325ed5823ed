//! Entity types read as relations (sets of tuples) and as tables (keyed rows).
//!
//! A relation forgets keys, so two keys with the same tuple collapse into one
//! tuple; a table keeps them apart.

use alloc::collections::{BTreeMap, BTreeSet};

use crate::classification::Classification;
use crate::error::Error;
use crate::list::{classify_tuple, Signature, Tuple};
use crate::name::{Name, NameSet, SELF_INDEX};
use crate::structure::{key_embed, Structure};

/// A signature together with a set of tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    pub signature: Signature,
    pub tuples: BTreeSet<Tuple>,
}

impl Relation {
    /// Every tuple is classified by the signature in `attr`.
    pub fn is_well_typed(&self, attr: &Classification) -> bool {
        self.tuples.iter().all(|t| classify_tuple(attr, &self.signature, t))
    }
}

/// A signature together with one row per key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub signature: Signature,
    pub rows: BTreeMap<Name, Tuple>,
}

impl Table {
    pub fn keys(&self) -> NameSet {
        self.rows.keys().cloned().collect()
    }

    /// The set of distinct rows.
    pub fn row_image(&self) -> BTreeSet<Tuple> {
        self.rows.values().cloned().collect()
    }

    pub fn is_well_typed(&self, attr: &Classification) -> bool {
        self.rows.values().all(|t| classify_tuple(attr, &self.signature, t))
    }

    /// Drops the self column and strips summand tags, undoing key embedding.
    pub fn without_self_column(&self) -> Table {
        let strip = |list: &Tuple| {
            list.iter()
                .filter(|(i, _)| i.as_str() != SELF_INDEX)
                .map(|(i, v)| (i.clone(), Name::from(v.untagged())))
                .collect::<Tuple>()
        };
        Table {
            signature: strip(&self.signature),
            rows: self.rows.iter().map(|(k, t)| (k.clone(), strip(t))).collect(),
        }
    }
}

fn extent<'a>(m: &'a Structure, r: &str) -> Result<&'a NameSet, Error> {
    m.require_valid("interpreted structure")?;
    m.ent().extent(r).map_err(|_| Error::UnknownType(r.into()))
}

fn signature(m: &Structure, r: &str) -> Signature {
    m.schema().signature(r).expect("valid structure has a signature per type").clone()
}

/// The relation of entity type `r`: its signature and the tuples of its keys.
pub fn traditional_interpretation(m: &Structure, r: &str) -> Result<Relation, Error> {
    let ext = extent(m, r)?;
    Ok(Relation {
        signature: signature(m, r),
        tuples: ext.iter().map(|k| m.universe().tuple(k).expect("valid").clone()).collect(),
    })
}

/// The table of entity type `r`: its signature and the tuple of each key.
pub fn tabular_interpretation(m: &Structure, r: &str) -> Result<Table, Error> {
    let ext = extent(m, r)?;
    Ok(Table {
        signature: signature(m, r),
        rows: ext.iter().map(|k| (k.clone(), m.universe().tuple(k).expect("valid").clone())).collect(),
    })
}

/// The table of `r` in the key-embedded structure: each row carries its own
/// key in the self column.
pub fn key_embedded_table(m: &Structure, r: &str) -> Result<Table, Error> {
    extent(m, r)?;
    tabular_interpretation(&key_embed(m)?, r)
}

/// Keys whose tuple belongs to the relation of `r`, and whether that set is
/// exactly the extent of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageCheck {
    pub preimage: NameSet,
    pub is_closed: bool,
}

pub fn morphic_preimage_check(m: &Structure, r: &str) -> Result<PreimageCheck, Error> {
    let relation = traditional_interpretation(m, r)?;
    let preimage: NameSet = m.universe().preimage(&relation.tuples).cloned().collect();
    let is_closed = &preimage == m.ent().extent(r)?;
    Ok(PreimageCheck { preimage, is_closed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list::IndexedList;
    use crate::name::name_set;
    use crate::testing::{fixture, gen};

    #[test]
    fn employee_relation() {
        let rel = traditional_interpretation(&fixture::works_on(), "Emp").unwrap();
        let alice = IndexedList::from_pairs([("name", "Alice"), ("id", "7"), ("dept", "d1")]);
        assert_eq!(rel.tuples, [alice].into_iter().collect());
        assert!(rel.is_well_typed(fixture::works_on().attr()));
    }

    #[test]
    fn activity_table() {
        let t = tabular_interpretation(&fixture::works_on(), "Act").unwrap();
        assert_eq!(t.keys(), name_set(["a1"]));
        assert_eq!(
            t.rows["a1"],
            IndexedList::from_pairs([
                ("entry_date", "2013-01-01"),
                ("job_descr", "design"),
                ("employee", "e1"),
                ("project", "p1"),
            ])
        );
    }

    #[test]
    fn unknown_type() {
        let m = fixture::works_on();
        assert_eq!(traditional_interpretation(&m, "Str"), Err(Error::UnknownType("Str".into())));
        assert!(matches!(key_embedded_table(&m, "Nope"), Err(Error::UnknownType(_))));
    }

    #[test]
    fn duplicate_tuples_collapse_in_relations_only() {
        let mut m = fixture::with_doppelganger();
        let (mut ent, attr, schema, universe) = m.into_parts();
        let mut incidence = ent.incidence();
        incidence.insert(("Emp".into(), "e2".into()));
        ent = Classification::new(ent.types().clone(), ent.instances().clone(), incidence).unwrap();
        m = Structure::new(ent, attr, schema, universe);
        assert_eq!(traditional_interpretation(&m, "Emp").unwrap().tuples.len(), 1);
        assert_eq!(tabular_interpretation(&m, "Emp").unwrap().rows.len(), 2);
    }

    #[test]
    fn embedded_employee_row() {
        let t = key_embedded_table(&fixture::works_on(), "Emp").unwrap();
        assert_eq!(
            t.rows["e1"],
            IndexedList::from_pairs([(SELF_INDEX, "E:e1"), ("name", "A:Alice"), ("id", "A:7"), ("dept", "A:d1")])
        );
        assert_eq!(t.without_self_column(), tabular_interpretation(&fixture::works_on(), "Emp").unwrap());
    }

    #[test]
    fn preimages() {
        let m = fixture::works_on();
        for r in fixture::ENTITY_TYPES {
            assert!(morphic_preimage_check(&m, r).unwrap().is_closed);
        }
        let d = fixture::with_doppelganger();
        let check = morphic_preimage_check(&d, "Emp").unwrap();
        assert_eq!(check.preimage, name_set(["e1", "e2"]));
        assert!(!check.is_closed);
    }

    #[test]
    fn empty_extent() {
        let ent = Classification::new(["r"], ["k"], core::iter::empty::<(&str, &str)>()).unwrap();
        let m = Structure::new(
            ent,
            Classification::empty(),
            crate::schema::Schema::new(name_set(["r"]), NameSet::new(), [("r".into(), IndexedList::new())].into_iter().collect()),
            crate::schema::Universe::new(name_set(["k"]), NameSet::new(), [("k".into(), IndexedList::new())].into_iter().collect()),
        );
        assert!(traditional_interpretation(&m, "r").unwrap().tuples.is_empty());
        assert!(tabular_interpretation(&m, "r").unwrap().rows.is_empty());
        let e = key_embedded_table(&m, "r").unwrap();
        assert!(e.rows.is_empty());
        assert_eq!(e.signature.indices().collect::<alloc::vec::Vec<_>>(), [SELF_INDEX]);
        assert!(morphic_preimage_check(&m, "r").unwrap().is_closed);
    }

    #[test]
    fn tables_factor_through_relations() {
        let mut rng = gen::rng(21);
        for _ in 0..200 {
            let m = gen::structure(&mut rng);
            for r in m.entity_types() {
                let rel = traditional_interpretation(&m, r).unwrap();
                let tab = tabular_interpretation(&m, r).unwrap();
                assert_eq!(tab.row_image(), rel.tuples);
                assert_eq!(tab.keys(), *m.ent().extent(r).unwrap());
                assert!(rel.is_well_typed(m.attr()) && tab.is_well_typed(m.attr()));
                let emb = key_embedded_table(&m, r).unwrap();
                let selves: NameSet = emb.rows.values().map(|t| Name::from(t.get(SELF_INDEX).unwrap().untagged())).collect();
                assert_eq!(selves, tab.keys());
                assert_eq!(emb.without_self_column(), tab);
            }
        }
    }
}
