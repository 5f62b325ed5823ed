//! Integrity constraints, overlap coherence and extensiveness.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Structure, StructureViolation};
use crate::error::Error;
use crate::name::{Name, NameSet};
use crate::schema::ListMapIssue;
use crate::verdict::Verdict;

/// The three classic integrity constraints, read on a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrityReport {
    /// Carrier disagreements between classifications and schema/universe.
    pub carriers: Vec<String>,
    /// Entity integrity: every key has a tuple, and every tuple value is a value.
    pub entity: Verdict<ListMapIssue>,
    /// Domain integrity: every signature is declared over known sorts, and
    /// every classified key is described by a tuple of its signature.
    pub domain: Verdict<StructureViolation>,
    /// Referential integrity: for a name `t` that is both an entity type and
    /// a sort, every value of sort `t` is a key of type `t`. Violating `(t, y)`.
    pub referential: Verdict<(Name, Name)>,
}

impl IntegrityReport {
    pub fn is_ok(&self) -> bool {
        self.carriers.is_empty() && self.entity.is_ok() && self.domain.is_ok() && self.referential.is_ok()
    }
}

/// Names that are both entity types and sorts.
pub(crate) fn shared_types(m: &Structure) -> NameSet {
    m.ent().types().intersection(m.attr().types()).cloned().collect()
}

pub(crate) fn referential_violations(m: &Structure) -> Vec<(Name, Name)> {
    let mut out = Vec::new();
    for t in shared_types(m) {
        let values = m.attr().extent(&t).expect("shared type is a sort");
        for y in values {
            if !m.ent().holds(y, &t) {
                out.push((t.clone(), y.clone()));
            }
        }
    }
    out
}

/// Report-only integrity check; never fails.
pub fn check_integrity(m: &Structure) -> IntegrityReport {
    let mut domain: Vec<StructureViolation> = m
        .schema()
        .well_formedness()
        .into_violations()
        .into_iter()
        .map(StructureViolation::Schema)
        .collect();
    domain.extend(m.designation_violations());
    IntegrityReport {
        carriers: m.carrier_mismatches(),
        entity: m.universe().well_formedness(),
        domain: Verdict::from_violations(domain),
        referential: Verdict::from_violations(referential_violations(m)),
    }
}

/// For every shared name `t`, each instance of `t` on either side must be
/// both a key and a value. Violating `(t, instance)`.
pub fn check_overlap_coherence(m: &Structure) -> Verdict<(Name, Name)> {
    let overlap: NameSet = m.ent().instances().intersection(m.attr().instances()).cloned().collect();
    let mut out = Vec::new();
    for t in shared_types(m) {
        let ent = m.ent().extent(&t).expect("shared type");
        let attr = m.attr().extent(&t).expect("shared type");
        for y in ent.union(attr) {
            if !overlap.contains(y) {
                out.push((t.clone(), y.clone()));
            }
        }
    }
    Verdict::from_violations(out)
}

/// Entity types `r` whose extent is strictly smaller than the tuple-preimage
/// of its own image, `τ⁻¹(℘τ(ext(r)))`.
pub(crate) fn non_extensive_types(m: &Structure) -> Vec<Name> {
    let mut out = Vec::new();
    for (r, ext) in m.ent().extent_map() {
        let image: BTreeSet<_> = ext.iter().filter_map(|k| m.universe().tuple(k)).cloned().collect();
        if m.universe().preimage(&image).any(|k| !ext.contains(k)) {
            out.push(r.clone());
        }
    }
    out
}

/// True when every entity extent is closed under descriptor equivalence:
/// no key outside `ext(r)` carries a tuple of some key inside it.
pub fn is_extensive(m: &Structure) -> Result<bool, Error> {
    m.require_valid("extensiveness input")?;
    Ok(non_extensive_types(m).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::Classification;
    use crate::list::IndexedList;
    use crate::schema::{Schema, Universe};
    use crate::testing::fixture;

    #[test]
    fn fixture_integrity_is_clean() {
        let m = fixture::works_on();
        let report = check_integrity(&m);
        assert!(report.is_ok(), "{report:?}");
        assert_eq!(shared_types(&m), crate::name::name_set(["Dept", "Emp", "Proj"]));
        assert!(check_overlap_coherence(&m).is_ok());
    }

    #[test]
    fn stray_foreign_key() {
        let m = fixture::with_values_and_attr_incidence(["d9"], |p| {
            p.insert(("Dept".into(), "d9".into()));
        });
        let report = check_integrity(&m);
        assert_eq!(report.referential.violations(), [(Name::from("Dept"), Name::from("d9"))]);
        assert!(report.entity.is_ok() && report.domain.is_ok());
    }

    #[test]
    fn disjoint_model_is_vacuously_referential() {
        let ent = Classification::new(["r"], ["k"], [("r", "k")]).unwrap();
        let attr = Classification::new(["x"], ["v"], [("x", "v")]).unwrap();
        let m = Structure::new(
            ent,
            attr,
            Schema::new(
                crate::name::name_set(["r"]),
                crate::name::name_set(["x"]),
                [("r".into(), IndexedList::from_pairs([("i", "x")]))].into_iter().collect(),
            ),
            Universe::new(
                crate::name::name_set(["k"]),
                crate::name::name_set(["v"]),
                [("k".into(), IndexedList::from_pairs([("i", "v")]))].into_iter().collect(),
            ),
        );
        assert!(m.is_valid());
        assert!(check_integrity(&m).referential.is_ok());
        assert!(check_overlap_coherence(&m).is_ok());
    }

    #[test]
    fn non_key_value_in_a_shared_sort() {
        let m = fixture::with_attr_incidence(|p| {
            p.insert(("Emp".into(), "Alice".into()));
        });
        assert_eq!(
            check_overlap_coherence(&m).into_violations(),
            [(Name::from("Emp"), Name::from("Alice"))]
        );
    }

    #[test]
    fn extensiveness() {
        let m = fixture::works_on();
        assert!(is_extensive(&m).unwrap());
        let d = fixture::with_doppelganger();
        assert!(d.is_valid());
        assert!(!is_extensive(&d).unwrap());
        assert_eq!(non_extensive_types(&d), ["Emp"]);
        assert!(is_extensive(&Structure::default()).unwrap());
    }
}
