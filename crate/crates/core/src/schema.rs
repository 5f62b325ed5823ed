//! Schemas (entity types with signatures over sorts) and universes (keys with
//! tuples over values), and their morphisms.
//!
//! Neither side carries typing on its own: a universe value is just a name.
//! Typing appears only once a structure pairs them with classifications.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::list::{Signature, Tuple};
use crate::name::{Name, NameMap, NameSet};
use crate::verdict::Verdict;

/// A defect of a list map `owner -> List(carrier)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ListMapIssue {
    /// A domain name with no list.
    Missing(Name),
    /// A list attached to a name outside the domain.
    Stray(Name),
    /// A list entry whose target is outside the carrier.
    OutsideCarrier { owner: Name, index: Name, target: Name },
}

fn list_map_issues(domain: &NameSet, carrier: &NameSet, lists: &BTreeMap<Name, crate::list::IndexedList>) -> Vec<ListMapIssue> {
    let mut issues: Vec<ListMapIssue> = domain
        .iter()
        .filter(|d| !lists.contains_key(d.as_str()))
        .map(|d| ListMapIssue::Missing(d.clone()))
        .collect();
    for (owner, list) in lists {
        if !domain.contains(owner) {
            issues.push(ListMapIssue::Stray(owner.clone()));
        }
        for (index, target) in list.iter() {
            if !carrier.contains(target) {
                issues.push(ListMapIssue::OutsideCarrier {
                    owner: owner.clone(),
                    index: index.clone(),
                    target: target.clone(),
                });
            }
        }
    }
    issues
}

/// A type hypergraph `⟨R, σ, X⟩`: entity types, sorts and a signature map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Schema {
    entity_types: NameSet,
    sorts: NameSet,
    signatures: BTreeMap<Name, Signature>,
}

impl Schema {
    /// Assembles a schema. Well-formedness (σ total on the entity types and
    /// landing in the sorts) is reported by [`Schema::well_formedness`].
    pub fn new(entity_types: NameSet, sorts: NameSet, signatures: BTreeMap<Name, Signature>) -> Self {
        Schema {
            entity_types,
            sorts,
            signatures,
        }
    }

    pub fn entity_types(&self) -> &NameSet {
        &self.entity_types
    }

    pub fn sorts(&self) -> &NameSet {
        &self.sorts
    }

    pub fn signatures(&self) -> &BTreeMap<Name, Signature> {
        &self.signatures
    }

    pub fn signature(&self, entity_type: &str) -> Option<&Signature> {
        self.signatures.get(entity_type)
    }

    /// Arity `α(r)`: the index set of `σ(r)`.
    pub fn arity(&self, entity_type: &str) -> Option<NameSet> {
        self.signature(entity_type).map(Signature::arity)
    }

    pub fn well_formedness(&self) -> Verdict<ListMapIssue> {
        Verdict::from_violations(list_map_issues(&self.entity_types, &self.sorts, &self.signatures))
    }
}

/// An instance hypergraph `⟨K, τ, Y⟩`: keys, values and a tuple map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Universe {
    keys: NameSet,
    values: NameSet,
    tuples: BTreeMap<Name, Tuple>,
}

impl Universe {
    pub fn new(keys: NameSet, values: NameSet, tuples: BTreeMap<Name, Tuple>) -> Self {
        Universe { keys, values, tuples }
    }

    pub fn keys(&self) -> &NameSet {
        &self.keys
    }

    pub fn values(&self) -> &NameSet {
        &self.values
    }

    pub fn tuples(&self) -> &BTreeMap<Name, Tuple> {
        &self.tuples
    }

    pub fn tuple(&self, key: &str) -> Option<&Tuple> {
        self.tuples.get(key)
    }

    pub fn well_formedness(&self) -> Verdict<ListMapIssue> {
        Verdict::from_violations(list_map_issues(&self.keys, &self.values, &self.tuples))
    }

    /// Keys whose tuple is one of `tuples` (the preimage `τ⁻¹`).
    pub fn preimage<'a>(&'a self, tuples: &'a alloc::collections::BTreeSet<Tuple>) -> impl Iterator<Item = &'a Name> + 'a {
        self.tuples
            .iter()
            .filter(move |(_, t)| tuples.contains(*t))
            .map(|(k, _)| k)
    }
}

/// The list of a list-map law that fails at one domain name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ListLawViolation {
    /// The entity type (schema law) or key (universe law) at fault.
    pub at: Name,
    /// The list on the left-hand side of the law, e.g. `σ₁(r(r₂))`.
    pub expected: Option<Signature>,
    /// The list on the right-hand side, e.g. `Σ_f(σ₂(r₂))`.
    pub found: Signature,
}

/// `⟨r, f⟩ : S₂ ⇒ S₁` with `r: R₂ -> R₁` and `f: X₂ -> X₁`, preserving
/// signatures: `σ₁(r(r₂)) = Σ_f(σ₂(r₂))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaMorphism {
    pub source: Schema,
    pub target: Schema,
    pub entity_map: NameMap,
    pub sort_map: NameMap,
}

impl SchemaMorphism {
    pub fn new(source: Schema, target: Schema, entity_map: NameMap, sort_map: NameMap) -> Self {
        SchemaMorphism {
            source,
            target,
            entity_map,
            sort_map,
        }
    }

    pub fn identity(s: &Schema) -> Self {
        SchemaMorphism {
            source: s.clone(),
            target: s.clone(),
            entity_map: NameMap::identity(s.entity_types()),
            sort_map: NameMap::identity(s.sorts()),
        }
    }

    pub fn check(&self) -> Result<Verdict<ListLawViolation>, Error> {
        for (which, s) in [("source", &self.source), ("target", &self.target)] {
            if !s.well_formedness().is_ok() {
                return Err(Error::InvalidInput(format!("{which} schema is not well formed")));
            }
        }
        self.entity_map
            .check_function("entity type map", self.source.entity_types(), self.target.entity_types())?;
        self.sort_map
            .check_function("sort map", self.source.sorts(), self.target.sorts())?;
        let mut violations = Vec::new();
        for (r2, sig2) in self.source.signatures() {
            let found = sig2.sum_along(&self.sort_map)?;
            let expected = self.target.signature(self.entity_map.get(r2).expect("checked total"));
            if expected != Some(&found) {
                violations.push(ListLawViolation {
                    at: r2.clone(),
                    expected: expected.cloned(),
                    found,
                });
            }
        }
        Ok(Verdict::from_violations(violations))
    }

    /// `self` followed by `next`, for `self: S₃ ⇒ S₂` and `next: S₂ ⇒ S₁`.
    pub fn compose(&self, next: &SchemaMorphism) -> Result<SchemaMorphism, Error> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("middle schemas differ".into()));
        }
        for m in [self, next] {
            if !m.check()?.is_ok() {
                return Err(Error::InvalidMorphism("schema morphism violates signature preservation".into()));
            }
        }
        Ok(SchemaMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            entity_map: self.entity_map.then(&next.entity_map),
            sort_map: self.sort_map.then(&next.sort_map),
        })
    }
}

/// `⟨k, g⟩ : U₂ ⇐ U₁` with `k: K₁ -> K₂` and `g: Y₁ -> Y₂`, preserving
/// tuples: `τ₂(k(k₁)) = Σ_g(τ₁(k₁))`. `source` is `U₂`, the universe the
/// maps point into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseMorphism {
    pub source: Universe,
    pub target: Universe,
    pub key_map: NameMap,
    pub value_map: NameMap,
}

impl UniverseMorphism {
    pub fn new(source: Universe, target: Universe, key_map: NameMap, value_map: NameMap) -> Self {
        UniverseMorphism {
            source,
            target,
            key_map,
            value_map,
        }
    }

    pub fn identity(u: &Universe) -> Self {
        UniverseMorphism {
            source: u.clone(),
            target: u.clone(),
            key_map: NameMap::identity(u.keys()),
            value_map: NameMap::identity(u.values()),
        }
    }

    pub fn check(&self) -> Result<Verdict<ListLawViolation>, Error> {
        for (which, u) in [("source", &self.source), ("target", &self.target)] {
            if !u.well_formedness().is_ok() {
                return Err(Error::InvalidInput(format!("{which} universe is not well formed")));
            }
        }
        self.key_map
            .check_function("key map", self.target.keys(), self.source.keys())?;
        self.value_map
            .check_function("value map", self.target.values(), self.source.values())?;
        let mut violations = Vec::new();
        for (k1, tup1) in self.target.tuples() {
            let found = tup1.sum_along(&self.value_map)?;
            let expected = self.source.tuple(self.key_map.get(k1).expect("checked total"));
            if expected != Some(&found) {
                violations.push(ListLawViolation {
                    at: k1.clone(),
                    expected: expected.cloned(),
                    found,
                });
            }
        }
        Ok(Verdict::from_violations(violations))
    }

    /// `self` followed by `next`, for `self: U₃ ⇐ U₂` and `next: U₂ ⇐ U₁`.
    pub fn compose(&self, next: &UniverseMorphism) -> Result<UniverseMorphism, Error> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("middle universes differ".into()));
        }
        for m in [self, next] {
            if !m.check()?.is_ok() {
                return Err(Error::InvalidMorphism("universe morphism violates tuple preservation".into()));
            }
        }
        Ok(UniverseMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            key_map: next.key_map.then(&self.key_map),
            value_map: next.value_map.then(&self.value_map),
        })
    }
}
