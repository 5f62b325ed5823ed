//! Structures: an entity classification and an attribute classification
//! joined by a list designation `⟨σ, τ⟩`.
//!
//! The designation condition: whenever key `k` is of entity type `r`, the
//! tuple `τ(k)` has exactly the indices of the signature `σ(r)` and each value
//! is of the sort at its index. In table terms, every row of a table is
//! classified by the table header.
//!
//! Entity types may also be sorts and keys may also be values; that overlap is
//! literal name sharing and is where foreign keys live.

mod embed;
mod integrity;
mod morphism;

pub use embed::{key_embed, key_embed_morphism};
pub use integrity::{check_integrity, check_overlap_coherence, is_extensive, IntegrityReport};
pub use morphism::{MorphismReport, StructureMorphism};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::classification::Classification;
use crate::error::Error;
use crate::list::ill_typed_indices;
use crate::name::{Name, NameSet};
use crate::schema::{ListMapIssue, Schema, Universe};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Structure {
    ent: Classification,
    attr: Classification,
    schema: Schema,
    universe: Universe,
}

/// One failure found by [`Structure::check`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructureViolation {
    /// The signature map is not a total map into the sorts.
    Schema(ListMapIssue),
    /// The tuple map is not a total map into the values.
    Universe(ListMapIssue),
    /// `k ⊨ r` but `τ(k)` and `σ(r)` have different arities.
    Arity { entity_type: Name, key: Name },
    /// `k ⊨ r` but the value of `τ(k)` at `index` is not of the sort of `σ(r)` there.
    Sort { entity_type: Name, key: Name, index: Name },
}

impl Structure {
    pub fn new(ent: Classification, attr: Classification, schema: Schema, universe: Universe) -> Self {
        Structure {
            ent,
            attr,
            schema,
            universe,
        }
    }

    /// The entity classification `⟨R, K, ⊨⟩`.
    pub fn ent(&self) -> &Classification {
        &self.ent
    }

    /// The attribute classification (typed domain) `⟨X, Y, ⊨⟩`.
    pub fn attr(&self) -> &Classification {
        &self.attr
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn entity_types(&self) -> &NameSet {
        self.schema.entity_types()
    }

    pub fn sorts(&self) -> &NameSet {
        self.schema.sorts()
    }

    pub fn keys(&self) -> &NameSet {
        self.universe.keys()
    }

    pub fn values(&self) -> &NameSet {
        self.universe.values()
    }

    pub fn into_parts(self) -> (Classification, Classification, Schema, Universe) {
        (self.ent, self.attr, self.schema, self.universe)
    }

    /// Disagreements between the classification carriers and the
    /// schema/universe carriers.
    pub fn carrier_mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        let pairs: [(&str, &NameSet, &str, &NameSet); 4] = [
            ("entity types", self.ent.types(), "schema entity types", self.schema.entity_types()),
            ("keys", self.ent.instances(), "universe keys", self.universe.keys()),
            ("sorts", self.attr.types(), "schema sorts", self.schema.sorts()),
            ("values", self.attr.instances(), "universe values", self.universe.values()),
        ];
        for (a, x, b, y) in pairs {
            if x != y {
                out.push(format!("{a} of the classification differ from the {b}"));
            }
        }
        out
    }

    /// Designation failures only, skipping pairs whose signature or tuple is
    /// missing.
    pub(crate) fn designation_violations(&self) -> Vec<StructureViolation> {
        let mut out = Vec::new();
        for (r, k) in self.ent.incidence_iter() {
            let (Some(sig), Some(tup)) = (self.schema.signature(r), self.universe.tuple(k)) else {
                continue;
            };
            if !sig.same_arity(tup) {
                out.push(StructureViolation::Arity {
                    entity_type: r.clone(),
                    key: k.clone(),
                });
                continue;
            }
            for index in ill_typed_indices(&self.attr, sig, tup) {
                out.push(StructureViolation::Sort {
                    entity_type: r.clone(),
                    key: k.clone(),
                    index,
                });
            }
        }
        out
    }

    /// Validates the structure: carriers must agree (an error otherwise); the
    /// signature and tuple maps must be total into the sorts and values; and
    /// every classified key must satisfy the designation condition.
    pub fn check(&self) -> Result<Verdict<StructureViolation>, Error> {
        let mismatches = self.carrier_mismatches();
        if !mismatches.is_empty() {
            return Err(Error::CarrierMismatch(mismatches));
        }
        let mut violations: Vec<StructureViolation> = self
            .schema
            .well_formedness()
            .into_violations()
            .into_iter()
            .map(StructureViolation::Schema)
            .collect();
        violations.extend(
            self.universe
                .well_formedness()
                .into_violations()
                .into_iter()
                .map(StructureViolation::Universe),
        );
        violations.extend(self.designation_violations());
        Ok(Verdict::from_violations(violations))
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok_and(|v| v.is_ok())
    }

    pub(crate) fn require_valid(&self, what: &str) -> Result<(), Error> {
        match self.check()? {
            Verdict::Ok => Ok(()),
            Verdict::Violated(v) => Err(Error::InvalidStructure(format!(
                "{what} has {} designation or well-formedness violations",
                v.len()
            ))),
        }
    }
}
