use alloc::string::String;

use super::Structure;
use crate::classification::Infomorphism;
use crate::error::Error;
use crate::name::{Name, NameMap};
use crate::schema::{ListLawViolation, SchemaMorphism, UniverseMorphism};
use crate::verdict::Verdict;

/// `⟨r, k, f, g⟩ : M₂ ⇄ M₁`.
///
/// Type-level maps point forward (`r: R₂ -> R₁`, `f: X₂ -> X₁`) and
/// instance-level maps point backward (`k: K₁ -> K₂`, `g: Y₁ -> Y₂`).
/// `source` is `M₂` and `target` is `M₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMorphism {
    pub source: Structure,
    pub target: Structure,
    pub entity_map: NameMap,
    pub key_map: NameMap,
    pub sort_map: NameMap,
    pub value_map: NameMap,
}

/// The four component laws of a structure morphism, each decided exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// `σ₁(r(r₂)) = Σ_f(σ₂(r₂))`, violations per `r₂`.
    pub schema: Verdict<ListLawViolation>,
    /// `τ₂(k(k₁)) = Σ_g(τ₁(k₁))`, violations per `k₁`.
    pub universe: Verdict<ListLawViolation>,
    /// `k(k₁) ⊨ r₂ iff k₁ ⊨ r(r₂)`, violating `(r₂, k₁)`.
    pub entity: Verdict<(Name, Name)>,
    /// `g(y₁) ⊨ x₂ iff y₁ ⊨ f(x₂)`, violating `(x₂, y₁)`.
    pub attribute: Verdict<(Name, Name)>,
}

impl MorphismReport {
    pub fn is_ok(&self) -> bool {
        self.schema.is_ok() && self.universe.is_ok() && self.entity.is_ok() && self.attribute.is_ok()
    }

    /// Names of the laws that fail.
    pub fn failing_laws(&self) -> impl Iterator<Item = &'static str> + '_ {
        [
            ("schema", self.schema.is_ok()),
            ("universe", self.universe.is_ok()),
            ("entity", self.entity.is_ok()),
            ("attribute", self.attribute.is_ok()),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(law, _)| law)
    }
}

impl StructureMorphism {
    pub fn new(
        source: Structure,
        target: Structure,
        entity_map: NameMap,
        key_map: NameMap,
        sort_map: NameMap,
        value_map: NameMap,
    ) -> Self {
        StructureMorphism {
            source,
            target,
            entity_map,
            key_map,
            sort_map,
            value_map,
        }
    }

    pub fn identity(m: &Structure) -> Self {
        StructureMorphism {
            source: m.clone(),
            target: m.clone(),
            entity_map: NameMap::identity(m.entity_types()),
            key_map: NameMap::identity(m.keys()),
            sort_map: NameMap::identity(m.sorts()),
            value_map: NameMap::identity(m.values()),
        }
    }

    /// `⟨r, f⟩ : S₂ ⇒ S₁`.
    pub fn schema_morphism(&self) -> SchemaMorphism {
        SchemaMorphism::new(
            self.source.schema().clone(),
            self.target.schema().clone(),
            self.entity_map.clone(),
            self.sort_map.clone(),
        )
    }

    /// `⟨k, g⟩ : U₂ ⇐ U₁`.
    pub fn universe_morphism(&self) -> UniverseMorphism {
        UniverseMorphism::new(
            self.source.universe().clone(),
            self.target.universe().clone(),
            self.key_map.clone(),
            self.value_map.clone(),
        )
    }

    /// `⟨r, k⟩ : E₂ ⇄ E₁`.
    pub fn entity_infomorphism(&self) -> Infomorphism {
        Infomorphism::new(
            self.source.ent().clone(),
            self.target.ent().clone(),
            self.entity_map.clone(),
            self.key_map.clone(),
        )
    }

    /// `⟨f, g⟩ : A₂ ⇄ A₁`.
    pub fn attribute_infomorphism(&self) -> Infomorphism {
        Infomorphism::new(
            self.source.attr().clone(),
            self.target.attr().clone(),
            self.sort_map.clone(),
            self.value_map.clone(),
        )
    }

    /// Checks both endpoints, then all four laws. Non-total maps are errors.
    pub fn check(&self) -> Result<MorphismReport, Error> {
        for (which, m) in [("source", &self.source), ("target", &self.target)] {
            if !m.check()?.is_ok() {
                return Err(Error::InvalidEndpoint(String::from(which) + " structure is not valid"));
            }
        }
        Ok(MorphismReport {
            schema: self.schema_morphism().check()?,
            universe: self.universe_morphism().check()?,
            entity: self.entity_infomorphism().check()?,
            attribute: self.attribute_infomorphism().check()?,
        })
    }

    pub(crate) fn require_valid(&self) -> Result<(), Error> {
        let report = self.check()?;
        if report.is_ok() {
            Ok(())
        } else {
            let mut laws = String::new();
            for (i, law) in report.failing_laws().enumerate() {
                if i > 0 {
                    laws.push_str(", ");
                }
                laws.push_str(law);
            }
            Err(Error::InvalidMorphism(String::from("failing laws: ") + &laws))
        }
    }

    /// Component-wise composite: `self: M₃ ⇄ M₂` followed by `next: M₂ ⇄ M₁`.
    pub fn compose(&self, next: &StructureMorphism) -> Result<StructureMorphism, Error> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("middle structures differ".into()));
        }
        Ok(StructureMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            entity_map: self.entity_map.then(&next.entity_map),
            key_map: next.key_map.then(&self.key_map),
            sort_map: self.sort_map.then(&next.sort_map),
            value_map: next.value_map.then(&self.value_map),
        })
    }

    /// Equality of the four maps and both endpoints.
    pub fn same_maps(&self, other: &StructureMorphism) -> bool {
        self.entity_map == other.entity_map
            && self.key_map == other.key_map
            && self.sort_map == other.sort_map
            && self.value_map == other.value_map
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::fixture;

    #[test]
    fn identity_on_fixture() {
        let m = fixture::works_on();
        assert!(StructureMorphism::identity(&m).check().unwrap().is_ok());
    }

    #[test]
    fn consistent_value_renaming() {
        let (m2, phi) = fixture::renaming_morphism();
        let report = phi.check().unwrap();
        assert!(report.is_ok(), "{report:?}");
        assert_eq!(phi.source, m2);
        assert!(phi.entity_map.is_identity() && phi.key_map.is_identity() && phi.sort_map.is_identity());
        assert!(!phi.value_map.is_identity());
    }

    #[test]
    fn broken_entity_law() {
        // k sends a1 to e1: e1 is not an Act, so the entity law fails at (Act, a1)
        // and also at (Emp, a1); the universe law fails at a1 too.
        let m = fixture::works_on();
        let mut phi = StructureMorphism::identity(&m);
        phi.key_map.insert("a1", "e1");
        let report = phi.check().unwrap();
        assert_eq!(
            report.entity.violations(),
            [(Name::from("Act"), Name::from("a1")), (Name::from("Emp"), Name::from("a1"))]
        );
        assert!(report.schema.is_ok() && report.attribute.is_ok());
        assert_eq!(report.failing_laws().collect::<alloc::vec::Vec<_>>(), ["universe", "entity"]);
    }

    #[test]
    fn invalid_endpoints_are_errors() {
        let m = fixture::works_on();
        let broken = fixture::with_attr_incidence(|p| {
            p.remove(&("Str".into(), "Alice".into()));
        });
        let mut phi = StructureMorphism::identity(&m);
        phi.source = broken;
        assert!(matches!(phi.check(), Err(Error::InvalidEndpoint(_))));
    }

    #[test]
    fn composition_with_identity() {
        let (_, phi) = fixture::renaming_morphism();
        let left = StructureMorphism::identity(&phi.source).compose(&phi).unwrap();
        let right = phi.compose(&StructureMorphism::identity(&phi.target)).unwrap();
        assert_eq!(left, phi);
        assert_eq!(right, phi);
        assert!(matches!(phi.compose(&phi), Err(Error::EndpointMismatch(_))));
    }
}
