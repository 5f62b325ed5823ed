//! Fiber passages between structures over a fixed schema and structures over
//! a fixed universe.
//!
//! A schema morphism `⟨r, f⟩ : S₂ ⇒ S₁` pulls a structure over `S₁` back to a
//! structure over `S₂` on the same universe (the reduct). A universe morphism
//! `⟨k, g⟩ : U₂ ⇐ U₁` pulls a structure over `U₂` back to one over `U₁` on the
//! same schema (the image). Each passage comes with a bridge morphism, and
//! every structure morphism factors through both.

use alloc::format;
use alloc::string::{String, ToString};

use crate::classification::Classification;
use crate::error::Error;
use crate::name::NameMap;
use crate::schema::{SchemaMorphism, UniverseMorphism};
use crate::structure::{Structure, StructureMorphism};
use crate::verdict::Verdict;

fn invalid(what: &str, e: Error) -> Error {
    Error::InvalidInput(format!("{what}: {e}"))
}

fn require_structure(m: &Structure, what: &str) -> Result<(), Error> {
    m.require_valid(what).map_err(|e| invalid(what, e))
}

fn require_ok<V>(verdict: Result<Verdict<V>, Error>, what: &str) -> Result<(), Error> {
    match verdict {
        Ok(Verdict::Ok) => Ok(()),
        Ok(Verdict::Violated(v)) => Err(Error::InvalidInput(format!("{what} fails its list law at {} names", v.len()))),
        Err(e) => Err(invalid(what, e)),
    }
}

/// The reduct `⟨r⁻¹(E₁), ⟨σ₂, τ₁⟩, f⁻¹(A₁)⟩` of `m1` along `m : S₂ ⇒ S₁`.
pub fn reduct_along_schema(m1: &Structure, m: &SchemaMorphism) -> Result<Structure, Error> {
    require_structure(m1, "structure")?;
    require_ok(m.check(), "schema morphism")?;
    if &m.target != m1.schema() {
        return Err(Error::InvalidInput("schema morphism does not land in the structure's schema".into()));
    }
    let ent = Classification::inverse_image_by_types(m.source.entity_types(), &m.entity_map, m1.ent())?;
    let attr = Classification::inverse_image_by_types(m.source.sorts(), &m.sort_map, m1.attr())?;
    Ok(Structure::new(ent, attr, m.source.clone(), m1.universe().clone()))
}

/// The bridge `⟨r, 1, f, 1⟩` from the reduct of `m1` into `m1`.
pub fn bridge_schema(m1: &Structure, m: &SchemaMorphism) -> Result<StructureMorphism, Error> {
    let reduct = reduct_along_schema(m1, m)?;
    Ok(StructureMorphism::new(
        reduct,
        m1.clone(),
        m.entity_map.clone(),
        NameMap::identity(m1.keys()),
        m.sort_map.clone(),
        NameMap::identity(m1.values()),
    ))
}

/// The image `⟨k⁻¹(E₂), ⟨σ₂, τ₁⟩, g⁻¹(A₂)⟩` of `m2` along `u : U₂ ⇐ U₁`.
pub fn image_along_universe(m2: &Structure, u: &UniverseMorphism) -> Result<Structure, Error> {
    require_structure(m2, "structure")?;
    require_ok(u.check(), "universe morphism")?;
    if &u.source != m2.universe() {
        return Err(Error::InvalidInput("universe morphism does not start at the structure's universe".into()));
    }
    let ent = Classification::inverse_image_by_instances(u.target.keys(), &u.key_map, m2.ent())?;
    let attr = Classification::inverse_image_by_instances(u.target.values(), &u.value_map, m2.attr())?;
    Ok(Structure::new(ent, attr, m2.schema().clone(), u.target.clone()))
}

/// The bridge `⟨1, k, 1, g⟩` from `m2` to its image.
pub fn bridge_universe(m2: &Structure, u: &UniverseMorphism) -> Result<StructureMorphism, Error> {
    let image = image_along_universe(m2, u)?;
    Ok(StructureMorphism::new(
        m2.clone(),
        image,
        NameMap::identity(m2.entity_types()),
        u.key_map.clone(),
        NameMap::identity(m2.sorts()),
        u.value_map.clone(),
    ))
}

/// Both factorizations of a structure morphism `φ : M₂ ⇄ M₁`.
///
/// Schema side: `M₂ → schema_mid` over `S₂`, then the schema bridge into `M₁`.
/// Universe side: the universe bridge `M₂ → universe_mid`, then a morphism
/// over `U₁` into `M₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedMorphismWitness {
    pub original: StructureMorphism,
    pub schema_mid: Structure,
    pub universe_mid: Structure,
    /// `⟨1, k, 1, g⟩ : M₂ ⇄ schema_mid`.
    pub schema_fiber_leg: StructureMorphism,
    /// `⟨r, 1, f, 1⟩ : schema_mid ⇄ M₁`.
    pub schema_bridge: StructureMorphism,
    /// `⟨1, k, 1, g⟩ : M₂ ⇄ universe_mid`.
    pub universe_bridge: StructureMorphism,
    /// `⟨r, 1, f, 1⟩ : universe_mid ⇄ M₁`.
    pub universe_fiber_leg: StructureMorphism,
}

impl FiberedMorphismWitness {
    /// Every leg is valid and both composites equal the original exactly.
    pub fn verify(&self) -> Result<bool, Error> {
        for leg in [
            &self.schema_fiber_leg,
            &self.schema_bridge,
            &self.universe_bridge,
            &self.universe_fiber_leg,
        ] {
            if !leg.check()?.is_ok() {
                return Ok(false);
            }
        }
        let top = self.schema_fiber_leg.compose(&self.schema_bridge)?;
        let bottom = self.universe_bridge.compose(&self.universe_fiber_leg)?;
        Ok(top == self.original && bottom == self.original)
    }

    /// The two midpoints share carriers `R₂, K₁, X₂, Y₁`; for a valid
    /// morphism they coincide.
    pub fn midpoints_agree(&self) -> bool {
        self.schema_mid == self.universe_mid
    }
}

/// Factors a valid structure morphism through its reduct and its image.
pub fn factorize_structure_morphism(phi: &StructureMorphism) -> Result<FiberedMorphismWitness, Error> {
    phi.require_valid().map_err(|e| match e {
        Error::InvalidMorphism(_) => e,
        other => Error::InvalidMorphism(other.to_string()),
    })?;
    let (m2, m1) = (&phi.source, &phi.target);
    let schema_bridge = bridge_schema(m1, &phi.schema_morphism())?;
    let schema_mid = schema_bridge.source.clone();
    let schema_fiber_leg = StructureMorphism::new(
        m2.clone(),
        schema_mid.clone(),
        NameMap::identity(m2.entity_types()),
        phi.key_map.clone(),
        NameMap::identity(m2.sorts()),
        phi.value_map.clone(),
    );
    let universe_bridge = bridge_universe(m2, &phi.universe_morphism())?;
    let universe_mid = universe_bridge.target.clone();
    let universe_fiber_leg = StructureMorphism::new(
        universe_mid.clone(),
        m1.clone(),
        phi.entity_map.clone(),
        NameMap::identity(m1.keys()),
        phi.sort_map.clone(),
        NameMap::identity(m1.values()),
    );
    Ok(FiberedMorphismWitness {
        original: phi.clone(),
        schema_mid,
        universe_mid,
        schema_fiber_leg,
        schema_bridge,
        universe_bridge,
        universe_fiber_leg,
    })
}

/// Which fiber a morphism is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fiber {
    /// Over a fixed schema: `r` and `f` are identities.
    Schema,
    /// Over a fixed universe: `k` and `g` are identities.
    Universe,
}

/// Why a morphism is not in a fiber.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiberIssue {
    /// The morphism could not be checked at all.
    Unchecked(String),
    /// A defining law fails.
    Law(&'static str),
    /// A component that must be an identity is not one.
    NotIdentity(&'static str),
}

/// Decides whether `phi` is a valid morphism lying in the given fiber.
pub fn check_fixed_fiber_morphism(phi: &StructureMorphism, fiber: Fiber) -> Verdict<FiberIssue> {
    let mut issues = alloc::vec::Vec::new();
    match phi.check() {
        Err(e) => issues.push(FiberIssue::Unchecked(e.to_string())),
        Ok(report) => issues.extend(report.failing_laws().map(FiberIssue::Law)),
    }
    let identity_on = |map: &NameMap, domain: &crate::name::NameSet, codomain: &crate::name::NameSet| {
        map.is_identity() && &map.domain() == domain && domain == codomain
    };
    let (s, t) = (&phi.source, &phi.target);
    let components: [(&'static str, bool); 2] = match fiber {
        Fiber::Schema => [
            ("entity type map", identity_on(&phi.entity_map, s.entity_types(), t.entity_types())),
            ("sort map", identity_on(&phi.sort_map, s.sorts(), t.sorts())),
        ],
        Fiber::Universe => [
            ("key map", identity_on(&phi.key_map, t.keys(), s.keys())),
            ("value map", identity_on(&phi.value_map, t.values(), s.values())),
        ],
    };
    issues.extend(components.into_iter().filter(|(_, ok)| !ok).map(|(c, _)| FiberIssue::NotIdentity(c)));
    Verdict::from_violations(issues)
}
