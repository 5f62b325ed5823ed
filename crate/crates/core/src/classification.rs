//! Finite classifications and infomorphisms.
//!
//! A classification is a set of types, a set of instances and an incidence
//! relation saying which instance is of which type. Attribute classifications
//! (sorts classifying data values) and entity classifications (entity types
//! classifying keys) share this one representation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::Error;
use crate::name::{Name, NameMap, NameSet, ATTRIBUTE_TAG, ENTITY_TAG};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Classification {
    types: NameSet,
    instances: NameSet,
    /// Extent of every type, including empty ones.
    extents: BTreeMap<Name, NameSet>,
}

impl Classification {
    /// Builds a classification from an explicit set of `(type, instance)`
    /// incidence pairs. Every pair must reference declared names.
    pub fn new<T, I, P, A, B>(types: T, instances: I, incidence: P) -> Result<Self, Error>
    where
        T: IntoIterator,
        T::Item: Into<Name>,
        I: IntoIterator,
        I::Item: Into<Name>,
        P: IntoIterator<Item = (A, B)>,
        A: Into<Name>,
        B: Into<Name>,
    {
        let types: NameSet = types.into_iter().map(Into::into).collect();
        let instances: NameSet = instances.into_iter().map(Into::into).collect();
        let mut extents: BTreeMap<Name, NameSet> = types.iter().map(|t| (t.clone(), NameSet::new())).collect();
        for (ty, instance) in incidence {
            let (ty, instance) = (ty.into(), instance.into());
            if !instances.contains(&instance) {
                return Err(Error::DanglingIncidence { ty, instance });
            }
            match extents.get_mut(&ty) {
                Some(ext) => {
                    ext.insert(instance);
                }
                None => return Err(Error::DanglingIncidence { ty, instance }),
            }
        }
        Ok(Classification {
            types,
            instances,
            extents,
        })
    }

    /// Rebuilds a classification from its extent map `type -> extent`.
    /// Types absent from the map have empty extent.
    pub fn from_extent_map(types: NameSet, instances: NameSet, extents: &BTreeMap<Name, NameSet>) -> Result<Self, Error> {
        let pairs = extents
            .iter()
            .flat_map(|(t, ext)| ext.iter().map(move |y| (t.clone(), y.clone())));
        Classification::new(types, instances, pairs)
    }

    pub fn empty() -> Self {
        Classification::default()
    }

    pub fn types(&self) -> &NameSet {
        &self.types
    }

    pub fn instances(&self) -> &NameSet {
        &self.instances
    }

    /// `instance ⊨ ty`. False when either name is unknown.
    pub fn holds(&self, instance: &str, ty: &str) -> bool {
        self.extents.get(ty).is_some_and(|ext| ext.contains(instance))
    }

    /// The instances classified by `ty`.
    pub fn extent(&self, ty: &str) -> Result<&NameSet, Error> {
        self.extents.get(ty).ok_or_else(|| Error::UnknownType(ty.into()))
    }

    /// The types classifying `instance`.
    pub fn intent(&self, instance: &str) -> NameSet {
        self.extents
            .iter()
            .filter(|(_, ext)| ext.contains(instance))
            .map(|(t, _)| t.clone())
            .collect()
    }

    pub fn extent_map(&self) -> &BTreeMap<Name, NameSet> {
        &self.extents
    }

    /// The incidence relation as `(type, instance)` pairs.
    pub fn incidence(&self) -> BTreeSet<(Name, Name)> {
        self.incidence_iter().map(|(t, y)| (t.clone(), y.clone())).collect()
    }

    pub fn incidence_iter(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.extents.iter().flat_map(|(t, ext)| ext.iter().map(move |y| (t, y)))
    }

    pub fn incidence_len(&self) -> usize {
        self.extents.values().map(BTreeSet::len).sum()
    }

    /// Inverse image along a type function `f: types -> types(target)`:
    /// `y ⊨ x` iff `y ⊨_target f(x)`, over the instances of `target`.
    pub fn inverse_image_by_types(types: &NameSet, f: &NameMap, target: &Classification) -> Result<Self, Error> {
        f.check_function("type map", types, &target.types)?;
        let extents = types
            .iter()
            .map(|x| {
                let image = f.get(x).expect("checked total");
                (x.clone(), target.extents[image].clone())
            })
            .collect();
        Ok(Classification {
            types: types.clone(),
            instances: target.instances.clone(),
            extents,
        })
    }

    /// Inverse image along an instance function `g: instances -> instances(source)`:
    /// `y ⊨ x` iff `g(y) ⊨_source x`, over the types of `source`.
    pub fn inverse_image_by_instances(instances: &NameSet, g: &NameMap, source: &Classification) -> Result<Self, Error> {
        g.check_function("instance map", instances, &source.instances)?;
        let extents = source
            .extents
            .iter()
            .map(|(x, ext)| {
                let pulled = instances
                    .iter()
                    .filter(|y| ext.contains(g.get(y).expect("checked total")))
                    .cloned()
                    .collect();
                (x.clone(), pulled)
            })
            .collect();
        Ok(Classification {
            types: source.types.clone(),
            instances: instances.clone(),
            extents,
        })
    }

    /// Disjoint union of two classifications. Names of `self` are tagged with
    /// the entity tag and names of `other` with the attribute tag, so the
    /// summands never share a type or an instance.
    pub fn parallel_sum(&self, other: &Classification) -> Classification {
        let tag_set = |s: &NameSet, tag: &str| s.iter().map(|n| n.tagged(tag)).collect::<NameSet>();
        let mut extents = BTreeMap::new();
        for (tag, c) in [(ENTITY_TAG, self), (ATTRIBUTE_TAG, other)] {
            for (t, ext) in &c.extents {
                extents.insert(t.tagged(tag), tag_set(ext, tag));
            }
        }
        let mut types = tag_set(&self.types, ENTITY_TAG);
        types.extend(tag_set(&other.types, ATTRIBUTE_TAG));
        let mut instances = tag_set(&self.instances, ENTITY_TAG);
        instances.extend(tag_set(&other.instances, ATTRIBUTE_TAG));
        Classification {
            types,
            instances,
            extents,
        }
    }
}

/// A pair of contravariant maps between classifications `source ⇄ target`:
/// a type map forward `types(source) -> types(target)` and an instance map
/// backward `instances(target) -> instances(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infomorphism {
    pub source: Classification,
    pub target: Classification,
    pub type_map: NameMap,
    pub instance_map: NameMap,
}

/// The two factorizations of an infomorphism through the inverse-image
/// classifications over `(types(source), instances(target))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfomorphismFactorization {
    /// Inverse image of the target along the type map.
    pub midpoint: Classification,
    /// Inverse image of the source along the instance map.
    pub midpoint_alt: Classification,
    /// `⟨1, g⟩ : source ⇄ midpoint`.
    pub instance_leg: Infomorphism,
    /// `⟨f, 1⟩ : midpoint ⇄ target`.
    pub type_leg: Infomorphism,
}

impl Infomorphism {
    pub fn new(source: Classification, target: Classification, type_map: NameMap, instance_map: NameMap) -> Self {
        Infomorphism {
            source,
            target,
            type_map,
            instance_map,
        }
    }

    pub fn identity(c: &Classification) -> Self {
        Infomorphism {
            source: c.clone(),
            target: c.clone(),
            type_map: NameMap::identity(c.types()),
            instance_map: NameMap::identity(c.instances()),
        }
    }

    fn check_maps(&self) -> Result<(), Error> {
        self.type_map
            .check_function("type map", self.source.types(), self.target.types())?;
        self.instance_map
            .check_function("instance map", self.target.instances(), self.source.instances())
    }

    /// Decides `g(y) ⊨_source x  iff  y ⊨_target f(x)` for every
    /// `(x, y) ∈ types(source) × instances(target)`, returning every
    /// violating `(x, y)`.
    pub fn check(&self) -> Result<Verdict<(Name, Name)>, Error> {
        self.check_maps()?;
        let mut violations = Vec::new();
        for x in self.source.types() {
            let fx = &self.type_map.get(x).expect("checked total");
            for y in self.target.instances() {
                let gy = self.instance_map.get(y).expect("checked total");
                if self.source.holds(gy, x) != self.target.holds(y, fx) {
                    violations.push((x.clone(), y.clone()));
                }
            }
        }
        Ok(Verdict::from_violations(violations))
    }

    /// `self` followed by `next`, for `self: C3 ⇄ C2` and `next: C2 ⇄ C1`.
    pub fn compose(&self, next: &Infomorphism) -> Result<Infomorphism, Error> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch(
                "target of the first infomorphism differs from the source of the second".into(),
            ));
        }
        Ok(Infomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            type_map: self.type_map.then(&next.type_map),
            instance_map: next.instance_map.then(&self.instance_map),
        })
    }

    /// Factors a valid infomorphism `⟨f, g⟩` as `⟨1, g⟩` followed by `⟨f, 1⟩`
    /// through `f⁻¹(target)`, and also builds `g⁻¹(source)`, which must be the
    /// same classification.
    pub fn factorize(&self) -> Result<InfomorphismFactorization, Error> {
        let verdict = self.check()?;
        if !verdict.is_ok() {
            return Err(Error::InvalidInfomorphism {
                violations: verdict.violations().len(),
            });
        }
        let midpoint = Classification::inverse_image_by_types(self.source.types(), &self.type_map, &self.target)?;
        let midpoint_alt =
            Classification::inverse_image_by_instances(self.target.instances(), &self.instance_map, &self.source)?;
        let instance_leg = Infomorphism {
            source: self.source.clone(),
            target: midpoint.clone(),
            type_map: NameMap::identity(self.source.types()),
            instance_map: self.instance_map.clone(),
        };
        let type_leg = Infomorphism {
            source: midpoint.clone(),
            target: self.target.clone(),
            type_map: self.type_map.clone(),
            instance_map: NameMap::identity(self.target.instances()),
        };
        if midpoint != midpoint_alt {
            return Err(Error::InvalidInfomorphism {
                violations: midpoint
                    .incidence()
                    .symmetric_difference(&midpoint_alt.incidence())
                    .count(),
            });
        }
        Ok(InfomorphismFactorization {
            midpoint,
            midpoint_alt,
            instance_leg,
            type_leg,
        })
    }
}
