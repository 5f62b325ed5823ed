//! Seeded generators of small random classifications, structures and
//! morphisms. Valid-by-construction generators build the second endpoint from
//! the first so that the defining laws hold; nothing here calls the checkers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classification::{Classification, Infomorphism};
use crate::list::{classify_tuple, tuples_of, IndexedList};
use crate::name::{Name, NameMap, NameSet};
use crate::schema::{Schema, SchemaMorphism, Universe, UniverseMorphism};
use crate::structure::{Structure, StructureMorphism};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const INDEX_POOL: [&str; 4] = ["a", "b", "c", "d"];
const ENUMERATION_CAP: u128 = 4_096;

fn names(prefix: &str, n: usize) -> Vec<Name> {
    (0..n).map(|i| Name::from(format!("{prefix}{i}"))).collect()
}

fn pick<'a, R: Rng>(rng: &mut R, set: &'a NameSet) -> Option<&'a Name> {
    if set.is_empty() {
        None
    } else {
        set.iter().nth(rng.gen_range(0..set.len()))
    }
}

fn random_incidence<R: Rng>(rng: &mut R, types: &[Name], instances: &[Name], density: f64) -> Vec<(Name, Name)> {
    let mut out = Vec::new();
    for x in types {
        for y in instances {
            if rng.gen_bool(density) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

fn sized_classification<R: Rng>(rng: &mut R, n_types: usize, n_instances: usize) -> Classification {
    let types = names("x", n_types);
    let instances = names("y", n_instances);
    let density = rng.gen_range(0.1..0.8);
    let incidence = random_incidence(rng, &types, &instances, density);
    Classification::new(types, instances, incidence).expect("generated names are declared")
}

/// A random classification with at most `max` types and `max` instances.
pub fn classification<R: Rng>(rng: &mut R, max: usize) -> Classification {
    let nt = rng.gen_range(0..=max);
    let ni = rng.gen_range(0..=max);
    sized_classification(rng, nt, ni)
}

fn random_map<R: Rng>(rng: &mut R, domain: &NameSet, codomain: &NameSet) -> NameMap {
    let cod: Vec<&Name> = codomain.iter().collect();
    domain
        .iter()
        .map(|d| (d.clone(), (*cod.choose(rng).expect("nonempty codomain")).clone()))
        .collect()
}

/// A pair of random classifications joined by random total maps. About half
/// of the time the maps are chosen so that the pair is an infomorphism.
pub fn infomorphism<R: Rng>(rng: &mut R, max: usize) -> Infomorphism {
    if rng.gen_bool(0.5) {
        return valid_infomorphism(rng, max);
    }
    let max = max.max(1);
    let (nx1, nx2) = (rng.gen_range(1..=max), rng.gen_range(0..=max));
    let (ny1, ny2) = (rng.gen_range(0..=max), rng.gen_range(1..=max));
    let c1 = sized_classification(rng, nx1, ny1);
    let c2 = sized_classification(rng, nx2, ny2);
    let f = random_map(rng, c2.types(), c1.types());
    let g = random_map(rng, c1.instances(), c2.instances());
    Infomorphism::new(c2, c1, f, g)
}

/// Splits each group of names into random blocks.
fn random_blocks<R: Rng, K: Ord>(rng: &mut R, groups: BTreeMap<K, Vec<Name>>) -> Vec<Vec<Name>> {
    let mut blocks = Vec::new();
    for (_, members) in groups {
        let mut local: Vec<Vec<Name>> = Vec::new();
        for m in members {
            if local.is_empty() || rng.gen_bool(0.6) {
                local.push(alloc::vec![m]);
            } else {
                let i = rng.gen_range(0..local.len());
                local[i].push(m);
            }
        }
        blocks.extend(local);
    }
    blocks
}

/// A random valid infomorphism `C₂ ⇄ C₁`, all carriers of size at most `max`.
pub fn valid_infomorphism<R: Rng>(rng: &mut R, max: usize) -> Infomorphism {
    let max = max.max(1);
    let nx1 = rng.gen_range(1..=max);
    let ny1 = rng.gen_range(0..=max);
    let c1 = sized_classification(rng, nx1, ny1);
    let x2: NameSet = names("u", rng.gen_range(0..=max)).into_iter().collect();
    let f = random_map(rng, &x2, c1.types());

    // Instances of C₁ with the same pulled-back row may share an image.
    let mut groups: BTreeMap<BTreeSet<Name>, Vec<Name>> = BTreeMap::new();
    for y1 in c1.instances() {
        let row: BTreeSet<Name> = x2.iter().filter(|x| c1.holds(y1, f.get(x).unwrap())).cloned().collect();
        groups.entry(row).or_default().push(y1.clone());
    }
    let blocks = random_blocks(rng, groups);
    let mut g = NameMap::new();
    let mut incidence = Vec::new();
    let mut y2 = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let name = Name::from(format!("w{i}"));
        for y1 in block {
            g.insert(y1.clone(), name.clone());
        }
        for x in &x2 {
            if c1.holds(&block[0], f.get(x).unwrap()) {
                incidence.push((x.clone(), name.clone()));
            }
        }
        y2.push(name);
    }
    let room = max.saturating_sub(y2.len());
    let extras = names("z", rng.gen_range(0..=room).max(usize::from(y2.is_empty())));
    let x2v: Vec<Name> = x2.iter().cloned().collect();
    incidence.extend(random_incidence(rng, &x2v, &extras, 0.4));
    y2.extend(extras);
    let c2 = Classification::new(x2, y2, incidence).expect("declared");
    Infomorphism::new(c2, c1, f, g)
}

/// A random tuple over arbitrary indices and values, ignoring sorts.
fn untyped_tuple<R: Rng>(rng: &mut R, values: &NameSet) -> IndexedList {
    let mut t = IndexedList::new();
    if values.is_empty() {
        return t;
    }
    for i in INDEX_POOL {
        if rng.gen_bool(0.4) {
            t.insert(i, pick(rng, values).unwrap().clone());
        }
    }
    t
}

fn random_signature<R: Rng>(rng: &mut R, sorts: &NameSet) -> IndexedList {
    let mut s = IndexedList::new();
    if sorts.is_empty() {
        return s;
    }
    let arity = rng.gen_range(0..=3);
    let mut pool = INDEX_POOL;
    pool.shuffle(rng);
    for i in &pool[..arity] {
        s.insert(*i, pick(rng, sorts).unwrap().clone());
    }
    s
}

/// A tuple classified by `sig` in `attr`, if any exists.
fn typed_tuple<R: Rng>(rng: &mut R, attr: &Classification, sig: &IndexedList) -> Option<IndexedList> {
    let all = tuples_of(attr, sig, ENUMERATION_CAP).ok()?;
    if all.is_empty() {
        None
    } else {
        all.into_iter().nth(rng.gen_range(0..all_len_hint(attr, sig)))
    }
}

fn all_len_hint(attr: &Classification, sig: &IndexedList) -> usize {
    sig.values().map(|s| attr.extent(s).map_or(0, |e| e.len())).product()
}

/// Classifies `key` under every type in `types` whose signature fits its
/// tuple, each with probability one half; `forced` is always included.
fn fitting_types<R: Rng>(
    rng: &mut R,
    schema_sigs: &BTreeMap<Name, IndexedList>,
    attr: &Classification,
    tuple: &IndexedList,
    forced: Option<&Name>,
) -> Vec<Name> {
    let mut out = Vec::new();
    for (r, sig) in schema_sigs {
        if Some(r) == forced || (classify_tuple(attr, sig, tuple) && rng.gen_bool(0.5)) {
            out.push(r.clone());
        }
    }
    out
}

/// A random valid structure: up to 4 sorts, 4 entity types (sometimes sharing
/// a name with a sort), 6 keys and 8 values (sometimes reusing key names).
/// Some keys duplicate an earlier tuple, so not every result is extensive.
pub fn structure<R: Rng>(rng: &mut R) -> Structure {
    let sorts: NameSet = names("s", rng.gen_range(1..=4)).into_iter().collect();
    let mut entity_types: NameSet = names("r", rng.gen_range(1..=3)).into_iter().collect();
    for s in &sorts {
        if rng.gen_bool(0.25) {
            entity_types.insert(s.clone());
        }
    }
    let keys: NameSet = names("k", rng.gen_range(0..=6)).into_iter().collect();
    let mut values: NameSet = names("v", rng.gen_range(0..=5)).into_iter().collect();
    for k in &keys {
        if rng.gen_bool(0.3) {
            values.insert(k.clone());
        }
    }
    let sv: Vec<Name> = sorts.iter().cloned().collect();
    let vv: Vec<Name> = values.iter().cloned().collect();
    let density = rng.gen_range(0.2..0.7);
    let attr = Classification::new(sorts.clone(), values.clone(), random_incidence(rng, &sv, &vv, density)).expect("declared");
    let signatures: BTreeMap<Name, IndexedList> = entity_types
        .iter()
        .map(|r| (r.clone(), random_signature(rng, &sorts)))
        .collect();

    let mut tuples: BTreeMap<Name, IndexedList> = BTreeMap::new();
    let mut incidence: Vec<(Name, Name)> = Vec::new();
    for k in &keys {
        let roll: f64 = rng.gen();
        let (tuple, forced) = if roll < 0.15 && !tuples.is_empty() {
            let i = rng.gen_range(0..tuples.len());
            (tuples.values().nth(i).unwrap().clone(), None)
        } else if roll < 0.85 {
            let r = pick(rng, &entity_types).unwrap().clone();
            match typed_tuple(rng, &attr, &signatures[&r]) {
                Some(t) => (t, Some(r)),
                None => (untyped_tuple(rng, &values), None),
            }
        } else {
            (untyped_tuple(rng, &values), None)
        };
        for r in fitting_types(rng, &signatures, &attr, &tuple, forced.as_ref()) {
            incidence.push((r, k.clone()));
        }
        tuples.insert(k.clone(), tuple);
    }
    let ent = Classification::new(entity_types.clone(), keys.clone(), incidence).expect("declared");
    Structure::new(
        ent,
        attr,
        Schema::new(entity_types, sorts, signatures),
        Universe::new(keys, values, tuples),
    )
}

/// A schema `S₂` and a valid schema morphism `S₂ ⇒ target`. Every target sort
/// has one or two preimages, and `σ₂` lifts the target signatures.
pub fn schema_morphism_into<R: Rng>(rng: &mut R, target: &Schema) -> SchemaMorphism {
    let mut sort_map = NameMap::new();
    let mut lifts: BTreeMap<Name, Vec<Name>> = BTreeMap::new();
    for x1 in target.sorts() {
        for j in 0..rng.gen_range(1..=2) {
            let x2 = Name::from(format!("{x1}~{j}"));
            sort_map.insert(x2.clone(), x1.clone());
            lifts.entry(x1.clone()).or_default().push(x2);
        }
    }
    let mut entity_map = NameMap::new();
    let mut signatures = BTreeMap::new();
    if !target.entity_types().is_empty() {
        for t in names("t", rng.gen_range(0..=4)) {
            let r1 = pick(rng, target.entity_types()).unwrap().clone();
            let sig1 = target.signature(&r1).expect("well-formed target");
            let sig2 = sig1.map_targets(|x1| lifts[x1].choose(rng).unwrap().clone());
            entity_map.insert(t.clone(), r1);
            signatures.insert(t, sig2);
        }
    }
    let source = Schema::new(entity_map.domain(), sort_map.domain(), signatures);
    SchemaMorphism::new(source, target.clone(), entity_map, sort_map)
}

/// A universe `U₁` and a valid universe morphism `source ⇐ U₁`. Every source
/// value has one or two preimages, and `τ₁` lifts the source tuples.
pub fn universe_morphism_into<R: Rng>(rng: &mut R, source: &Universe) -> UniverseMorphism {
    let mut value_map = NameMap::new();
    let mut lifts: BTreeMap<Name, Vec<Name>> = BTreeMap::new();
    for y2 in source.values() {
        for j in 0..rng.gen_range(1..=2) {
            let y1 = Name::from(format!("{y2}~{j}"));
            value_map.insert(y1.clone(), y2.clone());
            lifts.entry(y2.clone()).or_default().push(y1);
        }
    }
    let mut key_map = NameMap::new();
    let mut tuples = BTreeMap::new();
    if !source.keys().is_empty() {
        for c in names("c", rng.gen_range(0..=5)) {
            let k2 = pick(rng, source.keys()).unwrap().clone();
            let t2 = source.tuple(&k2).expect("well-formed source");
            tuples.insert(c.clone(), t2.map_targets(|y2| lifts[y2].choose(rng).unwrap().clone()));
            key_map.insert(c, k2);
        }
    }
    let target = Universe::new(key_map.domain(), value_map.domain(), tuples);
    UniverseMorphism::new(source.clone(), target, key_map, value_map)
}

/// A random valid structure morphism `M₂ ⇄ M₁`.
///
/// `M₁` is random; the schema side of `M₂` lifts `S₁`; the values and keys of
/// `M₂` are quotients of those of `M₁` (merging only indistinguishable
/// elements) plus a few unrelated extras.
pub fn structure_morphism<R: Rng>(rng: &mut R) -> StructureMorphism {
    let m1 = structure(rng);
    let schema_identity = rng.gen_bool(0.2);
    let sm = if schema_identity {
        SchemaMorphism::identity(m1.schema())
    } else {
        schema_morphism_into(rng, m1.schema())
    };
    structure_morphism_over(rng, m1, sm)
}

/// A random valid structure morphism into `m1` whose schema component is `sm`.
pub fn structure_morphism_over<R: Rng>(rng: &mut R, m1: Structure, sm: SchemaMorphism) -> StructureMorphism {
    let s2 = sm.source.clone();
    let (r, f) = (sm.entity_map, sm.sort_map);
    let x2v: Vec<Name> = s2.sorts().iter().cloned().collect();

    // Attribute side: g merges values with equal pulled-back rows.
    let mut groups: BTreeMap<BTreeSet<Name>, Vec<Name>> = BTreeMap::new();
    for y1 in m1.values() {
        let row: BTreeSet<Name> = s2
            .sorts()
            .iter()
            .filter(|x2| m1.attr().holds(y1, f.get(x2).unwrap()))
            .cloned()
            .collect();
        groups.entry(row).or_default().push(y1.clone());
    }
    let mut g = NameMap::new();
    let mut y2: NameSet = NameSet::new();
    let mut attr_incidence = Vec::new();
    for (i, block) in random_blocks(rng, groups).into_iter().enumerate() {
        let name = Name::from(format!("w{i}"));
        for x2 in s2.sorts() {
            if m1.attr().holds(&block[0], f.get(x2).unwrap()) {
                attr_incidence.push((x2.clone(), name.clone()));
            }
        }
        for y1 in block {
            g.insert(y1, name.clone());
        }
        y2.insert(name);
    }
    let extras = names("z", rng.gen_range(0..=2));
    attr_incidence.extend(random_incidence(rng, &x2v, &extras, 0.4));
    y2.extend(extras);
    let a2 = Classification::new(s2.sorts().clone(), y2.clone(), attr_incidence).expect("declared");

    // Universe side: k merges keys with equal image tuples and equal pulled-back rows.
    let mut kgroups: BTreeMap<(IndexedList, BTreeSet<Name>), Vec<Name>> = BTreeMap::new();
    for k1 in m1.keys() {
        let t2 = m1.universe().tuple(k1).unwrap().sum_along(&g).expect("g is total");
        let row: BTreeSet<Name> = s2
            .entity_types()
            .iter()
            .filter(|r2| m1.ent().holds(k1, r.get(r2).unwrap()))
            .cloned()
            .collect();
        kgroups.entry((t2, row)).or_default().push(k1.clone());
    }
    let mut k = NameMap::new();
    let mut k2: NameSet = NameSet::new();
    let mut tuples2 = BTreeMap::new();
    let mut ent_incidence = Vec::new();
    for (i, block) in random_blocks(rng, kgroups).into_iter().enumerate() {
        let name = Name::from(format!("q{i}"));
        let first = &block[0];
        tuples2.insert(name.clone(), m1.universe().tuple(first).unwrap().sum_along(&g).unwrap());
        for r2 in s2.entity_types() {
            if m1.ent().holds(first, r.get(r2).unwrap()) {
                ent_incidence.push((r2.clone(), name.clone()));
            }
        }
        for k1 in block {
            k.insert(k1, name.clone());
        }
        k2.insert(name);
    }
    for extra in names("n", rng.gen_range(0..=2)) {
        let forced = pick(rng, s2.entity_types()).cloned();
        let typed = forced
            .as_ref()
            .and_then(|r2| typed_tuple(rng, &a2, s2.signature(r2).unwrap()));
        let (tuple, forced) = match typed {
            Some(t) => (t, forced),
            None => (untyped_tuple(rng, &y2), None),
        };
        for r2 in fitting_types(rng, s2.signatures(), &a2, &tuple, forced.as_ref()) {
            ent_incidence.push((r2, extra.clone()));
        }
        tuples2.insert(extra.clone(), tuple);
        k2.insert(extra);
    }
    let e2 = Classification::new(s2.entity_types().clone(), k2.clone(), ent_incidence).expect("declared");
    let m2 = Structure::new(e2, a2, s2, Universe::new(k2, y2, tuples2));
    StructureMorphism::new(m2, m1, r, k, f, g)
}

/// A random valid structure morphism whose schema components are identities,
/// i.e. a morphism in the fiber over the schema of its target.
pub fn fiber_morphism_over_schema<R: Rng>(rng: &mut R, m1: Structure) -> StructureMorphism {
    let sm = SchemaMorphism::identity(m1.schema());
    structure_morphism_over(rng, m1, sm)
}
