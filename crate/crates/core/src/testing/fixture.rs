//! A small employee/department/project model.
//!
//! `works_on` is many-to-many, so it is an entity type `Act` (activity) with
//! four attributes, two of which (`employee`, `project`) are foreign keys.
//! `works_for` is many-to-one and becomes the `dept` attribute of `Emp`.
//! `Emp`, `Dept` and `Proj` are both entity types and sorts.
//!
//! | type | key | tuple |
//! |------|-----|-------|
//! | Emp  | e1  | name: Alice, id: 7, dept: d1 |
//! | Dept | d1  | name: Research, id: 3, location: Denver |
//! | Proj | p1  | name: Apollo, id: 12, budget: 5000 |
//! | Act  | a1  | entry_date: 2013-01-01, job_descr: design, employee: e1, project: p1 |

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::classification::Classification;
use crate::list::IndexedList;
use crate::name::{name_set, Name, NameMap, NameSet};
use crate::schema::{Schema, Universe};
use crate::structure::{Structure, StructureMorphism};

pub const ENTITY_TYPES: [&str; 4] = ["Emp", "Dept", "Proj", "Act"];
pub const SORTS: [&str; 6] = ["Str", "Nat", "Date", "Emp", "Dept", "Proj"];
pub const KEYS: [&str; 4] = ["e1", "d1", "p1", "a1"];

fn signatures() -> BTreeMap<Name, IndexedList> {
    [
        ("Emp", IndexedList::from_pairs([("name", "Str"), ("id", "Nat"), ("dept", "Dept")])),
        ("Dept", IndexedList::from_pairs([("name", "Str"), ("id", "Nat"), ("location", "Str")])),
        ("Proj", IndexedList::from_pairs([("name", "Str"), ("id", "Nat"), ("budget", "Nat")])),
        (
            "Act",
            IndexedList::from_pairs([
                ("entry_date", "Date"),
                ("job_descr", "Str"),
                ("employee", "Emp"),
                ("project", "Proj"),
            ]),
        ),
    ]
    .into_iter()
    .map(|(r, s)| (Name::from(r), s))
    .collect()
}

fn tuples() -> BTreeMap<Name, IndexedList> {
    [
        ("e1", IndexedList::from_pairs([("name", "Alice"), ("id", "7"), ("dept", "d1")])),
        ("d1", IndexedList::from_pairs([("name", "Research"), ("id", "3"), ("location", "Denver")])),
        ("p1", IndexedList::from_pairs([("name", "Apollo"), ("id", "12"), ("budget", "5000")])),
        (
            "a1",
            IndexedList::from_pairs([
                ("entry_date", "2013-01-01"),
                ("job_descr", "design"),
                ("employee", "e1"),
                ("project", "p1"),
            ]),
        ),
    ]
    .into_iter()
    .map(|(k, t)| (Name::from(k), t))
    .collect()
}

fn attr_incidence() -> BTreeSet<(Name, Name)> {
    let typed: [(&str, &[&str]); 6] = [
        ("Str", &["Alice", "Research", "Denver", "Apollo", "design"]),
        ("Nat", &["7", "3", "12", "5000"]),
        ("Date", &["2013-01-01"]),
        ("Emp", &["e1"]),
        ("Dept", &["d1"]),
        ("Proj", &["p1"]),
    ];
    typed
        .iter()
        .flat_map(|(x, ys)| ys.iter().map(move |y| (Name::from(*x), Name::from(*y))))
        .collect()
}

fn values() -> NameSet {
    attr_incidence().into_iter().map(|(_, y)| y).collect()
}

fn assemble(
    keys: NameSet,
    values: NameSet,
    ent_incidence: Vec<(Name, Name)>,
    attr_incidence: BTreeSet<(Name, Name)>,
    tuples: BTreeMap<Name, IndexedList>,
) -> Structure {
    let ent = Classification::new(name_set(ENTITY_TYPES), keys.clone(), ent_incidence).expect("fixture entity classification");
    let attr = Classification::new(name_set(SORTS), values.clone(), attr_incidence).expect("fixture attribute classification");
    Structure::new(
        ent,
        attr,
        Schema::new(name_set(ENTITY_TYPES), name_set(SORTS), signatures()),
        Universe::new(keys, values, tuples),
    )
}

fn ent_incidence() -> Vec<(Name, Name)> {
    ENTITY_TYPES
        .iter()
        .zip(KEYS)
        .map(|(r, k)| (Name::from(*r), Name::from(k)))
        .collect()
}

/// The employee/department/project model.
pub fn works_on() -> Structure {
    assemble(name_set(KEYS), values(), ent_incidence(), attr_incidence(), tuples())
}

/// The fixture with its attribute incidence edited by `edit`.
pub fn with_attr_incidence(edit: impl FnOnce(&mut BTreeSet<(Name, Name)>)) -> Structure {
    with_values_and_attr_incidence::<[&str; 0]>([], edit)
}

/// The fixture with extra values and an edited attribute incidence.
pub fn with_values_and_attr_incidence<I>(extra_values: I, edit: impl FnOnce(&mut BTreeSet<(Name, Name)>)) -> Structure
where
    I: IntoIterator,
    I::Item: Into<Name>,
{
    let mut incidence = attr_incidence();
    edit(&mut incidence);
    let mut vals = values();
    vals.extend(extra_values.into_iter().map(Into::into));
    assemble(name_set(KEYS), vals, ent_incidence(), incidence, tuples())
}

/// The fixture plus a key `e2` that carries e1's tuple but is of no type.
pub fn with_doppelganger() -> Structure {
    let mut keys = name_set(KEYS);
    keys.insert("e2".into());
    let mut tups = tuples();
    let e1 = tups["e1"].clone();
    tups.insert("e2".into(), e1);
    assemble(keys, values(), ent_incidence(), attr_incidence(), tups)
}

/// The fixture with the value `Alice` renamed to `A`, and the morphism
/// `⟨1, 1, 1, g⟩` from the renamed copy to the fixture with `g(Alice) = A`.
pub fn renaming_morphism() -> (Structure, StructureMorphism) {
    let target = works_on();
    let g: NameMap = target
        .values()
        .iter()
        .map(|y| (y.clone(), if y == "Alice" { Name::from("A") } else { y.clone() }))
        .collect();
    let renamed_incidence: BTreeSet<(Name, Name)> = attr_incidence()
        .into_iter()
        .map(|(x, y)| (x, g.get(&y).expect("total").clone()))
        .collect();
    let renamed_tuples = tuples()
        .into_iter()
        .map(|(k, t)| (k, t.sum_along(&g).expect("total")))
        .collect();
    let source = assemble(name_set(KEYS), g.image(), ent_incidence(), renamed_incidence, renamed_tuples);
    let phi = StructureMorphism::new(
        source.clone(),
        target.clone(),
        NameMap::identity(target.entity_types()),
        NameMap::identity(target.keys()),
        NameMap::identity(target.sorts()),
        g,
    );
    (source, phi)
}
