//! Indexed lists: signatures (lists of sorts) and tuples (lists of values).
//!
//! A list is a total assignment from a finite arity (a set of index names) to
//! target names. Two lists have the same arity when their index-name sets are
//! equal; equinumerous arities with different names are different arities.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::classification::Classification;
use crate::error::Error;
use crate::name::{Name, NameMap, NameSet};
use crate::verdict::Verdict;

/// Default ceiling on the number of tuples [`tuples_of`] will enumerate.
pub const DEFAULT_TUPLE_CAP: u128 = 1_000_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexedList {
    entries: BTreeMap<Name, Name>,
}

/// A list of sorts `⟨I, s⟩`.
pub type Signature = IndexedList;
/// A list of values `⟨J, t⟩`.
pub type Tuple = IndexedList;

impl IndexedList {
    pub fn new() -> Self {
        IndexedList::default()
    }

    pub fn from_pairs<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Name>,
        B: Into<Name>,
    {
        IndexedList {
            entries: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    pub fn insert(&mut self, index: impl Into<Name>, target: impl Into<Name>) -> Option<Name> {
        self.entries.insert(index.into(), target.into())
    }

    pub fn remove(&mut self, index: &str) -> Option<Name> {
        self.entries.remove(index)
    }

    pub fn get(&self, index: &str) -> Option<&Name> {
        self.entries.get(index)
    }

    pub fn arity(&self) -> NameSet {
        self.entries.keys().cloned().collect()
    }

    pub fn same_arity(&self, other: &IndexedList) -> bool {
        self.entries.len() == other.entries.len() && self.entries.keys().eq(other.entries.keys())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.entries.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &Name> {
        self.entries.keys()
    }

    pub fn values(&self) -> impl Iterator<Item = &Name> {
        self.entries.values()
    }

    /// Applies `f` to every entry, keeping the arity (the direct-image list
    /// map `Σ_f`). Fails if some entry has no image under `f`.
    pub fn sum_along(&self, f: &NameMap) -> Result<IndexedList, Error> {
        let mut missing = Vec::new();
        let mut entries = BTreeMap::new();
        for (i, v) in &self.entries {
            match f.get(v) {
                Some(w) => {
                    entries.insert(i.clone(), w.clone());
                }
                None => missing.push(v.clone()),
            }
        }
        if missing.is_empty() {
            Ok(IndexedList { entries })
        } else {
            missing.sort();
            missing.dedup();
            Err(Error::PartialMap {
                map: "list map".into(),
                missing,
                stray: Vec::new(),
                outside: Vec::new(),
            })
        }
    }

    /// Maps every entry through `f`, total by construction.
    pub fn map_targets(&self, mut f: impl FnMut(&Name) -> Name) -> IndexedList {
        IndexedList {
            entries: self.entries.iter().map(|(i, v)| (i.clone(), f(v))).collect(),
        }
    }
}

impl fmt::Debug for IndexedList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, (i, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{v}")?;
        }
        f.write_str(")")
    }
}

impl<A: Into<Name>, B: Into<Name>> FromIterator<(A, B)> for IndexedList {
    fn from_iter<I: IntoIterator<Item = (A, B)>>(iter: I) -> Self {
        IndexedList::from_pairs(iter)
    }
}

/// `tuple ⊨_List(A) signature`: same arity, and every value is of the sort at
/// its index. Arity mismatches answer `false`.
pub fn classify_tuple(attr: &Classification, signature: &Signature, tuple: &Tuple) -> bool {
    signature.same_arity(tuple)
        && signature
            .entries
            .iter()
            .zip(tuple.entries.values())
            .all(|((_, sort), value)| attr.holds(value, sort))
}

/// Indices of `signature` at which `tuple` fails to classify, assuming equal
/// arities. Indices missing from `tuple` are reported as well.
pub(crate) fn ill_typed_indices(attr: &Classification, signature: &Signature, tuple: &Tuple) -> Vec<Name> {
    signature
        .entries
        .iter()
        .filter(|(i, sort)| tuple.get(i).is_none_or(|value| !attr.holds(value, sort)))
        .map(|(i, _)| i.clone())
        .collect()
}

/// The set of every tuple classified by `signature`: the product of the sort
/// extents. Errors with [`Error::TooManyTuples`] above `cap` tuples.
pub fn tuples_of(attr: &Classification, signature: &Signature, cap: u128) -> Result<BTreeSet<Tuple>, Error> {
    let mut factors = Vec::with_capacity(signature.len());
    let mut count: u128 = 1;
    for (i, sort) in &signature.entries {
        let ext = attr.extent(sort)?;
        count = count.saturating_mul(ext.len() as u128);
        factors.push((i, ext));
    }
    if count > cap {
        return Err(Error::TooManyTuples { count, cap });
    }
    let mut out = BTreeSet::new();
    out.insert(IndexedList::new());
    for (i, ext) in factors {
        let mut next = BTreeSet::new();
        for partial in &out {
            for v in ext {
                let mut t = partial.clone();
                t.insert(i.clone(), v.clone());
                next.insert(t);
            }
        }
        out = next;
    }
    Ok(out)
}

/// An arity map `h: I' -> I` between signatures that should satisfy
/// `s(h(i')) = s'(i')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureMorphism {
    pub source: Signature,
    pub target: Signature,
    pub arity_map: NameMap,
}

impl SignatureMorphism {
    pub fn new(source: Signature, target: Signature, arity_map: NameMap) -> Self {
        SignatureMorphism {
            source,
            target,
            arity_map,
        }
    }

    pub fn identity(sig: &Signature) -> Self {
        SignatureMorphism {
            source: sig.clone(),
            target: sig.clone(),
            arity_map: NameMap::identity(sig.indices()),
        }
    }

    /// Source indices at which the sort is not preserved.
    pub fn check(&self) -> Result<Verdict<Name>, Error> {
        self.arity_map
            .check_function("arity map", &self.source.arity(), &self.target.arity())?;
        let violations = self
            .source
            .iter()
            .filter(|(i, sort)| {
                let j = self.arity_map.get(i).expect("checked total");
                self.target.get(j) != Some(*sort)
            })
            .map(|(i, _)| i.clone())
            .collect();
        Ok(Verdict::from_violations(violations))
    }

    /// Restricts a tuple of the target signature along the arity map:
    /// `i' ↦ t(h(i'))`.
    pub fn project_tuple(&self, attr: &Classification, tuple: &Tuple) -> Result<Tuple, Error> {
        let verdict = self.check()?;
        if !verdict.is_ok() {
            return Err(Error::IllTypedTuple(format!(
                "arity map does not preserve sorts at {:?}",
                verdict.violations()
            )));
        }
        if !classify_tuple(attr, &self.target, tuple) {
            return Err(Error::IllTypedTuple(format!(
                "{tuple:?} is not classified by {:?}",
                self.target
            )));
        }
        Ok(self
            .arity_map
            .iter()
            .map(|(i, j)| (i.clone(), tuple.get(j).expect("same arity").clone()))
            .collect())
    }
}
