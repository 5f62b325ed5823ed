//! Opaque names and finite functions between name sets.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use crate::error::Error;

/// Tag prefix for the entity summand of a parallel sum.
pub const ENTITY_TAG: &str = "E:";
/// Tag prefix for the attribute summand of a parallel sum.
pub const ATTRIBUTE_TAG: &str = "A:";
/// Index adjoined to every signature and tuple by the key embedding.
pub const SELF_INDEX: &str = "⟐self";

/// An opaque name: a type, an instance, a sort, a value, a key or an index.
///
/// Names compare by their string contents, which fixes the canonical order
/// used by every set, map and report in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Name(String);

impl Name {
    pub fn new(s: impl Into<String>) -> Self {
        Name(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Prefixes the name with `tag`.
    pub fn tagged(&self, tag: &str) -> Name {
        let mut s = String::with_capacity(tag.len() + self.0.len());
        s.push_str(tag);
        s.push_str(&self.0);
        Name(s)
    }

    /// Strips one parallel-sum tag, if present.
    pub fn untagged(&self) -> &str {
        self.0
            .strip_prefix(ENTITY_TAG)
            .or_else(|| self.0.strip_prefix(ATTRIBUTE_TAG))
            .unwrap_or(&self.0)
    }

    /// True for names that collide with generated ones: anything carrying a
    /// parallel-sum tag, and the self index.
    pub fn is_reserved(&self) -> bool {
        self.0.starts_with(ENTITY_TAG) || self.0.starts_with(ATTRIBUTE_TAG) || self.0 == SELF_INDEX
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl core::ops::Deref for Name {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Name {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name(s.to_owned())
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(s)
    }
}

impl From<&Name> for Name {
    fn from(n: &Name) -> Self {
        n.clone()
    }
}

impl PartialEq<str> for Name {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Name {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

pub type NameSet = BTreeSet<Name>;

/// Builds a [`NameSet`] from anything name-like.
pub fn name_set<I, N>(names: I) -> NameSet
where
    I: IntoIterator<Item = N>,
    N: Into<Name>,
{
    names.into_iter().map(Into::into).collect()
}

/// A finite function between name sets, stored as its graph.
///
/// Totality and codomain membership are properties checked against explicit
/// carriers with [`NameMap::check_function`]; the map itself is just data.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NameMap(BTreeMap<Name, Name>);

impl NameMap {
    pub fn new() -> Self {
        NameMap(BTreeMap::new())
    }

    pub fn identity<'a>(domain: impl IntoIterator<Item = &'a Name>) -> Self {
        NameMap(domain.into_iter().map(|n| (n.clone(), n.clone())).collect())
    }

    pub fn from_pairs<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Name>,
        B: Into<Name>,
    {
        NameMap(pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect())
    }

    pub fn insert(&mut self, from: impl Into<Name>, to: impl Into<Name>) -> Option<Name> {
        self.0.insert(from.into(), to.into())
    }

    pub fn get(&self, from: &str) -> Option<&Name> {
        self.0.get(from)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.0.iter()
    }

    pub fn domain(&self) -> NameSet {
        self.0.keys().cloned().collect()
    }

    pub fn image(&self) -> NameSet {
        self.0.values().cloned().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.0.len()
    }

    /// Preimage of a single name.
    pub fn preimage(&self, to: &str) -> NameSet {
        self.0
            .iter()
            .filter(|(_, b)| b.as_str() == to)
            .map(|(a, _)| a.clone())
            .collect()
    }

    /// The composite "first `self`, then `next`". Names of the domain of
    /// `self` whose image is not in the domain of `next` are dropped.
    pub fn then(&self, next: &NameMap) -> NameMap {
        NameMap(
            self.0
                .iter()
                .filter_map(|(a, b)| next.get(b).map(|c| (a.clone(), c.clone())))
                .collect(),
        )
    }

    /// Checks that the map is a total function `domain -> codomain` and has
    /// no entries outside `domain`. `what` names the map in error reports.
    pub fn check_function(&self, what: &str, domain: &NameSet, codomain: &NameSet) -> Result<(), Error> {
        let missing: Vec<Name> = domain.iter().filter(|d| !self.0.contains_key(d.as_str())).cloned().collect();
        let stray: Vec<Name> = self.0.keys().filter(|a| !domain.contains(*a)).cloned().collect();
        let outside: Vec<Name> = self
            .0
            .iter()
            .filter(|(_, b)| !codomain.contains(*b))
            .map(|(a, _)| a.clone())
            .collect();
        if missing.is_empty() && stray.is_empty() && outside.is_empty() {
            Ok(())
        } else {
            Err(Error::PartialMap {
                map: what.into(),
                missing,
                stray,
                outside,
            })
        }
    }
}

impl fmt::Debug for NameMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl<A: Into<Name>, B: Into<Name>> FromIterator<(A, B)> for NameMap {
    fn from_iter<I: IntoIterator<Item = (A, B)>>(iter: I) -> Self {
        NameMap::from_pairs(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_reads_left_to_right() {
        let f = NameMap::from_pairs([("a", "x"), ("b", "y")]);
        let g = NameMap::from_pairs([("x", "1"), ("y", "1")]);
        assert_eq!(f.then(&g), NameMap::from_pairs([("a", "1"), ("b", "1")]));
        assert!(!f.then(&g).is_injective());
    }

    #[test]
    fn check_function_reports_every_defect() {
        let dom = name_set(["a", "b"]);
        let cod = name_set(["x"]);
        let f = NameMap::from_pairs([("a", "x"), ("c", "z")]);
        match f.check_function("f", &dom, &cod) {
            Err(Error::PartialMap { missing, stray, outside, .. }) => {
                assert_eq!(missing, ["b"]);
                assert_eq!(stray, ["c"]);
                assert_eq!(outside, ["c"]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(NameMap::identity(&dom).check_function("id", &dom, &dom).is_ok());
    }

    #[test]
    fn tags_and_reserved_names() {
        let n = Name::from("Emp");
        assert_eq!(n.tagged(ENTITY_TAG), "E:Emp");
        assert_eq!(n.tagged(ATTRIBUTE_TAG).untagged(), "Emp");
        assert!(n.tagged(ENTITY_TAG).is_reserved());
        assert!(Name::from(SELF_INDEX).is_reserved());
        assert!(!Name::from("Alice").is_reserved());
    }
}
