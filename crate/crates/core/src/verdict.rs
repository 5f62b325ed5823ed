use alloc::vec::Vec;

/// Outcome of an exhaustive law check: either the law holds, or every
/// counterexample found, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<V> {
    Ok,
    Violated(Vec<V>),
}

impl<V: Ord> Verdict<V> {
    /// Sorts and deduplicates the violations; an empty list is `Ok`.
    pub fn from_violations(mut violations: Vec<V>) -> Self {
        if violations.is_empty() {
            return Verdict::Ok;
        }
        violations.sort();
        violations.dedup();
        Verdict::Violated(violations)
    }
}

impl<V> Verdict<V> {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn violations(&self) -> &[V] {
        match self {
            Verdict::Ok => &[],
            Verdict::Violated(v) => v,
        }
    }

    pub fn into_violations(self) -> Vec<V> {
        match self {
            Verdict::Ok => Vec::new(),
            Verdict::Violated(v) => v,
        }
    }
}
