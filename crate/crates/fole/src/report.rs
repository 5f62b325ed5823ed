//! Verdict reports: one line per violation in text form, or
//! `{"verdict": "ok"|"violated", "violations": [{"law", "names"}]}` as JSON.

use fole_core::fibration::FiberIssue;
use fole_core::schema::{ListLawViolation, ListMapIssue};
use fole_core::structure::{IntegrityReport, MorphismReport, StructureViolation};
use fole_core::{Error, Name, Verdict};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub law: String,
    pub names: Vec<String>,
}

impl Violation {
    pub fn new<I, N>(law: &str, names: I) -> Self
    where
        I: IntoIterator<Item = N>,
        N: ToString,
    {
        Violation {
            law: law.into(),
            names: names.into_iter().map(|n| n.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub verdict: &'static str,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        Report {
            verdict: if violations.is_empty() { "ok" } else { "violated" },
            violations,
        }
    }

    pub fn ok() -> Self {
        Report::from_violations(Vec::new())
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain strings serialize");
        s.push('\n');
        s
    }

    /// `ok`, or `violated` followed by `law: name, name` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::from(self.verdict);
        s.push('\n');
        for v in &self.violations {
            s.push_str(&v.law);
            s.push(':');
            for (i, n) in v.names.iter().enumerate() {
                s.push_str(if i == 0 { " " } else { ", " });
                s.push_str(n);
            }
            s.push('\n');
        }
        s
    }
}

fn list_map_issue(law: &str, issue: &ListMapIssue) -> Violation {
    match issue {
        ListMapIssue::Missing(n) => Violation::new(&format!("{law}-missing"), [n]),
        ListMapIssue::Stray(n) => Violation::new(&format!("{law}-stray"), [n]),
        ListMapIssue::OutsideCarrier { owner, index, target } => {
            Violation::new(&format!("{law}-outside"), [owner, index, target])
        }
    }
}

pub fn structure_violation(v: &StructureViolation) -> Violation {
    match v {
        StructureViolation::Schema(issue) => list_map_issue("signature", issue),
        StructureViolation::Universe(issue) => list_map_issue("tuple", issue),
        StructureViolation::Arity { entity_type, key } => Violation::new("arity", [entity_type, key]),
        StructureViolation::Sort { entity_type, key, index } => Violation::new("sort", [entity_type, key, index]),
    }
}

pub fn structure_report(verdict: &Verdict<StructureViolation>) -> Report {
    Report::from_violations(verdict.violations().iter().map(structure_violation).collect())
}

fn list_law<'a>(law: &'a str, verdict: &'a Verdict<ListLawViolation>) -> impl Iterator<Item = Violation> + 'a {
    verdict.violations().iter().map(move |v| Violation::new(law, [&v.at]))
}

fn pair_law<'a>(law: &'a str, verdict: &'a Verdict<(Name, Name)>) -> impl Iterator<Item = Violation> + 'a {
    verdict.violations().iter().map(move |(a, b)| Violation::new(law, [a, b]))
}

pub fn morphism_report(r: &MorphismReport) -> Report {
    let mut v: Vec<Violation> = list_law("schema", &r.schema).collect();
    v.extend(list_law("universe", &r.universe));
    v.extend(pair_law("entity", &r.entity));
    v.extend(pair_law("attribute", &r.attribute));
    Report::from_violations(v)
}

pub fn integrity_report(r: &IntegrityReport, overlap: &Verdict<(Name, Name)>) -> Report {
    let mut v: Vec<Violation> = r.carriers.iter().map(|c| Violation::new("carrier", [c])).collect();
    v.extend(r.entity.violations().iter().map(|i| {
        let mut x = list_map_issue("tuple", i);
        x.law = format!("entity-integrity:{}", x.law);
        x
    }));
    v.extend(r.domain.violations().iter().map(|d| {
        let mut x = structure_violation(d);
        x.law = format!("domain-integrity:{}", x.law);
        x
    }));
    v.extend(pair_law("referential", &r.referential));
    v.extend(pair_law("overlap", overlap));
    Report::from_violations(v)
}

pub fn fiber_report(verdict: &Verdict<FiberIssue>) -> Report {
    let v = verdict
        .violations()
        .iter()
        .map(|i| match i {
            FiberIssue::Unchecked(msg) => Violation::new("unchecked", [msg]),
            FiberIssue::Law(law) => Violation::new("law", [law]),
            FiberIssue::NotIdentity(component) => Violation::new("not-identity", [component]),
        })
        .collect();
    Report::from_violations(v)
}

/// A report for a library error that stands for a violated precondition.
pub fn error_report(e: &Error) -> Report {
    let v = match e {
        Error::NotUnifiedModel {
            sorts_not_types,
            types_not_sorts,
        } => sorts_not_types
            .iter()
            .map(|x| Violation::new("sort-not-entity-type", [x]))
            .chain(types_not_sorts.iter().map(|r| Violation::new("entity-type-not-sort", [r])))
            .collect(),
        Error::ReferentialViolation(pairs) => pairs.iter().map(|(t, y)| Violation::new("referential", [t, y])).collect(),
        Error::PartialMap {
            map,
            missing,
            stray,
            outside,
        } => missing
            .iter()
            .map(|n| Violation::new("undefined", [map.as_str(), n.as_str()]))
            .chain(stray.iter().map(|n| Violation::new("stray", [map.as_str(), n.as_str()])))
            .chain(outside.iter().map(|n| Violation::new("outside-codomain", [map.as_str(), n.as_str()])))
            .collect(),
        Error::CarrierMismatch(lines) => lines.iter().map(|l| Violation::new("carrier", [l])).collect(),
        other => vec![Violation::new("error", [other.to_string()])],
    };
    Report::from_violations(v)
}
