//! Text exports: CSV tables, EAV lines, N-Triples and DOT graphs. Every
//! output is a deterministic function of its input.

use std::collections::BTreeSet;
use std::fmt::Write;

use fole_core::interpretation::{Relation, Table};
use fole_core::linearization::{LinQuad, OlogGraph};
use fole_core::list::IndexedList;
use fole_core::name::{Name, NameSet, SELF_INDEX};

fn csv_lines(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    if header.is_empty() {
        // A record with no fields has no CSV spelling beyond an empty line.
        return "\n".repeat(1 + rows.count());
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("names are UTF-8")
}

fn columns(signature: &IndexedList) -> Vec<&str> {
    let mut cols: Vec<&str> = signature.indices().map(Name::as_str).filter(|i| *i != SELF_INDEX).collect();
    if signature.get(SELF_INDEX).is_some() {
        cols.insert(0, SELF_INDEX);
    }
    cols
}

fn row(cols: &[&str], tuple: &IndexedList) -> Vec<String> {
    cols.iter()
        .map(|c| tuple.get(c).map(|v| v.untagged().to_string()).unwrap_or_default())
        .collect()
}

/// One row per key, ordered by key. Columns follow the index order, with
/// the self column of a key-embedded table first; summand tags are erased.
pub fn table_csv(table: &Table) -> String {
    let cols = columns(&table.signature);
    csv_lines(&cols, table.rows.values().map(|t| row(&cols, t)))
}

/// One row per distinct tuple, in tuple order.
pub fn relation_csv(relation: &Relation) -> String {
    let cols = columns(&relation.signature);
    csv_lines(&cols, relation.tuples.iter().map(|t| row(&cols, t)))
}

fn eav_field(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
}

/// `entityType key index sort value`, tab-separated, one quad per line.
/// Backslash, tab and line breaks inside names are backslash-escaped.
pub fn eav(quads: &BTreeSet<LinQuad>) -> String {
    let mut out = String::new();
    for q in quads {
        for (i, field) in [&q.entity_type, &q.key, &q.index, &q.sort, &q.value].into_iter().enumerate() {
            if i > 0 {
                out.push('\t');
            }
            eav_field(&mut out, field);
        }
        out.push('\n');
    }
    out
}

fn iri(s: &str) -> String {
    let mut out = String::new();
    for b in s.bytes() {
        match b {
            b'<' | b'>' | b'"' | b'{' | b'}' | b'|' | b'^' | b'`' | b'\\' | b'%' | b'#' | 0..=b' ' | 0x7f.. => {
                write!(out, "%{b:02X}").unwrap()
            }
            _ => out.push(b as char),
        }
    }
    out
}

fn literal(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// `<k> <r#i> object .` per quad, lines sorted and deduplicated. The object
/// is an IRI when the value is one of `keys` and a plain literal otherwise.
/// IRI components are percent-encoded, including `#` and `%`.
pub fn ntriples(quads: &BTreeSet<LinQuad>, keys: &NameSet) -> String {
    let lines: BTreeSet<String> = quads
        .iter()
        .map(|q| {
            let object = if keys.contains(&q.value) {
                format!("<{}>", iri(&q.value))
            } else {
                literal(&q.value)
            };
            format!("<{}> <{}#{}> {object} .\n", iri(&q.key), iri(&q.entity_type), iri(&q.index))
        })
        .collect();
    lines.into_iter().collect()
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The olog graph as a DOT digraph: nodes, then one labelled edge per slot.
pub fn dot(graph: &OlogGraph) -> String {
    let mut out = String::from("digraph olog {\n");
    for n in &graph.nodes {
        writeln!(out, "    {};", dot_id(n)).unwrap();
    }
    for e in &graph.edges {
        writeln!(out, "    {} -> {} [label={}];", dot_id(&e.source), dot_id(&e.target), dot_id(&e.index)).unwrap();
    }
    out.push_str("}\n");
    out
}
