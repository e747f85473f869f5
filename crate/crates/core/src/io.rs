//! Edge-list parsing and serialization, JSON/TSV report rendering.

use std::fmt::Write as _;

use num::One;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::matrix::ExactMatrix;
use crate::poly::{Polynomial, SmithForm};
use crate::rational::{parse_rational, to_canonical, Rational};

pub const TOOL_NAME: &str = "nbwalk";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const UNDIRECTED_DIRECTIVE: &str = "%undirected";

/// Parses an edge list.
///
/// Each non-blank line is `src dst [weight]` (tab or space separated) or a
/// single label declaring a vertex. `#` starts a comment. The directive line
/// `%undirected` makes every listed arc also insert its reverse.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut undirected = false;
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('%') {
            if line == UNDIRECTED_DIRECTIVE {
                undirected = true;
                continue;
            }
            return Err(Error::Parse {
                line: line_no,
                message: format!("unknown directive {line:?}"),
            });
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let record = match fields.as_slice() {
            [v] => (line_no, v.to_string(), None, Rational::one()),
            [s, d] => (line_no, s.to_string(), Some(d.to_string()), Rational::one()),
            [s, d, w] => {
                let weight = parse_rational(w).ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("invalid weight {w:?}"),
                })?;
                (line_no, s.to_string(), Some(d.to_string()), weight)
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 1 to 3 fields, found {}", fields.len()),
                })
            }
        };
        records.push(record);
    }

    let mut builder = GraphBuilder::new();
    for (_, src, dst, weight) in records {
        builder.add_vertex(&src);
        if let Some(dst) = dst {
            builder.add_edge(&src, &dst, weight.clone())?;
            if undirected {
                builder.add_edge(&dst, &src, weight)?;
            }
        }
    }
    Ok(builder.build())
}

/// Canonical text form: every vertex declared in index order, then every edge
/// in `(src, dst)` order; unit weights are omitted.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for label in g.labels() {
        let _ = writeln!(out, "{label}");
    }
    for e in g.edges() {
        let (s, d) = (g.label(e.src), g.label(e.dst));
        if e.weight.is_one() {
            let _ = writeln!(out, "{s}\t{d}");
        } else {
            let _ = writeln!(out, "{s}\t{d}\t{}", to_canonical(&e.weight));
        }
    }
    out
}

/// Hex SHA-256 of the input bytes.
pub fn input_digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    hash.iter().fold(String::with_capacity(64), |mut acc, b| {
        let _ = write!(acc, "{b:02x}");
        acc
    })
}

pub fn serde_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_canonical(q))
}

pub fn serde_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&to_canonical(q))?;
    }
    seq.end()
}

pub fn serde_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&to_canonical(q)),
        None => s.serialize_none(),
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(to_canonical).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Ascending coefficient list.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl Serialize for SmithForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Form<'a> {
            rank: usize,
            invariant_polynomials: &'a [Polynomial],
            display: Vec<String>,
        }
        Form {
            rank: self.rank,
            invariant_polynomials: &self.invariant_polynomials,
            display: self.invariant_polynomials.iter().map(|p| p.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// Envelope written by every CLI command.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_digest: String,
    pub command: String,
    pub notes: Vec<String>,
    pub payload: T,
}

impl<T: Serialize> ReportDocument<T> {
    pub fn new(input: &[u8], command: impl Into<String>, payload: T) -> Self {
        Self {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            input_digest: input_digest(input),
            command: command.into(),
            notes: Vec::new(),
            payload,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_tsv(&self) -> String {
        render_tsv(&serde_json::to_value(self).expect("report serializes"))
    }
}

/// Flattens a JSON value to `path<TAB>value` lines; matrices become one line per row.
pub fn render_tsv(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, "", &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_owned()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(child, &join(k), out);
            }
        }
        Value::Array(items) => {
            if let Some(cells) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                let _ = writeln!(out, "{path}\t{}", cells.join("\t"));
            } else if items.iter().all(|r| {
                r.as_array()
                    .is_some_and(|row| row.iter().all(|c| scalar(c).is_some()))
            }) {
                let _ = writeln!(out, "{path}");
                for row in items {
                    let cells: Vec<String> = row
                        .as_array()
                        .expect("checked")
                        .iter()
                        .filter_map(scalar)
                        .collect();
                    let _ = writeln!(out, "\t{}", cells.join("\t"));
                }
            } else {
                for (i, child) in items.iter().enumerate() {
                    flatten(child, &join(&i.to_string()), out);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{path}\t{}", scalar(other).unwrap_or_default());
        }
    }
}
