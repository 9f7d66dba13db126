//! Tree records and DOT export.
//!
//! A tree record is one JSON object with the fields `vertices`, `edges`,
//! `start` and `end` in that order:
//!
//! ```text
//! {"vertices":[0,1,2],"edges":[[0,1,"a"],[1,2,"b"]],"start":0,"end":1}
//! ```
//!
//! Vertex ids in a record are arbitrary distinct integers; reading renumbers
//! them densely in increasing order.

use std::fmt::Write;

use crate::error::TreeError;
use crate::tree::{RawTree, SigmaTree};

/// Serializes `x` as a single-line record followed by a newline.
pub fn write_tree(x: &SigmaTree) -> String {
    let mut out = serde_json::to_string(&x.to_raw()).expect("records always serialize");
    out.push('\n');
    out
}

pub fn read_tree(text: &str) -> Result<SigmaTree, TreeError> {
    let raw: RawTree = serde_json::from_str(text).map_err(|e| TreeError::Format(e.to_string()))?;
    SigmaTree::from_raw(&raw)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Renders `x` as a Graphviz digraph. The start vertex is drawn as an arrow
/// and the end vertex as a double circle; when they coincide the vertex is a
/// double circle with a `start` label beside it.
pub fn to_dot(x: &SigmaTree) -> String {
    let mut out = String::from("digraph tree {\n");
    for v in 0..x.vertex_count() {
        let attrs = match (v == x.start(), v == x.end()) {
            (true, true) => " [shape=doublecircle, xlabel=\"start\"]",
            (true, false) => " [shape=rarrow]",
            (false, true) => " [shape=doublecircle]",
            (false, false) => " [shape=circle]",
        };
        writeln!(out, "  {v}{attrs};").expect("writing to a string");
    }
    for e in x.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            e.source,
            e.target,
            quote(e.label.as_str())
        )
        .expect("writing to a string");
    }
    out.push_str("}\n");
    out
}
