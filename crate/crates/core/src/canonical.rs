//! Isomorphism-invariant string encodings of trees.
//!
//! The tree is rooted at its start vertex. Every vertex encodes as
//! `(` + an `E` marker if it is the end vertex + its sorted child encodings + `)`,
//! and every child as direction (`>` away from the parent, `<` towards it),
//! length-prefixed label, and the child vertex's encoding. Sorting siblings
//! makes the result independent of vertex and edge numbering.

use std::fmt;

use crate::tree::{Direction, EdgeId, SigmaTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(tree: &SigmaTree) -> CanonicalForm {
    CanonicalForm(encode_vertex(tree, tree.start(), None))
}

pub fn are_isomorphic(x: &SigmaTree, y: &SigmaTree) -> bool {
    x.edge_count() == y.edge_count() && canonical_form(x) == canonical_form(y)
}

/// Encoding of the branch that hangs off `v` through edge `e`, including `e`.
pub(crate) fn branch_code(tree: &SigmaTree, v: VertexId, e: EdgeId) -> String {
    let child = tree.opposite(e, v);
    let mut out = edge_prefix(tree, v, e);
    out.push_str(&encode_vertex(tree, child, Some(e)));
    out
}

fn edge_prefix(tree: &SigmaTree, v: VertexId, e: EdgeId) -> String {
    let dir = match tree.direction_at(e, v) {
        Direction::Out => '>',
        Direction::In => '<',
    };
    let label = tree.edge(e).label.as_str();
    format!("{dir}{}:{label}", label.len())
}

fn encode_vertex(tree: &SigmaTree, v: VertexId, parent: Option<EdgeId>) -> String {
    let mut children: Vec<String> = tree
        .incident(v)
        .iter()
        .filter(|&&e| Some(e) != parent)
        .map(|&e| branch_code(tree, v, e))
        .collect();
    children.sort_unstable();
    let mut out = String::from("(");
    if v == tree.end() {
        out.push('E');
    }
    for c in children {
        out.push_str(&c);
    }
    out.push(')');
    out
}
