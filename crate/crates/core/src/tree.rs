//! Edge-labelled directed trees with a distinguished start and end vertex.
//!
//! A [`SigmaTree`] is an immutable value. Vertices are the dense indices
//! `0..vertex_count()` and edges are indices into [`SigmaTree::edges`]; both
//! are local to one tree, so two trees are only ever compared through
//! [`canonical_form`](crate::canonical::canonical_form).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Characters that cannot appear in a letter because the term grammar uses them.
const RESERVED: &[char] = &['(', ')', '^', '+', '*', '"', '\\'];

/// A generator of the free object; labels edges of a tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Result<Self, TreeError> {
        let reserved = name
            .chars()
            .any(|c| c.is_whitespace() || RESERVED.contains(&c));
        if name.is_empty() || reserved || name == "1" {
            return Err(TreeError::InvalidLabel(name.to_string()));
        }
        Ok(Letter(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Letter {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::new(s)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub label: Letter,
}

impl Edge {
    pub fn new(source: VertexId, target: VertexId, label: Letter) -> Self {
        Edge {
            source,
            target,
            label,
        }
    }
}

/// Orientation of an edge as seen from one of its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The edge starts at the vertex.
    Out,
    /// The edge ends at the vertex.
    In,
}

/// Unvalidated tree data with arbitrary vertex ids, as found in tree files.
///
/// Field order is significant: it fixes the serialized layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTree {
    pub vertices: Vec<u64>,
    pub edges: Vec<(u64, u64, String)>,
    pub start: u64,
    pub end: u64,
}

/// A finite edge-labelled directed tree with a directed path from `start` to `end`.
#[derive(Clone)]
pub struct SigmaTree {
    edges: Vec<Edge>,
    start: VertexId,
    end: VertexId,
    incidence: Vec<Vec<EdgeId>>,
}

/// A subtree together with the positions its vertices and edges had in the parent tree.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub tree: SigmaTree,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
}

impl SigmaTree {
    /// Builds a tree on vertices `0..vertex_count`, checking every invariant.
    pub fn new(
        vertex_count: usize,
        edges: Vec<Edge>,
        start: VertexId,
        end: VertexId,
    ) -> Result<Self, TreeError> {
        if vertex_count == 0 {
            return Err(TreeError::NotATree("no vertices"));
        }
        for v in [start, end]
            .into_iter()
            .chain(edges.iter().flat_map(|e| [e.source, e.target]))
        {
            if v >= vertex_count {
                return Err(TreeError::DanglingEndpoint(v as u64));
            }
        }
        if edges.iter().any(|e| e.source == e.target) {
            return Err(TreeError::NotATree("self-loop"));
        }
        if edges.len() + 1 != vertex_count {
            return Err(if edges.len() + 1 > vertex_count {
                TreeError::NotATree("cycle")
            } else {
                TreeError::NotATree("disconnected")
            });
        }
        let tree = Self::assemble(vertex_count, edges, start, end);
        let reached = tree.component(start, &[]);
        if reached.iter().any(|r| !r) {
            return Err(TreeError::NotATree("disconnected"));
        }
        if tree.directed_path(start, end).is_none() {
            return Err(TreeError::NoTrunkPath);
        }
        Ok(tree)
    }

    /// Validates raw data with opaque vertex ids, renumbering them in increasing order.
    pub fn from_raw(raw: &RawTree) -> Result<Self, TreeError> {
        let mut index = BTreeMap::new();
        for &v in &raw.vertices {
            if index.insert(v, 0).is_some() {
                return Err(TreeError::DuplicateVertex(v));
            }
        }
        for (i, slot) in index.values_mut().enumerate() {
            *slot = i;
        }
        let lookup = |v: u64| index.get(&v).copied().ok_or(TreeError::DanglingEndpoint(v));
        let edges = raw
            .edges
            .iter()
            .map(|(s, t, l)| Ok(Edge::new(lookup(*s)?, lookup(*t)?, Letter::new(l)?)))
            .collect::<Result<Vec<_>, TreeError>>()?;
        SigmaTree::new(index.len(), edges, lookup(raw.start)?, lookup(raw.end)?)
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            vertices: (0..self.vertex_count() as u64).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.source as u64, e.target as u64, e.label.to_string()))
                .collect(),
            start: self.start as u64,
            end: self.end as u64,
        }
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn assemble(
        vertex_count: usize,
        edges: Vec<Edge>,
        start: VertexId,
        end: VertexId,
    ) -> Self {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.source].push(i);
            incidence[e.target].push(i);
        }
        SigmaTree {
            edges,
            start,
            end,
            incidence,
        }
    }

    /// The one-vertex tree; the identity of every monoid in this crate.
    pub fn trivial() -> Self {
        Self::assemble(1, Vec::new(), 0, 0)
    }

    /// The base tree of a letter: a single edge from start to end.
    pub fn base(letter: Letter) -> Self {
        Self::assemble(2, vec![Edge::new(0, 1, letter)], 0, 1)
    }

    /// The trunk-only tree spelling `word`.
    pub fn word(word: &[Letter]) -> Self {
        let edges = word
            .iter()
            .enumerate()
            .map(|(i, l)| Edge::new(i, i + 1, l.clone()))
            .collect();
        Self::assemble(word.len() + 1, edges, 0, word.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn is_trivial(&self) -> bool {
        self.vertex_count() == 1
    }

    pub fn is_idempotent(&self) -> bool {
        self.start == self.end
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let edge = &self.edges[e];
        if edge.source == v {
            edge.target
        } else {
            edge.source
        }
    }

    /// Orientation of `e` relative to its endpoint `v`.
    pub fn direction_at(&self, e: EdgeId, v: VertexId) -> Direction {
        if self.edges[e].source == v {
            Direction::Out
        } else {
            Direction::In
        }
    }

    /// Vertices reachable from `from` without crossing any edge in `blocked`.
    pub fn component(&self, from: VertexId, blocked: &[EdgeId]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                if blocked.contains(&e) {
                    continue;
                }
                let w = self.opposite(e, v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// The unique undirected path from `u` to `v`, as a sequence of edges.
    pub fn path(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let mut via = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &e in &self.incidence[x] {
                let y = self.opposite(e, x);
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut x = v;
        while let Some(e) = via[x] {
            path.push(e);
            x = self.opposite(e, x);
        }
        path.reverse();
        path
    }

    /// The path from `u` to `v` if every edge on it points from `u` towards `v`.
    pub fn directed_path(&self, u: VertexId, v: VertexId) -> Option<Vec<EdgeId>> {
        let path = self.path(u, v);
        let mut at = u;
        for &e in &path {
            if self.edges[e].source != at {
                return None;
            }
            at = self.edges[e].target;
        }
        Some(path)
    }

    /// The trunk: edges of the directed path from start to end, in order.
    pub fn trunk(&self) -> Vec<EdgeId> {
        self.path(self.start, self.end)
    }

    /// Trunk vertices `v0 = start, ..., vn = end`.
    pub fn trunk_vertices(&self) -> Vec<VertexId> {
        let mut out = vec![self.start];
        out.extend(self.trunk().into_iter().map(|e| self.edges[e].target));
        out
    }

    pub fn trunk_labels(&self) -> Vec<Letter> {
        self.trunk()
            .into_iter()
            .map(|e| self.edges[e].label.clone())
            .collect()
    }

    pub fn trunk_edge_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.edge_count()];
        for e in self.trunk() {
            mask[e] = true;
        }
        mask
    }

    /// The same labelled graph with start `u` and end `v`.
    pub fn restrict(&self, u: VertexId, v: VertexId) -> Result<SigmaTree, TreeError> {
        for x in [u, v] {
            if x >= self.vertex_count() {
                return Err(TreeError::DanglingEndpoint(x as u64));
            }
        }
        if self.directed_path(u, v).is_none() {
            return Err(TreeError::NoPath { from: u, to: v });
        }
        let mut out = self.clone();
        out.start = u;
        out.end = v;
        Ok(out)
    }

    /// Moves the start vertex to `u`, keeping the end.
    pub fn restrict_start(&self, u: VertexId) -> Result<SigmaTree, TreeError> {
        self.restrict(u, self.end)
    }

    /// Moves the end vertex to `v`, keeping the start.
    pub fn restrict_end(&self, v: VertexId) -> Result<SigmaTree, TreeError> {
        self.restrict(self.start, v)
    }

    /// The largest subtree avoiding the given non-trunk vertices and edges.
    pub fn remove(&self, vertices: &[VertexId], edges: &[EdgeId]) -> Result<SigmaTree, TreeError> {
        Ok(self.remove_embedded(vertices, edges)?.tree)
    }

    /// Like [`remove`](Self::remove), also reporting where each survivor came from.
    pub fn remove_embedded(
        &self,
        vertices: &[VertexId],
        edges: &[EdgeId],
    ) -> Result<Embedded, TreeError> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(TreeError::DanglingEndpoint(v as u64));
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= self.edge_count()) {
            return Err(TreeError::DanglingEndpoint(e as u64));
        }
        let trunk = self.trunk();
        let trunk_vertices = self.trunk_vertices();
        if edges.iter().any(|e| trunk.contains(e))
            || vertices.iter().any(|v| trunk_vertices.contains(v))
        {
            return Err(TreeError::TrunkElementInS);
        }
        let mut blocked: Vec<EdgeId> = edges.to_vec();
        for &v in vertices {
            blocked.extend_from_slice(&self.incidence[v]);
        }
        let keep = self.component(self.start, &blocked);
        Ok(self.induced(&keep))
    }

    /// The subtree on the vertices flagged in `keep`, which must be connected
    /// and contain start and end.
    pub(crate) fn induced(&self, keep: &[bool]) -> Embedded {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        let mut vertex_origin = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                new_id[v] = vertex_origin.len();
                vertex_origin.push(v);
            }
        }
        let mut edges = Vec::new();
        let mut edge_origin = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep[e.source] && keep[e.target] {
                edges.push(Edge::new(
                    new_id[e.source],
                    new_id[e.target],
                    e.label.clone(),
                ));
                edge_origin.push(i);
            }
        }
        let tree = Self::assemble(
            vertex_origin.len(),
            edges,
            new_id[self.start],
            new_id[self.end],
        );
        Embedded {
            tree,
            vertex_origin,
            edge_origin,
        }
    }

    /// The idempotent tree at `v` made of everything reachable from `v`
    /// without crossing an edge in `blocked`.
    pub fn cluster(&self, v: VertexId, blocked: &[EdgeId]) -> SigmaTree {
        let keep = self.component(v, blocked);
        let mut sub = self.clone();
        sub.start = v;
        sub.end = v;
        sub.induced(&keep).tree
    }

    /// Reverses every edge and swaps start and end; exchanges left and right adequacy.
    pub fn mirror(&self) -> SigmaTree {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.target, e.source, e.label.clone()))
            .collect();
        Self::assemble(self.vertex_count(), edges, self.end, self.start)
    }

    /// Every vertex is reachable from the start by a directed path.
    pub fn is_left_adequate(&self) -> bool {
        self.reachable(self.start, Direction::Out)
            .iter()
            .all(|&r| r)
    }

    /// Every vertex reaches the end by a directed path.
    pub fn is_right_adequate(&self) -> bool {
        self.reachable(self.end, Direction::In).iter().all(|&r| r)
    }

    fn reachable(&self, from: VertexId, along: Direction) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.incidence[v] {
                if self.direction_at(e, v) == along {
                    let w = self.opposite(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen
    }

    /// Largest distance (in edges, ignoring direction) from any vertex to the trunk.
    pub fn trunk_depth(&self) -> usize {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for v in self.trunk_vertices() {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                let w = self.opposite(e, v);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist.into_iter().max().unwrap_or(0)
    }
}

impl fmt::Debug for SigmaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaTree {{ {} -> {}; ", self.start, self.end)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}->{}", e.source, e.label, e.target)?;
        }
        f.write_str(" }")
    }
}
