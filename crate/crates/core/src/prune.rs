//! Pruning: computing the unique pruned retract of a tree.
//!
//! A tree is unpruned exactly when some non-trunk edge `e` at a vertex `v`,
//! pointing away from the trunk side, has a sibling `f` at `v` with the same
//! label and orientation such that the branch beyond `e` maps into the tree
//! with `e` landing on `f`. That map extends by the identity to an
//! endomorphism which, iterated, pushes the whole branch out of itself; so the
//! tree without the branch is a retract. Conversely the first edge outside the
//! image of a non-identity retraction is such an `e`.
//!
//! Whether a branch maps somewhere is decided by a memoized simulation over
//! (branch vertex, image vertex) pairs. [`oracle_prune`] is an independent
//! brute-force route through endomorphism enumeration.

use std::ops::ControlFlow;

use crate::canonical::branch_code;
use crate::error::OpError;
use crate::morphism::{for_each_morphism, same_kind, TreeMorphism};
use crate::tree::{EdgeId, SigmaTree, VertexId};

/// Default edge bound for [`oracle_prune`].
pub const ORACLE_EDGE_BOUND: usize = 8;

/// One branch absorption.
#[derive(Debug, Clone)]
pub struct FoldStep {
    pub anchor_vertex: VertexId,
    pub absorbed_edge: EdgeId,
    pub absorbing_edge: EdgeId,
    /// Retraction of the tree being folded whose image omits the absorbed branch.
    pub witness: TreeMorphism,
}

/// A foldable pair of edges at an anchor, before the witness is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldCandidate {
    pub anchor_vertex: VertexId,
    pub absorbed_edge: EdgeId,
    pub absorbing_edge: EdgeId,
}

/// Memoized "branch maps into the tree" decisions for one tree.
struct Simulation<'a> {
    tree: &'a SigmaTree,
    // indexed by (edge, side, image vertex); 0 unknown, 1 yes, 2 no
    memo: Vec<u8>,
}

impl<'a> Simulation<'a> {
    fn new(tree: &'a SigmaTree) -> Self {
        Simulation {
            tree,
            memo: vec![0; tree.edge_count() * 2 * tree.vertex_count()],
        }
    }

    fn slot(&self, parent: EdgeId, b: VertexId, x: VertexId) -> usize {
        let side = usize::from(self.tree.edge(parent).target == b);
        (parent * 2 + side) * self.tree.vertex_count() + x
    }

    /// Can the part of the tree beyond `parent`, seen from its endpoint `b`,
    /// be mapped into the tree with `b` sent to `x`?
    fn fits(&mut self, parent: EdgeId, b: VertexId, x: VertexId) -> bool {
        let slot = self.slot(parent, b, x);
        match self.memo[slot] {
            1 => return true,
            2 => return false,
            _ => {}
        }
        let tree = self.tree;
        let ok = tree
            .incident(b)
            .iter()
            .filter(|&&g| g != parent)
            .all(|&g| self.image_edge(g, b, x).is_some());
        self.memo[slot] = if ok { 1 } else { 2 };
        ok
    }

    /// An edge at `x` that can host edge `g` at `b` together with everything beyond it.
    fn image_edge(&mut self, g: EdgeId, b: VertexId, x: VertexId) -> Option<EdgeId> {
        let tree = self.tree;
        let c = tree.opposite(g, b);
        tree.incident(x)
            .iter()
            .copied()
            .find(|&h| same_kind(tree, g, b, tree, h, x) && self.fits(g, c, tree.opposite(h, x)))
    }

    /// Writes a map of the branch beyond `parent` (from `b`, sent to `x`) into the maps.
    fn extract(
        &mut self,
        parent: EdgeId,
        b: VertexId,
        x: VertexId,
        vmap: &mut [VertexId],
        emap: &mut [EdgeId],
    ) {
        let tree = self.tree;
        vmap[b] = x;
        for &g in tree.incident(b) {
            if g == parent {
                continue;
            }
            let h = self.image_edge(g, b, x).expect("branch was simulated");
            emap[g] = h;
            self.extract(g, tree.opposite(g, b), tree.opposite(h, x), vmap, emap);
        }
    }
}

/// For every non-trunk edge, the endpoint nearer the trunk.
fn anchors(tree: &SigmaTree) -> Vec<Option<VertexId>> {
    let mut anchor = vec![None; tree.edge_count()];
    let mut seen = vec![false; tree.vertex_count()];
    let mut stack = tree.trunk_vertices();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &e in tree.incident(v) {
            let w = tree.opposite(e, v);
            if !seen[w] {
                seen[w] = true;
                anchor[e] = Some(v);
                stack.push(w);
            }
        }
    }
    anchor
}

/// Every foldable (absorbed, absorbing) pair, in edge order.
pub fn fold_candidates(tree: &SigmaTree) -> Vec<FoldCandidate> {
    let mut sim = Simulation::new(tree);
    let mut out = Vec::new();
    for (e, anchor) in anchors(tree).into_iter().enumerate() {
        let Some(v) = anchor else { continue };
        let u = tree.opposite(e, v);
        for &f in tree.incident(v) {
            if f != e && same_kind(tree, e, v, tree, f, v) && sim.fits(e, u, tree.opposite(f, v)) {
                out.push(FoldCandidate {
                    anchor_vertex: v,
                    absorbed_edge: e,
                    absorbing_edge: f,
                });
            }
        }
    }
    out
}

/// A fold of `tree` if it has one; `None` exactly when `tree` is pruned.
///
/// The absorbed edge is the lowest-numbered foldable edge; among its possible
/// absorbing edges the one whose branch has the least canonical code wins.
pub fn find_fold(tree: &SigmaTree) -> Option<FoldStep> {
    let chosen = preferred(tree, &fold_candidates(tree))?;
    Some(build_step(tree, chosen).0)
}

pub fn is_pruned(tree: &SigmaTree) -> bool {
    let mut sim = Simulation::new(tree);
    for (e, anchor) in anchors(tree).into_iter().enumerate() {
        let Some(v) = anchor else { continue };
        let u = tree.opposite(e, v);
        for &f in tree.incident(v) {
            if f != e && same_kind(tree, e, v, tree, f, v) && sim.fits(e, u, tree.opposite(f, v)) {
                return false;
            }
        }
    }
    true
}

fn preferred(tree: &SigmaTree, candidates: &[FoldCandidate]) -> Option<FoldCandidate> {
    let first = candidates.first()?.absorbed_edge;
    candidates
        .iter()
        .filter(|c| c.absorbed_edge == first)
        .min_by_key(|c| branch_code(tree, c.anchor_vertex, c.absorbing_edge))
        .copied()
}

/// Builds the witness retraction for a candidate and the folded tree.
fn build_step(tree: &SigmaTree, c: FoldCandidate) -> (FoldStep, crate::tree::Embedded) {
    let (v, e, f) = (c.anchor_vertex, c.absorbed_edge, c.absorbing_edge);
    let u = tree.opposite(e, v);
    let outer = tree.component(u, &[e]);

    // one application of the endomorphism: identity off the branch
    let mut step_v: Vec<VertexId> = (0..tree.vertex_count()).collect();
    let mut step_e: Vec<EdgeId> = (0..tree.edge_count()).collect();
    step_e[e] = f;
    Simulation::new(tree).extract(e, u, tree.opposite(f, v), &mut step_v, &mut step_e);

    // iterate until everything has left the branch; an orbit trapped inside
    // would give a retraction fixing a branch vertex, which must then fix e
    let in_branch_edge = |g: EdgeId| {
        let edge = tree.edge(g);
        outer[edge.source] || outer[edge.target]
    };
    let vertex_map = (0..tree.vertex_count())
        .map(|mut x| {
            while outer[x] {
                x = step_v[x];
            }
            x
        })
        .collect();
    let edge_map = (0..tree.edge_count())
        .map(|mut g| {
            while in_branch_edge(g) {
                g = step_e[g];
            }
            g
        })
        .collect();
    let witness = TreeMorphism {
        domain: tree.clone(),
        codomain: tree.clone(),
        vertex_map,
        edge_map,
    };
    debug_assert!(witness.check().is_ok() && witness.is_idempotent());

    let keep: Vec<bool> = outer.iter().map(|&o| !o).collect();
    let folded = tree.induced(&keep);
    let step = FoldStep {
        anchor_vertex: v,
        absorbed_edge: e,
        absorbing_edge: f,
        witness,
    };
    (step, folded)
}

/// A pruning together with its fold sequence and the overall retraction.
#[derive(Debug, Clone)]
pub struct Pruning {
    pub tree: SigmaTree,
    /// Each step's indices refer to the tree produced by the previous step.
    pub steps: Vec<FoldStep>,
    /// Idempotent endomorphism of the input whose image is isomorphic to `tree`.
    pub retraction: TreeMorphism,
}

/// The pruned retract of `tree`.
pub fn prune(tree: &SigmaTree) -> SigmaTree {
    let mut current = tree.clone();
    while let Some(c) = preferred(&current, &fold_candidates(&current)) {
        current = build_step(&current, c).1.tree;
    }
    current
}

/// [`prune`] with the full trace.
pub fn prune_traced(tree: &SigmaTree) -> Pruning {
    prune_with(tree, |current, candidates| {
        let chosen = preferred(current, candidates).expect("non-empty");
        candidates
            .iter()
            .position(|c| *c == chosen)
            .expect("present")
    })
}

/// Prunes, letting `choose` pick which candidate fold to apply at every step.
///
/// The result is isomorphic to [`prune`] whatever `choose` returns.
pub fn prune_with(
    tree: &SigmaTree,
    mut choose: impl FnMut(&SigmaTree, &[FoldCandidate]) -> usize,
) -> Pruning {
    let mut current = tree.clone();
    let mut steps = Vec::new();
    // original -> current, and current -> original
    let mut project_v: Vec<VertexId> = (0..tree.vertex_count()).collect();
    let mut project_e: Vec<EdgeId> = (0..tree.edge_count()).collect();
    let mut origin_v = project_v.clone();
    let mut origin_e = project_e.clone();
    loop {
        let candidates = fold_candidates(&current);
        if candidates.is_empty() {
            break;
        }
        let chosen = candidates[choose(&current, &candidates)];
        let (step, folded) = build_step(&current, chosen);

        let mut new_v = vec![usize::MAX; current.vertex_count()];
        for (i, &o) in folded.vertex_origin.iter().enumerate() {
            new_v[o] = i;
        }
        let mut new_e = vec![usize::MAX; current.edge_count()];
        for (i, &o) in folded.edge_origin.iter().enumerate() {
            new_e[o] = i;
        }
        for p in project_v.iter_mut() {
            *p = new_v[step.witness.vertex_map[*p]];
        }
        for p in project_e.iter_mut() {
            *p = new_e[step.witness.edge_map[*p]];
        }
        origin_v = folded.vertex_origin.iter().map(|&o| origin_v[o]).collect();
        origin_e = folded.edge_origin.iter().map(|&o| origin_e[o]).collect();

        steps.push(step);
        current = folded.tree;
    }
    let retraction = TreeMorphism {
        domain: tree.clone(),
        codomain: tree.clone(),
        vertex_map: project_v.iter().map(|&p| origin_v[p]).collect(),
        edge_map: project_e.iter().map(|&p| origin_e[p]).collect(),
    };
    Pruning {
        tree: current,
        steps,
        retraction,
    }
}

/// Brute-force pruning: repeatedly replaces the tree by the image of any
/// non-identity idempotent endomorphism, found by exhaustive enumeration.
pub fn oracle_prune(tree: &SigmaTree, bound: usize) -> Result<SigmaTree, OpError> {
    if tree.edge_count() > bound {
        return Err(OpError::BoundExceeded {
            size: tree.edge_count(),
            bound,
        });
    }
    let mut current = tree.clone();
    loop {
        let found = for_each_morphism(&current, &current, |vmap, emap| {
            let idempotent =
                vmap.iter().all(|&v| vmap[v] == v) && emap.iter().all(|&e| emap[e] == e);
            let identity = vmap.iter().enumerate().all(|(i, &v)| i == v);
            if idempotent && !identity {
                ControlFlow::Break(vmap.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        match found {
            Some(vmap) => {
                let mut keep = vec![false; current.vertex_count()];
                for v in vmap {
                    keep[v] = true;
                }
                current = current.induced(&keep).tree;
            }
            None => return Ok(current),
        }
    }
}

impl std::fmt::Display for FoldStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t = &self.witness.domain;
        let show = |e: EdgeId| {
            let edge = t.edge(e);
            format!("{}-{}->{}", edge.source, edge.label, edge.target)
        };
        write!(
            f,
            "fold at {}: {} into {}",
            self.anchor_vertex,
            show(self.absorbed_edge),
            show(self.absorbing_edge)
        )
    }
}
