//! Structure-preserving maps between trees.

use std::fmt;
use std::ops::ControlFlow;

use crate::tree::{Direction, EdgeId, SigmaTree, VertexId};

/// A candidate map from `domain` to `codomain`; [`check`](Self::check) decides
/// whether it is a morphism.
#[derive(Debug, Clone)]
pub struct TreeMorphism {
    pub domain: SigmaTree,
    pub codomain: SigmaTree,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

/// The first condition a candidate map fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismViolation {
    VertexMapLength,
    EdgeMapLength,
    VertexOutOfRange(VertexId),
    EdgeOutOfRange(EdgeId),
    Source(EdgeId),
    Target(EdgeId),
    Label(EdgeId),
    Start,
    End,
    /// The trunk is not carried bijectively onto the codomain's trunk.
    Trunk,
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexMapLength => f.write_str("vertex map has the wrong length"),
            Self::EdgeMapLength => f.write_str("edge map has the wrong length"),
            Self::VertexOutOfRange(v) => write!(f, "vertex {v} is sent outside the codomain"),
            Self::EdgeOutOfRange(e) => write!(f, "edge {e} is sent outside the codomain"),
            Self::Source(e) => write!(f, "source of edge {e} is not preserved"),
            Self::Target(e) => write!(f, "target of edge {e} is not preserved"),
            Self::Label(e) => write!(f, "label of edge {e} is not preserved"),
            Self::Start => f.write_str("start vertex is not preserved"),
            Self::End => f.write_str("end vertex is not preserved"),
            Self::Trunk => f.write_str("trunk is not mapped onto the trunk"),
        }
    }
}

impl TreeMorphism {
    pub fn identity(tree: &SigmaTree) -> Self {
        TreeMorphism {
            domain: tree.clone(),
            codomain: tree.clone(),
            vertex_map: (0..tree.vertex_count()).collect(),
            edge_map: (0..tree.edge_count()).collect(),
        }
    }

    pub fn check(&self) -> Result<(), MorphismViolation> {
        let (x, y) = (&self.domain, &self.codomain);
        if self.vertex_map.len() != x.vertex_count() {
            return Err(MorphismViolation::VertexMapLength);
        }
        if self.edge_map.len() != x.edge_count() {
            return Err(MorphismViolation::EdgeMapLength);
        }
        if let Some(v) = (0..x.vertex_count()).find(|&v| self.vertex_map[v] >= y.vertex_count()) {
            return Err(MorphismViolation::VertexOutOfRange(v));
        }
        if let Some(e) = (0..x.edge_count()).find(|&e| self.edge_map[e] >= y.edge_count()) {
            return Err(MorphismViolation::EdgeOutOfRange(e));
        }
        for (i, e) in x.edges().iter().enumerate() {
            let image = y.edge(self.edge_map[i]);
            if self.vertex_map[e.source] != image.source {
                return Err(MorphismViolation::Source(i));
            }
            if self.vertex_map[e.target] != image.target {
                return Err(MorphismViolation::Target(i));
            }
            if e.label != image.label {
                return Err(MorphismViolation::Label(i));
            }
        }
        if self.vertex_map[x.start()] != y.start() {
            return Err(MorphismViolation::Start);
        }
        if self.vertex_map[x.end()] != y.end() {
            return Err(MorphismViolation::End);
        }
        let image: Vec<EdgeId> = x.trunk().into_iter().map(|e| self.edge_map[e]).collect();
        if image != y.trunk() {
            return Err(MorphismViolation::Trunk);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// An endomorphism that equals its own square.
    pub fn is_idempotent(&self) -> bool {
        self.vertex_map
            .iter()
            .all(|&v| self.vertex_map.get(v) == Some(&v))
            && self
                .edge_map
                .iter()
                .all(|&e| self.edge_map.get(e) == Some(&e))
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
            && self.edge_map.iter().enumerate().all(|(i, &e)| i == e)
    }

    /// The subtree of the codomain hit by this map.
    pub fn image(&self) -> SigmaTree {
        let mut keep = vec![false; self.codomain.vertex_count()];
        for &v in &self.vertex_map {
            keep[v] = true;
        }
        self.codomain.induced(&keep).tree
    }
}

/// Calls `visit` with every morphism from `x` to `y` until it breaks.
///
/// Vertex images are forced outwards from the start vertex, so the search only
/// branches on the choice of image edge at each step.
pub fn for_each_morphism<B>(
    x: &SigmaTree,
    y: &SigmaTree,
    mut visit: impl FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<B>,
) -> Option<B> {
    // (edge, endpoint already placed) in breadth-first order from the start
    let mut order = Vec::with_capacity(x.edge_count());
    let mut placed = vec![false; x.vertex_count()];
    placed[x.start()] = true;
    let mut frontier = vec![x.start()];
    while let Some(v) = frontier.pop() {
        for &e in x.incident(v) {
            let w = x.opposite(e, v);
            if !placed[w] {
                placed[w] = true;
                order.push((e, v));
                frontier.push(w);
            }
        }
    }
    if x.start() == x.end() && y.start() != y.end() {
        return None;
    }
    let mut vmap = vec![usize::MAX; x.vertex_count()];
    let mut emap = vec![usize::MAX; x.edge_count()];
    vmap[x.start()] = y.start();
    search(x, y, &order, 0, &mut vmap, &mut emap, &mut visit).break_value()
}

fn search<B>(
    x: &SigmaTree,
    y: &SigmaTree,
    order: &[(EdgeId, VertexId)],
    depth: usize,
    vmap: &mut [VertexId],
    emap: &mut [EdgeId],
    visit: &mut impl FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let Some(&(e, v)) = order.get(depth) else {
        return visit(vmap, emap);
    };
    let w = x.opposite(e, v);
    let dir = x.direction_at(e, v);
    let label = &x.edge(e).label;
    let at = vmap[v];
    for &h in y.incident(at) {
        if y.direction_at(h, at) != dir || &y.edge(h).label != label {
            continue;
        }
        let image = y.opposite(h, at);
        if w == x.end() && image != y.end() {
            continue;
        }
        vmap[w] = image;
        emap[e] = h;
        search(x, y, order, depth + 1, vmap, emap, visit)?;
    }
    ControlFlow::Continue(())
}

/// Every morphism from `x` to `y`.
pub fn morphisms(x: &SigmaTree, y: &SigmaTree) -> Vec<TreeMorphism> {
    let mut out = Vec::new();
    for_each_morphism::<()>(x, y, |vmap, emap| {
        out.push(TreeMorphism {
            domain: x.clone(),
            codomain: y.clone(),
            vertex_map: vmap.to_vec(),
            edge_map: emap.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out
}

/// Whether the edge `e` at `v` and the edge `h` at `w` agree in label and direction.
pub(crate) fn same_kind(
    x: &SigmaTree,
    e: EdgeId,
    v: VertexId,
    y: &SigmaTree,
    h: EdgeId,
    w: VertexId,
) -> bool {
    let dir: Direction = x.direction_at(e, v);
    dir == y.direction_at(h, w) && x.edge(e).label == y.edge(h).label
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::fixtures::*;

    #[test]
    fn identity_is_a_morphism() {
        for t in [
            figure_left(),
            figure_middle(),
            figure_right(),
            SigmaTree::trivial(),
        ] {
            assert_eq!(TreeMorphism::identity(&t).check(), Ok(()));
        }
    }

    #[test]
    fn folding_j_onto_k() {
        let x = figure_right();
        let m = TreeMorphism {
            domain: x.clone(),
            codomain: x.clone(),
            vertex_map: vec![0, 1, 3, 3, 4],
            edge_map: vec![0, 2, 2, 3],
        };
        assert_eq!(m.check(), Ok(()));
        assert!(m.is_idempotent());
        assert_eq!(m.image().edge_count(), 3);
    }

    #[test]
    fn swapping_start_and_end_fails() {
        let x = tree(2, &[(0, 1, "a")], 0, 1);
        let m = TreeMorphism {
            domain: x.clone(),
            codomain: x.clone(),
            vertex_map: vec![1, 0],
            edge_map: vec![0],
        };
        assert!(matches!(
            m.check(),
            Err(MorphismViolation::Source(0) | MorphismViolation::Start)
        ));
    }

    #[test]
    fn wrong_label_is_reported() {
        let x = tree(3, &[(0, 1, "a"), (0, 2, "b")], 0, 0);
        let m = TreeMorphism {
            domain: x.clone(),
            codomain: x.clone(),
            vertex_map: vec![0, 2, 2],
            edge_map: vec![1, 1],
        };
        assert_eq!(m.check(), Err(MorphismViolation::Label(0)));
    }

    #[test]
    fn enumerates_endomorphisms_of_a_fork() {
        let x = tree(3, &[(0, 1, "a"), (0, 2, "a")], 0, 0);
        let all = morphisms(&x, &x);
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(TreeMorphism::is_valid));
        assert_eq!(all.iter().filter(|m| m.is_idempotent()).count(), 3);
    }

    #[test]
    fn idempotent_source_needs_idempotent_target() {
        let x = SigmaTree::trivial();
        let y = tree(2, &[(0, 1, "a")], 0, 1);
        assert!(morphisms(&x, &y).is_empty());
        assert_eq!(morphisms(&y, &y).len(), 1);
    }
}
