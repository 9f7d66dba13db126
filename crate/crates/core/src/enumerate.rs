//! Exhaustive lists of small trees, one per isomorphism class.

use std::collections::BTreeMap;

use crate::canonical::{canonical_form, CanonicalForm};
use crate::tree::{Edge, Letter, SigmaTree};

/// Every tree with at most `max_edges` edges over `alphabet`, up to isomorphism,
/// ordered by edge count and then by canonical form.
pub fn all_trees(alphabet: &[Letter], max_edges: usize) -> Vec<SigmaTree> {
    let mut out = Vec::new();
    for rooted in rooted_trees(alphabet, max_edges) {
        let mut by_form = BTreeMap::new();
        for rooted in rooted {
            let n = rooted.vertex_count();
            for end in 0..n {
                if rooted.directed_path(rooted.start(), end).is_none() {
                    continue;
                }
                let x = SigmaTree::new(n, rooted.edges().to_vec(), rooted.start(), end)
                    .expect("reachable end");
                by_form.entry(canonical_form(&x)).or_insert(x);
            }
        }
        out.extend(by_form.into_values());
    }
    out
}

/// Trees with start = end, grouped by edge count. Every such tree with `k + 1`
/// edges arises from one with `k` edges by attaching a leaf.
fn rooted_trees(alphabet: &[Letter], max_edges: usize) -> Vec<Vec<SigmaTree>> {
    let mut levels = vec![vec![SigmaTree::trivial()]];
    for _ in 0..max_edges {
        let mut next: BTreeMap<CanonicalForm, SigmaTree> = BTreeMap::new();
        for x in levels.last().expect("non-empty") {
            let fresh = x.vertex_count();
            for v in 0..fresh {
                for label in alphabet {
                    for edge in [
                        Edge::new(v, fresh, label.clone()),
                        Edge::new(fresh, v, label.clone()),
                    ] {
                        let mut edges = x.edges().to_vec();
                        edges.push(edge);
                        let y = SigmaTree::assemble(fresh + 1, edges, x.start(), x.start());
                        next.entry(canonical_form(&y)).or_insert(y);
                    }
                }
            }
        }
        levels.push(next.into_values().collect());
    }
    levels
}
