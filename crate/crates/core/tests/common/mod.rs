//! Helpers and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use adequate::io::read_tree;
use adequate::tree::{Edge, Letter, SigmaTree, VertexId};

pub fn letter(s: &str) -> Letter {
    Letter::new(s).unwrap()
}

pub fn ab() -> Vec<Letter> {
    vec![letter("a"), letter("b")]
}

pub fn data(name: &str) -> SigmaTree {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    read_tree(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn edge_set(x: &SigmaTree, relabel: &[VertexId]) -> BTreeSet<(VertexId, VertexId, String)> {
    x.edges()
        .iter()
        .map(|e| (relabel[e.source], relabel[e.target], e.label.to_string()))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_isomorphic(x: &SigmaTree, y: &SigmaTree) -> bool {
    let n = x.vertex_count();
    if n != y.vertex_count() {
        return false;
    }
    let target = edge_set(y, &(0..n).collect::<Vec<_>>());
    permutations(n)
        .into_iter()
        .any(|p| p[x.start()] == y.start() && p[x.end()] == y.end() && edge_set(x, &p) == target)
}

/// Every vertex map from `x` to `y` preserving sources, targets, labels,
/// start and end, found by trying all `|V(y)|^|V(x)|` functions.
pub fn brute_morphisms(x: &SigmaTree, y: &SigmaTree) -> BTreeSet<Vec<VertexId>> {
    let (n, m) = (x.vertex_count(), y.vertex_count());
    let has_edge = |s: VertexId, t: VertexId, l: &Letter| {
        y.edges()
            .iter()
            .any(|e| e.source == s && e.target == t && &e.label == l)
    };
    let mut out = BTreeSet::new();
    let mut map = vec![0; n];
    loop {
        let ok = map[x.start()] == y.start()
            && map[x.end()] == y.end()
            && x.edges()
                .iter()
                .all(|e: &Edge| has_edge(map[e.source], map[e.target], &e.label));
        if ok {
            out.insert(map.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// Shuffles vertex ids with the given permutation.
pub fn relabel(x: &SigmaTree, p: &[VertexId]) -> SigmaTree {
    let edges = x
        .edges()
        .iter()
        .map(|e| Edge::new(p[e.source], p[e.target], e.label.clone()))
        .collect();
    SigmaTree::new(x.vertex_count(), edges, p[x.start()], p[x.end()]).unwrap()
}

use adequate::canonical::CanonicalForm;
use adequate::ops::{AlgebraMode, FreeAlgebra, Sidedness};
use adequate::random::Generator;

/// The six basic identities of one-sided adequate monoids, instantiated with
/// random pruned trees. Each entry is `(name, lhs, rhs)`; left forms use `^+`,
/// right forms are the duals with `^*`.
pub fn identity_instances(
    side: Sidedness,
    g: &mut Generator,
) -> Vec<(&'static str, SigmaTree, SigmaTree)> {
    let alg = FreeAlgebra::new(AlgebraMode::monoid(side));
    let m = |x: &SigmaTree, y: &SigmaTree| alg.multiply(x, y).unwrap();
    let u = |x: &SigmaTree| match side {
        Sidedness::Right => alg.star(x).unwrap(),
        _ => alg.plus(x).unwrap(),
    };
    let a = g.pruned_tree();
    let b = g.pruned_tree();
    let e = adequate::prune::prune(&g.idempotent_tree());
    let f0 = adequate::prune::prune(&g.idempotent_tree());
    match side {
        Sidedness::Right => {
            let f = m(&f0, &e);
            assert_eq!(form(&m(&f, &e)), form(&f));
            vec![
                ("e* = e", u(&e), e.clone()),
                ("(ab)* = (a*b)*", u(&m(&a, &b)), u(&m(&u(&a), &b))),
                ("a a* = a", m(&a, &u(&a)), a.clone()),
                ("a* e = (ae)*", m(&u(&a), &e), u(&m(&a, &e))),
                ("(ba)* a* = (ba)*", m(&u(&m(&b, &a)), &u(&a)), u(&m(&b, &a))),
                (
                    "fe = f => (ea)*(fa)* = (fa)*",
                    m(&u(&m(&e, &a)), &u(&m(&f, &a))),
                    u(&m(&f, &a)),
                ),
            ]
        }
        _ => {
            let f = m(&e, &f0);
            assert_eq!(form(&m(&e, &f)), form(&f));
            vec![
                ("e+ = e", u(&e), e.clone()),
                ("(ab)+ = (ab+)+", u(&m(&a, &b)), u(&m(&a, &u(&b)))),
                ("a+ a = a", m(&u(&a), &a), a.clone()),
                ("e a+ = (ea)+", m(&e, &u(&a)), u(&m(&e, &a))),
                ("a+ (ab)+ = (ab)+", m(&u(&a), &u(&m(&a, &b))), u(&m(&a, &b))),
                (
                    "ef = f => (ae)+(af)+ = (af)+",
                    m(&u(&m(&a, &e)), &u(&m(&a, &f))),
                    u(&m(&a, &f)),
                ),
            ]
        }
    }
}

pub fn form(x: &SigmaTree) -> CanonicalForm {
    adequate::canonical::canonical_form(x)
}
