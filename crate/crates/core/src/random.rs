//! Seeded generators for trees and terms.
//!
//! Trees grow one edge at a time: each new edge joins a fresh vertex to an
//! existing vertex chosen uniformly. Left trees grow away from the start
//! vertex, right trees grow towards the end vertex, and two-sided trees orient
//! each edge at random before the start and end are chosen.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ops::{AlgebraMode, Sidedness, Unit};
use crate::prune::prune;
use crate::term::Term;
use crate::tree::{Edge, Letter, SigmaTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    pub max_edges: usize,
    pub alphabet: Vec<Letter>,
    pub mode: AlgebraMode,
}

impl RandomSpec {
    pub fn new(seed: u64, max_edges: usize, alphabet: Vec<Letter>, mode: AlgebraMode) -> Self {
        RandomSpec {
            seed,
            max_edges,
            alphabet,
            mode,
        }
    }

    /// The spec over the alphabet `{a, b}`.
    pub fn ab(seed: u64, max_edges: usize, mode: AlgebraMode) -> Self {
        let alphabet = ["a", "b"]
            .iter()
            .map(|s| Letter::new(s).expect("valid"))
            .collect();
        Self::new(seed, max_edges, alphabet, mode)
    }

    pub fn generator(&self) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            spec: self.clone(),
        }
    }

    fn min_size(&self) -> usize {
        match self.mode.unit {
            Unit::Monoid => 0,
            Unit::Semigroup => 1,
        }
    }
}

/// A stream of random values; the same spec always yields the same stream.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
    spec: RandomSpec,
}

impl Generator {
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn spec(&self) -> &RandomSpec {
        &self.spec
    }

    fn letter(&mut self) -> Letter {
        self.spec
            .alphabet
            .choose(&mut self.rng)
            .expect("alphabet must not be empty")
            .clone()
    }

    fn size(&mut self) -> usize {
        let lo = self.spec.min_size().min(self.spec.max_edges);
        self.rng.gen_range(lo..=self.spec.max_edges)
    }

    /// A tree with a uniformly chosen number of edges up to `max_edges`.
    pub fn tree(&mut self) -> SigmaTree {
        let n = self.size();
        self.tree_with_edges(n, false)
    }

    /// A tree whose start and end coincide.
    pub fn idempotent_tree(&mut self) -> SigmaTree {
        let n = self.size();
        self.tree_with_edges(n, true)
    }

    /// The pruning of [`Generator::tree`].
    pub fn pruned_tree(&mut self) -> SigmaTree {
        let x = self.tree();
        prune(&x)
    }

    pub fn tree_with_edges(&mut self, n: usize, idempotent: bool) -> SigmaTree {
        let side = self.spec.mode.sidedness;
        let mut edges = Vec::with_capacity(n);
        for fresh in 1..=n {
            let old = self.rng.gen_range(0..fresh);
            let label = self.letter();
            let outward = match side {
                Sidedness::Left => true,
                Sidedness::Right => false,
                Sidedness::TwoSided => self.rng.gen_bool(0.5),
            };
            edges.push(if outward {
                Edge::new(old, fresh, label)
            } else {
                Edge::new(fresh, old, label)
            });
        }
        let probe = SigmaTree::assemble(n + 1, edges.clone(), 0, 0);
        let pick = |rng: &mut ChaCha8Rng, from: &[usize]| *from.choose(rng).expect("non-empty");
        let all: Vec<usize> = (0..=n).collect();
        let (start, end) = match side {
            Sidedness::Left => (
                0,
                if idempotent {
                    0
                } else {
                    pick(&mut self.rng, &all)
                },
            ),
            Sidedness::Right => (
                if idempotent {
                    0
                } else {
                    pick(&mut self.rng, &all)
                },
                0,
            ),
            Sidedness::TwoSided => {
                let start = pick(&mut self.rng, &all);
                if idempotent {
                    (start, start)
                } else {
                    let reachable: Vec<usize> = all
                        .iter()
                        .copied()
                        .filter(|&v| probe.directed_path(start, v).is_some())
                        .collect();
                    (start, pick(&mut self.rng, &reachable))
                }
            }
        };
        SigmaTree::new(n + 1, edges, start, end).expect("generated trees are valid")
    }

    /// A term over the generator's signature with at most `max_edges` letters.
    pub fn term(&mut self) -> Term {
        let n = self.size();
        self.term_with_letters(n)
    }

    pub fn term_with_letters(&mut self, n: usize) -> Term {
        let monoid = self.spec.mode.unit == Unit::Monoid;
        let mut t = match n {
            0 => return Term::Identity,
            1 => Term::Letter(self.letter()),
            _ => {
                let k = self.rng.gen_range(1..n);
                let lhs = self.term_with_letters(k);
                let rhs = self.term_with_letters(n - k);
                Term::product(lhs, rhs)
            }
        };
        if monoid && self.rng.gen_ratio(1, 10) {
            t = if self.rng.gen_bool(0.5) {
                Term::product(Term::Identity, t)
            } else {
                Term::product(t, Term::Identity)
            };
        }
        if self.rng.gen_ratio(1, 3) {
            let plus = match self.spec.mode.sidedness {
                Sidedness::Left => true,
                Sidedness::Right => false,
                Sidedness::TwoSided => self.rng.gen_bool(0.5),
            };
            t = if plus { Term::plus(t) } else { Term::star(t) };
        }
        t
    }
}

pub fn random_tree(spec: &RandomSpec) -> SigmaTree {
    spec.generator().tree()
}

pub fn random_term(spec: &RandomSpec) -> Term {
    spec.generator().term()
}
