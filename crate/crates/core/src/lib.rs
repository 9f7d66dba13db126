//! Free left, right and two-sided adequate monoids and semigroups, realised
//! as edge-labelled directed trees.
//!
//! * [`tree`]: trees with a start and end vertex, and their sub-structures.
//! * [`ops`]: products, `⁺`, `*` and the free algebras over pruned trees.
//! * [`prune`]: folding a tree down to its pruned retract.
//! * [`term`]: parsing, printing and evaluating terms; the word problem.
//! * [`model`]: finite models, their verification and tree evaluation.
//! * [`io`], [`random`], [`enumerate`]: records, DOT, generators and small-tree lists.

pub mod canonical;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod model;
pub mod morphism;
pub mod ops;
pub mod prune;
pub mod random;
pub mod term;
pub mod tree;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/operations.md")]
    mod operations {}
    #[doc = include_str!("../../../book/src/pruning.md")]
    mod pruning {}
    #[doc = include_str!("../../../book/src/terms.md")]
    mod terms {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
