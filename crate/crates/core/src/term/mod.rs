//! Terms over the signature (product, `^+`, `^*`, `1`), their evaluation,
//! and the word problem.
//!
//! Terms are never rewritten syntactically. Two terms are equal in the free
//! object exactly when their pruned evaluations are isomorphic trees, which is
//! what [`words_equal`] checks.

mod parse;

use std::fmt;

use crate::canonical::{are_isomorphic, branch_code};
use crate::error::{Error, OpError};
use crate::model::{Element, Evaluator};
use crate::ops::{
    unpruned_multiply, unpruned_plus, unpruned_star, AlgebraMode, FreeAlgebra, Operation, Sidedness,
};
use crate::prune::{is_pruned, prune};
use crate::tree::{Direction, Letter, SigmaTree};

pub use parse::{parse_term, Alphabet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Identity,
    Letter(Letter),
    Product(Box<Term>, Box<Term>),
    Plus(Box<Term>),
    Star(Box<Term>),
}

impl Term {
    pub fn product(lhs: Term, rhs: Term) -> Term {
        Term::Product(Box::new(lhs), Box::new(rhs))
    }

    pub fn plus(inner: Term) -> Term {
        Term::Plus(Box::new(inner))
    }

    pub fn star(inner: Term) -> Term {
        Term::Star(Box::new(inner))
    }

    /// Product of `factors` from left to right; the identity when empty.
    pub fn product_of(factors: impl IntoIterator<Item = Term>) -> Term {
        factors
            .into_iter()
            .reduce(Term::product)
            .unwrap_or(Term::Identity)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Identity | Term::Letter(_) => 1,
            Term::Product(l, r) => 1 + l.size() + r.size(),
            Term::Plus(t) | Term::Star(t) => 1 + t.size(),
        }
    }

    /// Whether every operation used belongs to `mode`'s signature.
    pub fn fits(&self, mode: AlgebraMode) -> bool {
        match self {
            Term::Identity => mode.allows(Operation::Identity),
            Term::Letter(_) => true,
            Term::Product(l, r) => l.fits(mode) && r.fits(mode),
            Term::Plus(t) => mode.allows(Operation::Plus) && t.fits(mode),
            Term::Star(t) => mode.allows(Operation::Star) && t.fits(mode),
        }
    }

    pub fn evaluate<I: Interpretation>(&self, interp: &I) -> Result<I::Value, Error> {
        Ok(match self {
            Term::Identity => interp.identity()?,
            Term::Letter(l) => interp.letter(l)?,
            Term::Product(l, r) => interp.multiply(&l.evaluate(interp)?, &r.evaluate(interp)?)?,
            Term::Plus(t) => interp.plus(&t.evaluate(interp)?)?,
            Term::Star(t) => interp.star(&t.evaluate(interp)?)?,
        })
    }

    fn first_token(&self) -> &Term {
        match self {
            Term::Product(l, _) => l.first_token(),
            Term::Plus(t) | Term::Star(t) => t.first_token(),
            atom => atom,
        }
    }

    fn last_token(&self) -> &Term {
        match self {
            Term::Product(_, r) => r.last_token(),
            // postfix operators end the printed form
            Term::Plus(_) | Term::Star(_) => self,
            atom => atom,
        }
    }

    fn write_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Product(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

/// Whether printing `lhs` directly before `rhs` would change how they tokenize.
fn needs_space(lhs: &Term, rhs: &Term) -> bool {
    match (lhs.last_token(), rhs.first_token()) {
        (Term::Letter(_), Term::Identity) => true,
        (Term::Letter(a), Term::Letter(b)) => a.as_str().len() > 1 || b.as_str().len() > 1,
        _ => false,
    }
}

impl fmt::Display for Term {
    /// Prints with the fewest parentheses that parse back to the same term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Identity => f.write_str("1"),
            Term::Letter(l) => write!(f, "{l}"),
            Term::Product(l, r) => {
                write!(f, "{l}")?;
                let bracketed = matches!(**r, Term::Product(..));
                if !bracketed && needs_space(l, r) {
                    f.write_str(" ")?;
                }
                r.write_factor(f)
            }
            Term::Plus(t) => {
                t.write_factor(f)?;
                f.write_str("^+")
            }
            Term::Star(t) => {
                t.write_factor(f)?;
                f.write_str("^*")
            }
        }
    }
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// A target algebra for [`Term::evaluate`].
pub trait Interpretation {
    type Value;

    fn identity(&self) -> Result<Self::Value, Error>;
    fn letter(&self, letter: &Letter) -> Result<Self::Value, Error>;
    fn multiply(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value, Error>;
    fn plus(&self, x: &Self::Value) -> Result<Self::Value, Error>;
    fn star(&self, x: &Self::Value) -> Result<Self::Value, Error>;
}

/// All trees under the unpruned operations.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnprunedTrees;

/// Pruned trees under the pruned operations, with no domain checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrunedTrees;

impl Interpretation for UnprunedTrees {
    type Value = SigmaTree;

    fn identity(&self) -> Result<SigmaTree, Error> {
        Ok(SigmaTree::trivial())
    }

    fn letter(&self, letter: &Letter) -> Result<SigmaTree, Error> {
        Ok(SigmaTree::base(letter.clone()))
    }

    fn multiply(&self, x: &SigmaTree, y: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(unpruned_multiply(x, y))
    }

    fn plus(&self, x: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(unpruned_plus(x))
    }

    fn star(&self, x: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(unpruned_star(x))
    }
}

impl Interpretation for PrunedTrees {
    type Value = SigmaTree;

    fn identity(&self) -> Result<SigmaTree, Error> {
        Ok(SigmaTree::trivial())
    }

    fn letter(&self, letter: &Letter) -> Result<SigmaTree, Error> {
        Ok(SigmaTree::base(letter.clone()))
    }

    fn multiply(&self, x: &SigmaTree, y: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(prune(&unpruned_multiply(x, y)))
    }

    fn plus(&self, x: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(prune(&unpruned_plus(x)))
    }

    fn star(&self, x: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(prune(&unpruned_star(x)))
    }
}

impl Interpretation for FreeAlgebra {
    type Value = SigmaTree;

    fn identity(&self) -> Result<SigmaTree, Error> {
        Ok(FreeAlgebra::identity(self)?)
    }

    fn letter(&self, letter: &Letter) -> Result<SigmaTree, Error> {
        Ok(self.generator(letter.clone()))
    }

    fn multiply(&self, x: &SigmaTree, y: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(FreeAlgebra::multiply(self, x, y)?)
    }

    fn plus(&self, x: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(FreeAlgebra::plus(self, x)?)
    }

    fn star(&self, x: &SigmaTree) -> Result<SigmaTree, Error> {
        Ok(FreeAlgebra::star(self, x)?)
    }
}

/// Direct evaluation in the model: `plus` for left models, `star` for right ones.
impl Interpretation for Evaluator {
    type Value = Element;

    fn identity(&self) -> Result<Element, Error> {
        Ok(self.one())
    }

    fn letter(&self, letter: &Letter) -> Result<Element, Error> {
        Ok(self.generator(letter)?)
    }

    fn multiply(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        Ok(self.mul(*x, *y))
    }

    fn plus(&self, x: &Element) -> Result<Element, Error> {
        match self.sidedness() {
            Sidedness::Left => Ok(self.unary(*x)),
            s => Err(OpError::OperationNotInSignature {
                op: Operation::Plus,
                sidedness: s,
            }
            .into()),
        }
    }

    fn star(&self, x: &Element) -> Result<Element, Error> {
        match self.sidedness() {
            Sidedness::Right => Ok(self.unary(*x)),
            s => Err(OpError::OperationNotInSignature {
                op: Operation::Star,
                sidedness: s,
            }
            .into()),
        }
    }
}

/// Evaluates with the unpruned operations, or with the pruned ones.
pub fn eval_term(t: &Term, pruned: bool) -> SigmaTree {
    let result = if pruned {
        t.evaluate(&PrunedTrees)
    } else {
        t.evaluate(&UnprunedTrees)
    };
    result.expect("tree interpretations are total")
}

/// A term whose unpruned evaluation is isomorphic to `x`, for any tree.
///
/// Splits off the first trunk edge as `Y a Z`; a tree without trunk edges is
/// split at the start vertex into `Y (a Z)^+` or `Y (Z a)^*` according to
/// the orientation of the chosen edge. The edge at the start vertex is the one
/// whose branch has the least canonical code.
pub fn term_for_tree(x: &SigmaTree) -> Term {
    if x.edge_count() == 0 {
        return Term::Identity;
    }
    let v0 = x.start();
    if let Some(&e) = x.trunk().first() {
        let a = Term::Letter(x.edge(e).label.clone());
        let v1 = x.edge(e).target;
        let before = x.cluster(v0, &[e]);
        let after = x
            .restrict_start(v1)
            .and_then(|t| t.remove(&[], &[e]))
            .expect("trunk suffix is a subtree");
        return Term::product_of(
            [term_for_tree(&before), a, term_for_tree(&after)]
                .into_iter()
                .filter(|t| *t != Term::Identity),
        );
    }
    let e = *x
        .incident(v0)
        .iter()
        .min_by_key(|&&e| branch_code(x, v0, e))
        .expect("non-trivial tree has an edge at its start");
    let a = Term::Letter(x.edge(e).label.clone());
    let v1 = x.opposite(e, v0);
    let rest = x.remove(&[], &[e]).expect("edge is off the empty trunk");
    let beyond = term_for_tree(&x.cluster(v1, &[e]));
    let hanging = match x.direction_at(e, v0) {
        Direction::Out => Term::plus(Term::product_of(
            [a, beyond].into_iter().filter(|t| *t != Term::Identity),
        )),
        Direction::In => Term::star(Term::product_of(
            [beyond, a].into_iter().filter(|t| *t != Term::Identity),
        )),
    };
    Term::product_of(
        [term_for_tree(&rest), hanging]
            .into_iter()
            .filter(|t| *t != Term::Identity),
    )
}

/// A term over the `sidedness` signature whose pruned evaluation is `x`.
///
/// `x` must be pruned and, for one-sided signatures, left or right adequate;
/// the resulting term then uses only `^+` or only `^*` respectively.
pub fn tree_to_term(x: &SigmaTree, sidedness: Sidedness) -> Result<Term, OpError> {
    if !sidedness.admits(x) {
        return Err(OpError::NotSided(sidedness));
    }
    if !is_pruned(x) {
        return Err(OpError::NotPruned);
    }
    Ok(term_for_tree(x))
}

/// Parses and evaluates `input` to its pruned tree.
pub fn normalize(input: &str, alphabet: &Alphabet, mode: AlgebraMode) -> Result<SigmaTree, Error> {
    let t = parse_term(input, alphabet, mode)?;
    Ok(eval_term(&t, true))
}

/// Decides whether two terms denote the same element of the free algebra.
pub fn words_equal(
    s: &str,
    t: &str,
    alphabet: &Alphabet,
    mode: AlgebraMode,
) -> Result<bool, Error> {
    let x = normalize(s, alphabet, mode)?;
    let y = normalize(t, alphabet, mode)?;
    Ok(are_isomorphic(&x, &y))
}
