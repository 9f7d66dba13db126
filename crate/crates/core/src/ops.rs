//! Unpruned and pruned operations on trees, and the tree classifier.
//!
//! The unpruned operations act on arbitrary trees. The pruned operations live
//! on pruned trees only: each one is the corresponding unpruned operation
//! followed by [`prune`]. [`FreeAlgebra`] bundles the pruned operations for
//! one [`AlgebraMode`], rejecting operands and operations outside it.

use std::fmt;

use crate::error::OpError;
use crate::prune::{is_pruned, prune};
use crate::tree::{Edge, Letter, SigmaTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    /// Multiplication and `+`; trees whose vertices are all reachable from the start.
    Left,
    /// Multiplication and `*`; trees whose vertices all reach the end.
    Right,
    /// Multiplication, `+` and `*` on all trees.
    TwoSided,
}

impl fmt::Display for Sidedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sidedness::Left => "left",
            Sidedness::Right => "right",
            Sidedness::TwoSided => "two-sided",
        })
    }
}

impl Sidedness {
    /// Whether a tree lies in the universe of this sidedness.
    pub fn admits(self, tree: &SigmaTree) -> bool {
        match self {
            Sidedness::Left => tree.is_left_adequate(),
            Sidedness::Right => tree.is_right_adequate(),
            Sidedness::TwoSided => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Monoid,
    /// The monoid with its identity removed; nothing else changes.
    Semigroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraMode {
    pub sidedness: Sidedness,
    pub unit: Unit,
}

impl AlgebraMode {
    pub const LEFT: AlgebraMode = AlgebraMode::monoid(Sidedness::Left);
    pub const RIGHT: AlgebraMode = AlgebraMode::monoid(Sidedness::Right);
    pub const TWO_SIDED: AlgebraMode = AlgebraMode::monoid(Sidedness::TwoSided);

    pub const fn monoid(sidedness: Sidedness) -> Self {
        AlgebraMode {
            sidedness,
            unit: Unit::Monoid,
        }
    }

    pub const fn semigroup(sidedness: Sidedness) -> Self {
        AlgebraMode {
            sidedness,
            unit: Unit::Semigroup,
        }
    }

    pub fn allows(&self, op: Operation) -> bool {
        match op {
            Operation::Multiply => true,
            Operation::Plus => self.sidedness != Sidedness::Right,
            Operation::Star => self.sidedness != Sidedness::Left,
            Operation::Identity => self.unit == Unit::Monoid,
        }
    }

    pub(crate) fn require(&self, op: Operation) -> Result<(), OpError> {
        if self.allows(op) {
            Ok(())
        } else if op == Operation::Identity {
            Err(OpError::IdentityInSemigroup)
        } else {
            Err(OpError::OperationNotInSignature {
                op,
                sidedness: self.sidedness,
            })
        }
    }
}

impl Default for AlgebraMode {
    fn default() -> Self {
        AlgebraMode::TWO_SIDED
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    Multiply,
    Plus,
    Star,
    Identity,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Multiply => "product",
            Operation::Plus => "^+",
            Operation::Star => "^*",
            Operation::Identity => "1",
        })
    }
}

/// Glues the end of `x` to the start of `y`.
pub fn unpruned_multiply(x: &SigmaTree, y: &SigmaTree) -> SigmaTree {
    let offset = x.vertex_count();
    // y's start becomes x's end; every other y vertex is shifted past x
    let relabel = |v: usize| {
        if v == y.start() {
            x.end()
        } else if v < y.start() {
            v + offset
        } else {
            v + offset - 1
        }
    };
    let mut edges = x.edges().to_vec();
    edges.extend(
        y.edges()
            .iter()
            .map(|e| Edge::new(relabel(e.source), relabel(e.target), e.label.clone())),
    );
    SigmaTree::assemble(
        offset + y.vertex_count() - 1,
        edges,
        x.start(),
        relabel(y.end()),
    )
}

/// Same graph and start; the end moves to the start.
pub fn unpruned_plus(x: &SigmaTree) -> SigmaTree {
    x.restrict(x.start(), x.start())
        .expect("empty path from start to start")
}

/// Same graph and end; the start moves to the end.
pub fn unpruned_star(x: &SigmaTree) -> SigmaTree {
    x.restrict(x.end(), x.end())
        .expect("empty path from end to end")
}

fn require_pruned(x: &SigmaTree) -> Result<(), OpError> {
    if is_pruned(x) {
        Ok(())
    } else {
        Err(OpError::UnprunedOperand)
    }
}

/// `XY`, the pruning of `X × Y`; both operands must be pruned.
pub fn pruned_multiply(x: &SigmaTree, y: &SigmaTree) -> Result<SigmaTree, OpError> {
    require_pruned(x)?;
    require_pruned(y)?;
    Ok(prune(&unpruned_multiply(x, y)))
}

pub fn pruned_plus(x: &SigmaTree) -> Result<SigmaTree, OpError> {
    require_pruned(x)?;
    Ok(prune(&unpruned_plus(x)))
}

pub fn pruned_star(x: &SigmaTree) -> Result<SigmaTree, OpError> {
    require_pruned(x)?;
    Ok(prune(&unpruned_star(x)))
}

/// The pruned operations of one free algebra: the free adequate monoid, or the
/// free left or right adequate monoid or semigroup embedded in it.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeAlgebra {
    mode: AlgebraMode,
}

impl FreeAlgebra {
    pub fn new(mode: AlgebraMode) -> Self {
        FreeAlgebra { mode }
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }

    /// Checks that `x` is an element: pruned, of the right sidedness, and
    /// non-trivial in semigroup mode.
    pub fn admit(&self, x: &SigmaTree) -> Result<(), OpError> {
        self.admit_shape(x)?;
        require_pruned(x)
    }

    /// [`admit`](Self::admit) without the pruning check: whether `x` prunes
    /// to an element.
    pub fn admit_shape(&self, x: &SigmaTree) -> Result<(), OpError> {
        if self.mode.unit == Unit::Semigroup && x.is_trivial() {
            return Err(OpError::IdentityInSemigroup);
        }
        if !self.mode.sidedness.admits(x) {
            return Err(OpError::NotSided(self.mode.sidedness));
        }
        Ok(())
    }

    pub fn identity(&self) -> Result<SigmaTree, OpError> {
        self.mode.require(Operation::Identity)?;
        Ok(SigmaTree::trivial())
    }

    pub fn generator(&self, letter: Letter) -> SigmaTree {
        SigmaTree::base(letter)
    }

    pub fn multiply(&self, x: &SigmaTree, y: &SigmaTree) -> Result<SigmaTree, OpError> {
        self.admit(x)?;
        self.admit(y)?;
        Ok(prune(&unpruned_multiply(x, y)))
    }

    pub fn plus(&self, x: &SigmaTree) -> Result<SigmaTree, OpError> {
        self.mode.require(Operation::Plus)?;
        self.admit(x)?;
        Ok(prune(&unpruned_plus(x)))
    }

    pub fn star(&self, x: &SigmaTree) -> Result<SigmaTree, OpError> {
        self.mode.require(Operation::Star)?;
        self.admit(x)?;
        Ok(prune(&unpruned_star(x)))
    }

    /// [`multiply`](Self::multiply) after pruning both operands.
    pub fn multiply_any(&self, x: &SigmaTree, y: &SigmaTree) -> Result<SigmaTree, OpError> {
        self.multiply(&prune(x), &prune(y))
    }

    pub fn plus_any(&self, x: &SigmaTree) -> Result<SigmaTree, OpError> {
        self.plus(&prune(x))
    }

    pub fn star_any(&self, x: &SigmaTree) -> Result<SigmaTree, OpError> {
        self.star(&prune(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_left_adequate: bool,
    pub is_right_adequate: bool,
    pub is_idempotent: bool,
    pub is_pruned: bool,
    pub is_trunk_only: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "left_adequate={} right_adequate={} idempotent={} pruned={} trunk_only={}",
            self.is_left_adequate,
            self.is_right_adequate,
            self.is_idempotent,
            self.is_pruned,
            self.is_trunk_only
        )
    }
}

pub fn classify(x: &SigmaTree) -> Classification {
    Classification {
        is_left_adequate: x.is_left_adequate(),
        is_right_adequate: x.is_right_adequate(),
        is_idempotent: x.is_idempotent(),
        is_pruned: is_pruned(x),
        is_trunk_only: x.trunk().len() == x.edge_count(),
    }
}
