use thiserror::Error;

use crate::ops::{Operation, Sidedness};
use crate::tree::VertexId;

/// Failures while building or manipulating a single tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(u64),
    #[error("vertex {0} is referenced but not listed")]
    DanglingEndpoint(u64),
    #[error("not a tree: {0}")]
    NotATree(&'static str),
    #[error("no directed path from the start vertex to the end vertex")]
    NoTrunkPath,
    #[error("no directed path from vertex {from} to vertex {to}")]
    NoPath { from: VertexId, to: VertexId },
    #[error("cannot remove a trunk vertex or trunk edge")]
    TrunkElementInS,
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("malformed tree record: {0}")]
    Format(String),
}

/// Failures of the algebra layer: operations applied outside their domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("operand is not pruned")]
    UnprunedOperand,
    #[error("operation {op} is not in the {sidedness} signature")]
    OperationNotInSignature { op: Operation, sidedness: Sidedness },
    #[error("the identity is not available in semigroup mode")]
    IdentityInSemigroup,
    #[error("tree is not {0} adequate")]
    NotSided(Sidedness),
    #[error("tree is not pruned")]
    NotPruned,
    #[error("size bound exceeded: {size} > {bound}")]
    BoundExceeded { size: usize, bound: usize },
}

/// Term syntax errors, with byte offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown letter {letter:?} at {position}")]
    UnknownLetter { letter: String, position: usize },
    #[error("operation {op} at {position} is not in the signature")]
    OperationNotInSignature { op: Operation, position: usize },
}

/// Problems with finite model tables and generator assignments.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("model is not {sidedness} adequate: {violation}")]
    NotAdequate {
        sidedness: Sidedness,
        violation: crate::model::Violation,
    },
    #[error("no generator image for letter {0:?}")]
    MissingGenerator(String),
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("{0}")]
    Mode(String),
}

/// Any error the library can produce.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
