use thiserror::Error;

use crate::vertex::VertexId;

/// Errors raised by finite quiver operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(VertexId),
    #[error("cannot mutate at frozen vertex {0}")]
    FrozenVertexMutation(VertexId),
    #[error("vertex {0} is frozen; status is defined for mutable vertices only")]
    FrozenVertexQuery(VertexId),
    #[error("arrow multiplicity overflowed 64-bit range")]
    ArithmeticOverflow,
    #[error("quiver already has frozen vertices")]
    AlreadyFramed,
    #[error("vertex {0} occurs on both sides")]
    VertexCollision(VertexId),
    #[error("cross arrow {from} -> {to} runs against the declared direction")]
    InconsistentCrossDirection { from: VertexId, to: VertexId },
    #[error("both sides of a cut must be nonempty")]
    EmptyPart,
    #[error("invalid arrow {from} -> {to}: {reason}")]
    InvalidArrow {
        from: VertexId,
        to: VertexId,
        reason: &'static str,
    },
}

pub type Result<T, E = QuiverError> = std::result::Result<T, E>;
