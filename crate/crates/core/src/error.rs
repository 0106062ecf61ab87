use thiserror::Error;

use crate::catalog::TheoremId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {0} exceeds the 64-vertex limit")]
    OrderOverflow(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("blow-up expects {expected} parts, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{operation} supports at most {limit} vertices, graph has {order}")]
    OrderTooLarge {
        operation: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("automorphism group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("vertex set is not resolving")]
    NotResolving,
    #[error("coloring has {len} entries for a graph on {order} vertices")]
    ColoringArity { len: usize, order: usize },
    #[error("color {color} outside 1..={colors}")]
    ColorOutOfRange { color: usize, colors: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("family expression: {0}")]
    Expression(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("theorem {id} requires order at least {min}, got {order}")]
    NotApplicable {
        id: TheoremId,
        order: usize,
        min: usize,
    },
}
