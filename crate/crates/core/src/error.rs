use thiserror::Error;

use crate::graph::{ColorLabel, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),

    #[error("attaching a vertex to {neighbors:?} closes an odd cycle")]
    OddCycle { neighbors: Vec<VertexId> },

    #[error("vertex {0} is uncolored; pass include_uncolored_anchor to use it as an anchor")]
    UncoloredAnchor(VertexId),

    #[error("vertex {0} has no color")]
    Uncolored(VertexId),

    #[error("engine {engine} colored vertex {vertex} with {color}, which a neighbor already carries")]
    ImproperColoring {
        engine: String,
        vertex: VertexId,
        color: ColorLabel,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("expected a sequence of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("input is not P9-free: both child components of vertex {0} hold an induced P5 ending there")]
    NotP9Free(VertexId),

    #[error("structural claim failed at vertex {vertex}: {reason}")]
    ClaimViolation { vertex: VertexId, reason: String },

    #[error("game value exceeds the color budget {0}")]
    BudgetExceeded(usize),

    #[error("graph has {size} vertices, solver limit is {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("unknown engine `{0}`")]
    UnknownEngine(String),

    #[error("replay diverged at step {step}: transcript has {recorded}, engine produced {replayed}")]
    ReplayMismatch {
        step: usize,
        recorded: String,
        replayed: String,
    },

    #[error("malformed transcript line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
