//! Command line, JSON documents, Graphviz export and the HTTP session
//! service.

pub mod cli;
pub mod dot;
pub mod json;
pub mod server;

use thiserror::Error;

use crate::error::QuiverError;
use crate::families::FamilyError;
use crate::sequence::ParseSequenceError;
use crate::tower::TowerError;

/// Input and validation failures surfaced by the front ends.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Sequence(#[from] ParseSequenceError),
    #[error("{0}")]
    Usage(String),
}
