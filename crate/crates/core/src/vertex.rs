//! Vertex identifiers.
//!
//! Tokens are opaque printable strings. Ordering puts integer tokens first,
//! compared by value, then every other token in plain lexicographic order.
//! That ordering is used for every iteration in the crate, so outputs and
//! search tie-breaks are reproducible.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Suffix marking the frozen companion of a mutable vertex.
pub const FROZEN_MARK: char = '\'';

/// A globally named vertex.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Self {
        VertexId(token.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The frozen companion `v'` of this vertex.
    pub fn companion(&self) -> VertexId {
        let mut s = self.0.clone();
        s.push(FROZEN_MARK);
        VertexId(s)
    }

    /// True when the token carries the companion decoration.
    pub fn is_decorated(&self) -> bool {
        self.0.ends_with(FROZEN_MARK)
    }

    fn numeric(&self) -> Option<i64> {
        self.0.parse().ok()
    }
}

impl Ord for VertexId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for VertexId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<i64> for VertexId {
    fn from(n: i64) -> Self {
        VertexId(n.to_string())
    }
}

impl From<i32> for VertexId {
    fn from(n: i32) -> Self {
        VertexId(n.to_string())
    }
}

impl From<usize> for VertexId {
    fn from(n: usize) -> Self {
        VertexId(n.to_string())
    }
}
