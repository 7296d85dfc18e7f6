//! Triangular extensions: two quivers joined by arrows that all point the
//! same way across the cut.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{QuiverError, Result};
use crate::quiver::Quiver;
use crate::vertex::VertexId;

/// Orientation of the cross arrows relative to the designated part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// All cross arrows leave the designated part.
    Out,
    /// All cross arrows enter the designated part.
    In,
}

/// Result of classifying a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutKind {
    Out,
    In,
    Disjoint,
    NotTriangular,
}

impl CutKind {
    /// Direction used when composing sequences; disjoint cuts compose as `Out`.
    pub fn composition_direction(self) -> Option<Direction> {
        match self {
            CutKind::Out | CutKind::Disjoint => Some(Direction::Out),
            CutKind::In => Some(Direction::In),
            CutKind::NotTriangular => None,
        }
    }
}

impl From<Direction> for CutKind {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Out => CutKind::Out,
            Direction::In => CutKind::In,
        }
    }
}

/// Classifies the cut between `part` and the rest of `q`.
pub fn classify_triangular(q: &Quiver, part: &BTreeSet<VertexId>) -> Result<CutKind> {
    let mut inside = vec![false; q.len()];
    for v in part {
        inside[q.index_of(v).ok_or_else(|| QuiverError::UnknownVertex(v.clone()))?] = true;
    }
    if part.is_empty() || part.len() == q.len() {
        return Err(QuiverError::EmptyPart);
    }
    let n = q.len();
    let w = q.weight_matrix();
    let (mut out, mut inc) = (false, false);
    for i in (0..n).filter(|&i| inside[i]) {
        for j in (0..n).filter(|&j| !inside[j]) {
            match w[i * n + j].signum() {
                1 => out = true,
                -1 => inc = true,
                _ => {}
            }
        }
    }
    Ok(match (out, inc) {
        (false, false) => CutKind::Disjoint,
        (true, false) => CutKind::Out,
        (false, true) => CutKind::In,
        (true, true) => CutKind::NotTriangular,
    })
}

/// Disjoint union of `q1` and `q2` plus `cross` arrows `(from, to, weight)`.
///
/// With `Direction::Out` every cross arrow must run `q1 -> q2`; with
/// `Direction::In`, `q2 -> q1`.
pub fn triangular_extend(
    q1: &Quiver,
    q2: &Quiver,
    cross: &[(VertexId, VertexId, i64)],
    direction: Direction,
) -> Result<Quiver> {
    let mut u = q1.disjoint_union(q2)?;
    for (from, to, w) in cross {
        for v in [from, to] {
            if !u.contains(v) {
                return Err(QuiverError::UnknownVertex(v.clone()));
            }
        }
        let (src, dst) = match direction {
            Direction::Out => (q1, q2),
            Direction::In => (q2, q1),
        };
        if !(src.contains(from) && dst.contains(to)) {
            return Err(QuiverError::InconsistentCrossDirection {
                from: from.clone(),
                to: to.clone(),
            });
        }
        if *w < 1 {
            return Err(QuiverError::InvalidArrow {
                from: from.clone(),
                to: to.clone(),
                reason: "weight must be at least 1",
            });
        }
        if u.is_frozen(from)? && u.is_frozen(to)? {
            return Err(QuiverError::InvalidArrow {
                from: from.clone(),
                to: to.clone(),
                reason: "arrow between frozen vertices",
            });
        }
        u.add_weight(from, to, *w)?;
    }
    Ok(u)
}
