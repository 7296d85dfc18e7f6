//! Infinite quivers as towers `Q1 ⊆ Q2 ⊆ ...` of finite quivers.
//!
//! Embeddings are inclusions of globally named vertices: level `i` is an
//! induced subquiver of level `i + 1` on the same vertex names. Levels are
//! produced lazily by a [`LevelSource`] and memoized. Every claim about an
//! unbounded tower is checked only up to a caller-supplied depth.

mod decompose;
mod mutation;
mod scheme;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::QuiverError;
use crate::quiver::Quiver;
use crate::triangular::CutKind;
use crate::vertex::VertexId;

pub use decompose::{build_scheme, decompose_triangular, Layer, TriangularDecomposition};
pub use mutation::{mutate_tower, MutatedTower};
pub use scheme::{verify_scheme, ReddeningScheme, SchemeCheck};

/// Levels scanned when looking for a vertex in an unbounded tower whose
/// source gives no hint.
pub const SCAN_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("level {requested} requested but only {declared} levels are available")]
    DepthExceeded { requested: usize, declared: usize },
    #[error("levels are numbered from 1")]
    LevelZero,
    #[error("vertex {0} does not occur in any available level")]
    VertexNotFound(VertexId),
    #[error("invalid tower at level {level}: {reason}")]
    InvalidTower { level: usize, reason: String },
    #[error("level {0} is not a triangular extension of the previous level")]
    NotTriangularAt(usize),
    #[error("level {level}: decomposition says {declared:?} but the cut is {actual:?}")]
    DirectionMismatchAt {
        level: usize,
        declared: CutKind,
        actual: CutKind,
    },
    #[error("level {level}: seed is not a reddening sequence ({reason})")]
    SeedNotReddeningAt { level: usize, reason: String },
    #[error("level {level}: no reddening seed of length at most {max_len}")]
    NoSeedFoundUpTo { level: usize, max_len: usize },
    #[error("invalid decomposition at level {level}: {reason}")]
    InvalidDecomposition { level: usize, reason: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Number of levels a provider can materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Finite(usize),
    Unbounded,
}

impl Depth {
    pub fn admits(self, level: usize) -> bool {
        match self {
            Depth::Finite(d) => level <= d,
            Depth::Unbounded => true,
        }
    }

    pub(crate) fn check(self, level: usize) -> Result<(), TowerError> {
        if level == 0 {
            return Err(TowerError::LevelZero);
        }
        match self {
            Depth::Finite(d) if level > d => Err(TowerError::DepthExceeded {
                requested: level,
                declared: d,
            }),
            _ => Ok(()),
        }
    }
}

/// Produces level `i` (1-based) of a tower.
pub trait LevelSource: Send + Sync {
    fn level(&self, i: usize) -> Result<Quiver, TowerError>;

    /// The minimal level containing `v`, if the source knows it directly.
    fn first_level_of(&self, _v: &VertexId) -> Option<usize> {
        None
    }
}

struct ExplicitLevels(Vec<Quiver>);

impl LevelSource for ExplicitLevels {
    fn level(&self, i: usize) -> Result<Quiver, TowerError> {
        Ok(self.0[i - 1].clone())
    }
}

/// A tower of embedded quivers with memoized levels.
#[derive(Clone)]
pub struct Tower {
    source: Arc<dyn LevelSource>,
    depth: Depth,
    cache: Arc<RwLock<HashMap<usize, Arc<Quiver>>>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower").field("depth", &self.depth).finish_non_exhaustive()
    }
}

impl Tower {
    pub fn from_source(source: Arc<dyn LevelSource>, depth: Depth) -> Tower {
        Tower {
            source,
            depth,
            cache: Arc::default(),
        }
    }

    /// Explicit finite tower; chain invariants are checked.
    pub fn explicit(levels: Vec<Quiver>) -> Result<Tower, TowerError> {
        let n = levels.len();
        let t = Tower::explicit_unchecked(levels);
        if n > 0 {
            if let TowerCheck::Violated(v) = verify_tower(&t, n)? {
                return Err(TowerError::InvalidTower {
                    level: v.level(),
                    reason: v.to_string(),
                });
            }
        }
        Ok(t)
    }

    /// Explicit finite tower without validation.
    pub fn explicit_unchecked(levels: Vec<Quiver>) -> Tower {
        let d = levels.len();
        Tower::from_source(Arc::new(ExplicitLevels(levels)), Depth::Finite(d))
    }

    pub fn declared_depth(&self) -> Depth {
        self.depth
    }

    /// Level `i`, counted from 1.
    pub fn level(&self, i: usize) -> Result<Arc<Quiver>, TowerError> {
        self.depth.check(i)?;
        if let Some(q) = self.cache.read().expect("level cache poisoned").get(&i) {
            return Ok(Arc::clone(q));
        }
        let q = Arc::new(self.source.level(i)?);
        let mut w = self.cache.write().expect("level cache poisoned");
        Ok(Arc::clone(w.entry(i).or_insert(q)))
    }

    /// Minimal level containing `v`.
    pub fn first_level(&self, v: &VertexId) -> Result<usize, TowerError> {
        if let Some(j) = self.source.first_level_of(v) {
            if self.depth.admits(j) {
                return Ok(j);
            }
            return Err(TowerError::VertexNotFound(v.clone()));
        }
        let limit = match self.depth {
            Depth::Finite(d) => d,
            Depth::Unbounded => SCAN_LIMIT,
        };
        for i in 1..=limit {
            if self.level(i)?.contains(v) {
                return Ok(i);
            }
        }
        Err(TowerError::VertexNotFound(v.clone()))
    }

    /// Levels `1..=depth`.
    pub fn levels(&self, depth: usize) -> Result<Vec<Arc<Quiver>>, TowerError> {
        (1..=depth).map(|i| self.level(i)).collect()
    }
}

/// A chain-invariant failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A vertex of level `level` is missing from level `level + 1`.
    MissingVertex { level: usize, vertex: VertexId },
    /// Levels `level` and `level + 1` disagree on a weight.
    WeightMismatch {
        level: usize,
        from: VertexId,
        to: VertexId,
        lower: i64,
        upper: i64,
    },
    /// A vertex changes between mutable and frozen.
    TagMismatch { level: usize, vertex: VertexId },
    /// Towers carry no frozen vertices.
    FrozenVertex { level: usize, vertex: VertexId },
}

impl Violation {
    pub fn level(&self) -> usize {
        match self {
            Violation::MissingVertex { level, .. }
            | Violation::WeightMismatch { level, .. }
            | Violation::TagMismatch { level, .. }
            | Violation::FrozenVertex { level, .. } => *level,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingVertex { level, vertex } => {
                write!(f, "vertex {vertex} of level {level} missing from level {}", level + 1)
            }
            Violation::WeightMismatch {
                level,
                from,
                to,
                lower,
                upper,
            } => write!(
                f,
                "weight {from}->{to} is {lower} at level {level} but {upper} at level {}",
                level + 1
            ),
            Violation::TagMismatch { level, vertex } => {
                write!(f, "vertex {vertex} changes mutable/frozen tag after level {level}")
            }
            Violation::FrozenVertex { level, vertex } => {
                write!(f, "level {level} has frozen vertex {vertex}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TowerCheck {
    /// Invariants hold for levels `1..=depth`.
    Ok { depth: usize },
    Violated(Violation),
}

impl TowerCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, TowerCheck::Ok { .. })
    }
}

fn check_pair(lower: &Quiver, upper: &Quiver, level: usize) -> Option<Violation> {
    for v in lower.vertices() {
        if !upper.contains(v) {
            return Some(Violation::MissingVertex {
                level,
                vertex: v.clone(),
            });
        }
        if lower.is_frozen(v).ok()? != upper.is_frozen(v).ok()? {
            return Some(Violation::TagMismatch {
                level,
                vertex: v.clone(),
            });
        }
    }
    let restricted = upper.restrict(lower.vertices()).ok()?;
    if restricted == *lower {
        return None;
    }
    for a in lower.vertices() {
        for b in lower.vertices() {
            let (lw, uw) = (lower.weight(a, b).ok()?, restricted.weight(a, b).ok()?);
            if lw != uw {
                return Some(Violation::WeightMismatch {
                    level,
                    from: a.clone(),
                    to: b.clone(),
                    lower: lw,
                    upper: uw,
                });
            }
        }
    }
    None
}

/// Checks `V(Qi) ⊆ V(Qi+1)`, `Qi = Qi+1|V(Qi)` and absence of frozen
/// vertices for levels `1..=depth`; reports the lowest failing level.
pub fn verify_tower(t: &Tower, depth: usize) -> Result<TowerCheck, TowerError> {
    if depth == 0 {
        return Ok(TowerCheck::Ok { depth: 0 });
    }
    t.depth.check(depth)?;
    let levels = t.levels(depth)?;
    let found = (1..=depth)
        .into_par_iter()
        .filter_map(|i| {
            let q = &levels[i - 1];
            if let Some(v) = q.frozen_vertices().next() {
                return Some(Violation::FrozenVertex {
                    level: i,
                    vertex: v.clone(),
                });
            }
            if i < depth {
                check_pair(q, &levels[i], i)
            } else {
                None
            }
        })
        .min_by_key(Violation::level);
    Ok(match found {
        Some(v) => TowerCheck::Violated(v),
        None => TowerCheck::Ok { depth },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_util::{q, v};

    fn path(n: i64) -> Quiver {
        let vs: Vec<i64> = (1..=n).collect();
        let arrows: Vec<(i64, i64, i64)> = (1..n).map(|i| (i, i + 1, 1)).collect();
        q(&vs, &arrows)
    }

    #[test]
    fn explicit_path_tower_is_valid() {
        let t = Tower::explicit((1..=6).map(path).collect()).unwrap();
        assert_eq!(verify_tower(&t, 6).unwrap(), TowerCheck::Ok { depth: 6 });
        assert_eq!(t.first_level(&v(4)).unwrap(), 4);
        assert_eq!(
            t.first_level(&v(9)),
            Err(TowerError::VertexNotFound(v(9)))
        );
    }

    #[test]
    fn dropped_arrow_is_reported_at_lower_level() {
        let broken = q(&[1, 2, 3], &[(2, 3, 1)]);
        let t = Tower::explicit_unchecked(vec![path(1), path(2), broken, path(4)]);
        match verify_tower(&t, 4).unwrap() {
            TowerCheck::Violated(Violation::WeightMismatch {
                level, from, to, lower, upper,
            }) => {
                assert_eq!(level, 2);
                assert_eq!((from, to, lower, upper), (v(1), v(2), 1, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Tower::explicit(vec![path(1), path(2), q(&[1, 2, 3], &[(2, 3, 1)])]),
            Err(TowerError::InvalidTower { level: 2, .. })
        ));
    }

    #[test]
    fn missing_vertex_and_depth_errors() {
        let t = Tower::explicit_unchecked(vec![q(&[5], &[]), path(2)]);
        assert_eq!(
            verify_tower(&t, 2).unwrap(),
            TowerCheck::Violated(Violation::MissingVertex { level: 1, vertex: v(5) })
        );
        assert_eq!(
            verify_tower(&t, 3),
            Err(TowerError::DepthExceeded { requested: 3, declared: 2 })
        );
        assert_eq!(t.level(0).unwrap_err(), TowerError::LevelZero);
    }

    #[test]
    fn frozen_levels_rejected() {
        let fr = Quiver::builder().mutable("1").frozen("x").build().unwrap();
        let t = Tower::explicit_unchecked(vec![fr]);
        assert!(matches!(
            verify_tower(&t, 1).unwrap(),
            TowerCheck::Violated(Violation::FrozenVertex { level: 1, .. })
        ));
    }
}
