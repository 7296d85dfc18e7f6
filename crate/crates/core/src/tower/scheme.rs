use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::sequence::{check_sequence, Mode, MutationSequence};
use crate::vertex::VertexId;

use super::{Depth, Tower, TowerError};

type SequenceFn = dyn Fn(usize) -> Result<MutationSequence, TowerError> + Send + Sync;

/// Per-level finite sequences `S1, S2, ...` standing for one infinite (or
/// bi-infinite) sequence: `Si` is `Si+1` with the steps outside `V(Qi)`
/// deleted.
#[derive(Clone)]
pub struct ReddeningScheme {
    source: Arc<SequenceFn>,
    depth: Depth,
}

impl fmt::Debug for ReddeningScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReddeningScheme").field("depth", &self.depth).finish_non_exhaustive()
    }
}

impl ReddeningScheme {
    pub fn explicit(levels: Vec<MutationSequence>) -> Self {
        let depth = Depth::Finite(levels.len());
        ReddeningScheme {
            source: Arc::new(move |i| Ok(levels[i - 1].clone())),
            depth,
        }
    }

    pub fn from_fn<F>(depth: Depth, f: F) -> Self
    where
        F: Fn(usize) -> Result<MutationSequence, TowerError> + Send + Sync + 'static,
    {
        ReddeningScheme {
            source: Arc::new(f),
            depth,
        }
    }

    pub fn declared_depth(&self) -> Depth {
        self.depth
    }

    /// `Si`, counted from 1.
    pub fn sequence(&self, i: usize) -> Result<MutationSequence, TowerError> {
        self.depth.check(i)?;
        (self.source)(i)
    }

    pub fn materialize(&self, depth: usize) -> Result<Vec<MutationSequence>, TowerError> {
        (1..=depth).map(|i| self.sequence(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SchemeCheck {
    Ok { depth: usize },
    /// `S(level)` is not the restriction of `S(level + 1)`.
    CompatibilityFailure { level: usize },
    NotReddeningAt { level: usize, reason: String },
}

impl SchemeCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, SchemeCheck::Ok { .. })
    }

    fn rank(&self) -> (usize, u8) {
        match self {
            SchemeCheck::Ok { .. } => (usize::MAX, 0),
            SchemeCheck::NotReddeningAt { level, .. } => (*level, 0),
            SchemeCheck::CompatibilityFailure { level } => (*level, 1),
        }
    }
}

/// Checks, for levels `1..=depth`, that `Si` reddens `Qi` and restricts
/// from `Si+1`. Reports the lowest failing level.
pub fn verify_scheme(t: &Tower, r: &ReddeningScheme, depth: usize) -> Result<SchemeCheck, TowerError> {
    if depth == 0 {
        return Ok(SchemeCheck::Ok { depth: 0 });
    }
    t.declared_depth().check(depth)?;
    r.declared_depth().check(depth)?;
    let levels = t.levels(depth)?;
    let seqs = r.materialize(depth)?;
    let failures: Vec<SchemeCheck> = (1..=depth)
        .into_par_iter()
        .map(|i| -> Result<Option<SchemeCheck>, TowerError> {
            let q = &levels[i - 1];
            let verdict = check_sequence(q, &seqs[i - 1])?;
            if !Mode::Reddening.accepts(verdict.kind) {
                return Ok(Some(SchemeCheck::NotReddeningAt {
                    level: i,
                    reason: verdict.failure_reason.unwrap_or_default(),
                }));
            }
            if i < depth {
                let keep: BTreeSet<VertexId> = q.vertices().iter().cloned().collect();
                if seqs[i].restrict_to(&keep) != seqs[i - 1] {
                    return Ok(Some(SchemeCheck::CompatibilityFailure { level: i }));
                }
            }
            Ok(None)
        })
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;
    Ok(failures
        .into_iter()
        .min_by_key(SchemeCheck::rank)
        .unwrap_or(SchemeCheck::Ok { depth }))
}
