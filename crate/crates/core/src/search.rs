//! Breadth-first search for reddening and maximal green sequences.
//!
//! States are framed quivers, deduplicated by their full weight matrix.
//! Levels are expanded in parallel and merged serially in sequence order, so
//! the answer is the shortest, lexicographically least sequence regardless
//! of thread count.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::QuiverError;
use crate::framed::{frame, FramedQuiver};
use crate::quiver::Quiver;
use crate::sequence::{observe_coherence, Mode, MutationSequence};
use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(MutationSequence),
    /// Nothing found among sequences of length at most this bound. This is
    /// a bounded certificate, not a proof of nonexistence.
    NoneUpTo(usize),
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&MutationSequence> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            SearchOutcome::NoneUpTo(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Distinct states visited, including the start.
    pub states: usize,
    /// Branches dropped because a weight overflowed.
    pub overflow_pruned: usize,
}

pub fn find_reddening(q: &Quiver, max_len: usize, mode: Mode) -> Result<SearchOutcome, QuiverError> {
    Ok(search_reddening(q, max_len, mode)?.outcome)
}

pub fn search_reddening(q: &Quiver, max_len: usize, mode: Mode) -> Result<SearchReport, QuiverError> {
    let start = frame(q)?;
    let mutable: Vec<VertexId> = q.vertices().to_vec();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.quiver().weight_matrix().to_vec());
    let mut report = SearchReport {
        outcome: SearchOutcome::NoneUpTo(max_len),
        states: 1,
        overflow_pruned: 0,
    };
    if start.all_red() {
        report.outcome = SearchOutcome::Found(MutationSequence::default());
        return Ok(report);
    }

    let mut frontier: Vec<(FramedQuiver, MutationSequence)> = vec![(start, MutationSequence::default())];
    for _ in 0..max_len {
        let expanded: Vec<Vec<Option<(FramedQuiver, MutationSequence)>>> = frontier
            .par_iter()
            .map(|(state, path)| {
                mutable
                    .iter()
                    .filter(|k| mode == Mode::Reddening || state.status(k).map(|s| s.green).unwrap_or(false))
                    .map(|k| {
                        let next = state.mutate(k).ok()?;
                        let mut p = path.clone();
                        p.push(k.clone());
                        Some((next, p))
                    })
                    .collect()
            })
            .collect();

        let mut next_frontier = Vec::new();
        for child in expanded.into_iter().flatten() {
            let Some((state, path)) = child else {
                report.overflow_pruned += 1;
                continue;
            };
            if !seen.insert(state.quiver().weight_matrix().to_vec()) {
                continue;
            }
            report.states += 1;
            observe_coherence(state.quiver());
            if state.all_red() {
                report.outcome = SearchOutcome::Found(path);
                return Ok(report);
            }
            next_frontier.push((state, path));
        }
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    if report.overflow_pruned > 0 {
        log::warn!("search pruned {} branches on weight overflow", report.overflow_pruned);
    }
    Ok(report)
}
