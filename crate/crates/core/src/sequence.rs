//! Mutation sequences, reddening verdicts and triangular composition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::QuiverError;
use crate::framed::{frame, FramedQuiver};
use crate::quiver::Quiver;
use crate::triangular::Direction;
use crate::vertex::VertexId;

/// An ordered list of mutation steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationSequence(Vec<VertexId>);

impl MutationSequence {
    pub fn new(steps: Vec<VertexId>) -> Self {
        MutationSequence(steps)
    }

    pub fn steps(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, v: VertexId) {
        self.0.push(v);
    }

    /// Keeps only the steps in `keep`, order preserved.
    pub fn restrict_to(&self, keep: &BTreeSet<VertexId>) -> MutationSequence {
        MutationSequence(self.0.iter().filter(|v| keep.contains(*v)).cloned().collect())
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.0.iter().cloned().collect()
    }
}

impl<V: Into<VertexId>> FromIterator<V> for MutationSequence {
    fn from_iter<T: IntoIterator<Item = V>>(iter: T) -> Self {
        MutationSequence(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("empty token in sequence at position {0}")]
pub struct ParseSequenceError(pub usize);

impl FromStr for MutationSequence {
    type Err = ParseSequenceError;

    /// Comma-separated tokens; surrounding whitespace is ignored and the
    /// empty string is the empty sequence.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(MutationSequence::default());
        }
        s.split(',')
            .enumerate()
            .map(|(i, t)| {
                let t = t.trim();
                if t.is_empty() {
                    Err(ParseSequenceError(i))
                } else {
                    Ok(VertexId::from(t))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MutationSequence)
    }
}

/// A step of a sequence failed to apply.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index} ({vertex}): {source}")]
pub struct StepError {
    pub index: usize,
    pub vertex: VertexId,
    #[source]
    pub source: QuiverError,
}

static MIXED_OBSERVED: AtomicU64 = AtomicU64::new(0);

/// Number of mixed mutable vertices observed along sequences applied from
/// framed quivers in this process. Sign-coherence says this stays zero.
pub fn sign_coherence_violations() -> u64 {
    MIXED_OBSERVED.load(Ordering::Relaxed)
}

pub(crate) fn observe_coherence(q: &Quiver) {
    let mixed = q.statuses().iter().filter(|(_, s)| s.is_mixed()).count() as u64;
    if mixed > 0 {
        MIXED_OBSERVED.fetch_add(mixed, Ordering::Relaxed);
        log::error!("sign-coherence violated: {mixed} mixed vertices in {q:?}");
        debug_assert!(false, "sign-coherence violated in {q:?}");
    }
}

/// Left-to-right fold of mutation over `s`.
pub fn apply_sequence(fq: &FramedQuiver, s: &MutationSequence) -> Result<FramedQuiver, StepError> {
    let mut cur = fq.clone();
    for (index, k) in s.steps().iter().enumerate() {
        cur = cur.mutate(k).map_err(|source| StepError {
            index,
            vertex: k.clone(),
            source,
        })?;
        observe_coherence(cur.quiver());
    }
    Ok(cur)
}

/// What a sequence achieves from the framed quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Reddening,
    MaximalGreen,
    NotReddening,
}

/// Search/check target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Reddening,
    #[serde(alias = "mgs")]
    MaximalGreen,
}

impl Mode {
    pub fn accepts(self, kind: VerdictKind) -> bool {
        match self {
            Mode::Reddening => kind != VerdictKind::NotReddening,
            Mode::MaximalGreen => kind == VerdictKind::MaximalGreen,
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reddening" => Ok(Mode::Reddening),
            "mgs" | "maximal_green" | "maximal-green" => Ok(Mode::MaximalGreen),
            other => Err(format!("unknown mode {other:?} (expected reddening or mgs)")),
        }
    }
}

/// Statuses after one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub vertex: VertexId,
    /// Whether `vertex` was green just before this step.
    pub was_green: bool,
    pub statuses: BTreeMap<VertexId, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceVerdict {
    pub kind: VerdictKind,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<TraceStep>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure_reason: Option<String>,
}

/// Frames `q` and applies `s`, classifying the outcome.
pub fn check_sequence(q: &Quiver, s: &MutationSequence) -> Result<SequenceVerdict, QuiverError> {
    check(q, s, false)
}

/// Like [`check_sequence`], recording statuses after every step.
pub fn check_sequence_traced(q: &Quiver, s: &MutationSequence) -> Result<SequenceVerdict, QuiverError> {
    check(q, s, true)
}

fn check(q: &Quiver, s: &MutationSequence, traced: bool) -> Result<SequenceVerdict, QuiverError> {
    let mut cur = frame(q)?;
    let mut trace = traced.then(Vec::new);
    let mut all_green_steps = true;
    let not = |reason: String, trace: Option<Vec<TraceStep>>| SequenceVerdict {
        kind: VerdictKind::NotReddening,
        length: s.len(),
        trace,
        failure_reason: Some(reason),
    };
    for (index, k) in s.steps().iter().enumerate() {
        let was_green = match cur.status(k) {
            Ok(st) => st.green,
            Err(e) => return Ok(not(format!("step {index} ({k}): {e}"), trace)),
        };
        all_green_steps &= was_green;
        cur = match cur.mutate(k) {
            Ok(next) => next,
            Err(e) => return Ok(not(format!("step {index} ({k}): {e}"), trace)),
        };
        observe_coherence(cur.quiver());
        if let Some(t) = trace.as_mut() {
            t.push(TraceStep {
                vertex: k.clone(),
                was_green,
                statuses: cur
                    .quiver()
                    .statuses()
                    .into_iter()
                    .map(|(v, st)| (v.clone(), st.label().to_owned()))
                    .collect(),
            });
        }
    }
    let not_red: Vec<String> = cur
        .quiver()
        .statuses()
        .into_iter()
        .filter(|(_, st)| !st.red)
        .map(|(v, _)| v.to_string())
        .collect();
    if !not_red.is_empty() {
        return Ok(not(
            format!("vertices not red at the end: {}", not_red.join(",")),
            trace,
        ));
    }
    Ok(SequenceVerdict {
        kind: if all_green_steps {
            VerdictKind::MaximalGreen
        } else {
            VerdictKind::Reddening
        },
        length: s.len(),
        trace,
        failure_reason: None,
    })
}

/// Concatenates seed sequences of a triangular extension: `(s1, s2)` when
/// cross arrows leave the first part, `(s2, s1)` when they enter it.
pub fn compose_triangular(
    s1: &MutationSequence,
    s2: &MutationSequence,
    direction: Direction,
) -> Result<MutationSequence, QuiverError> {
    let a = s1.vertex_set();
    if let Some(v) = s2.steps().iter().find(|v| a.contains(*v)) {
        return Err(QuiverError::VertexCollision(v.clone()));
    }
    let (first, second) = match direction {
        Direction::Out => (s1, s2),
        Direction::In => (s2, s1),
    };
    Ok(first.steps().iter().chain(second.steps()).cloned().collect())
}
