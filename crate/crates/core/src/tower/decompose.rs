//! Towers built by successive triangular extensions, and the scheme they
//! carry: if every new layer `Wi = V(Qi) \ V(Qi-1)` hangs off the previous
//! level with all cross arrows pointing one way and both sides redden, the
//! layer seeds compose into a compatible scheme.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::quiver::Quiver;
use crate::search::{find_reddening, SearchOutcome};
use crate::sequence::{check_sequence, compose_triangular, Mode, MutationSequence};
use crate::triangular::{classify_triangular, CutKind};
use crate::vertex::VertexId;

use super::{ReddeningScheme, Tower, TowerError};

/// How level `level` extends the previous one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub level: usize,
    pub direction: CutKind,
    /// `Wi`; may be left empty in input documents and is then taken from
    /// the tower.
    #[serde(default)]
    pub added: Vec<VertexId>,
    /// Reddening sequence for the layer quiver `Qi|Wi`.
    pub seed: MutationSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularDecomposition {
    /// Reddening sequence for `Q1`.
    pub base_seed: MutationSequence,
    /// Layers for levels `2, 3, ...` in order.
    pub layers: Vec<Layer>,
}

impl TriangularDecomposition {
    pub fn depth(&self) -> usize {
        self.layers.len() + 1
    }
}

fn layer_vertices(lower: &Quiver, upper: &Quiver) -> Vec<VertexId> {
    upper
        .vertices()
        .iter()
        .filter(|v| !lower.contains(v))
        .cloned()
        .collect()
}

fn cut_kind(lower: &Quiver, upper: &Quiver, added: &[VertexId]) -> Result<CutKind, TowerError> {
    if added.is_empty() {
        return Ok(CutKind::Disjoint);
    }
    let part: BTreeSet<VertexId> = lower.vertices().iter().cloned().collect();
    if part.is_empty() {
        return Ok(CutKind::Disjoint);
    }
    Ok(classify_triangular(upper, &part)?)
}

fn seed_reddens(q: &Quiver, seed: &MutationSequence, level: usize) -> Result<(), TowerError> {
    let verdict = check_sequence(q, seed)?;
    if Mode::Reddening.accepts(verdict.kind) {
        Ok(())
    } else {
        Err(TowerError::SeedNotReddeningAt {
            level,
            reason: verdict.failure_reason.unwrap_or_default(),
        })
    }
}

/// Composes the layer seeds into a scheme for levels `1..=depth`:
/// `S1 = σ1`, `Si = (Si-1, τi)` for outgoing (or disjoint) cuts and
/// `(τi, Si-1)` for incoming ones.
///
/// The decomposition is validated against the tower first: each cut must
/// be triangular in the declared direction and every seed must redden its
/// part.
pub fn build_scheme(
    t: &Tower,
    d: &TriangularDecomposition,
    depth: usize,
) -> Result<ReddeningScheme, TowerError> {
    if depth == 0 {
        return Ok(ReddeningScheme::explicit(Vec::new()));
    }
    t.declared_depth().check(depth)?;
    if d.depth() < depth {
        return Err(TowerError::DepthExceeded {
            requested: depth,
            declared: d.depth(),
        });
    }
    let q1 = t.level(1)?;
    seed_reddens(&q1, &d.base_seed, 1)?;
    let mut out = vec![d.base_seed.clone()];
    for i in 2..=depth {
        let layer = &d.layers[i - 2];
        if layer.level != i {
            return Err(TowerError::InvalidDecomposition {
                level: i,
                reason: format!("layer is labelled level {}", layer.level),
            });
        }
        let (lower, upper) = (t.level(i - 1)?, t.level(i)?);
        let added = layer_vertices(&lower, &upper);
        if !layer.added.is_empty() && layer.added != added {
            return Err(TowerError::InvalidDecomposition {
                level: i,
                reason: "added vertices differ from the tower".into(),
            });
        }
        let actual = cut_kind(&lower, &upper, &added)?;
        if actual == CutKind::NotTriangular {
            return Err(TowerError::NotTriangularAt(i));
        }
        let agrees = layer.direction == actual
            || (actual == CutKind::Disjoint && layer.direction != CutKind::NotTriangular);
        if !agrees {
            return Err(TowerError::DirectionMismatchAt {
                level: i,
                declared: layer.direction,
                actual,
            });
        }
        seed_reddens(&upper.restrict(&added)?, &layer.seed, i)?;
        let dir = layer
            .direction
            .composition_direction()
            .ok_or(TowerError::NotTriangularAt(i))?;
        let next = compose_triangular(&out[i - 2], &layer.seed, dir)?;
        out.push(next);
    }
    Ok(ReddeningScheme::explicit(out))
}

fn seed_for(q: &Quiver, level: usize, max_len: usize) -> Result<MutationSequence, TowerError> {
    match find_reddening(q, max_len, Mode::Reddening)? {
        SearchOutcome::Found(s) => Ok(s),
        SearchOutcome::NoneUpTo(_) => Err(TowerError::NoSeedFoundUpTo { level, max_len }),
    }
}

/// Reads off the layers of `t` up to `depth` and searches a seed for `Q1`
/// and for every layer with the breadth-first oracle.
pub fn decompose_triangular(
    t: &Tower,
    depth: usize,
    seed_search_len: usize,
) -> Result<TriangularDecomposition, TowerError> {
    t.declared_depth().check(depth.max(1))?;
    let q1 = t.level(1)?;
    let base_seed = seed_for(&q1, 1, seed_search_len)?;
    let mut layers = Vec::new();
    for i in 2..=depth {
        let (lower, upper) = (t.level(i - 1)?, t.level(i)?);
        let added = layer_vertices(&lower, &upper);
        let direction = cut_kind(&lower, &upper, &added)?;
        if direction == CutKind::NotTriangular {
            return Err(TowerError::NotTriangularAt(i));
        }
        let seed = seed_for(&upper.restrict(&added)?, i, seed_search_len)?;
        layers.push(Layer {
            level: i,
            direction,
            added,
            seed,
        });
    }
    Ok(TriangularDecomposition { base_seed, layers })
}
