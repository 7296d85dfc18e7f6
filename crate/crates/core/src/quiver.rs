//! Finite quivers stored as skew-symmetric signed multiplicity matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{QuiverError, Result};
use crate::vertex::VertexId;

/// A finite quiver with a mutable/frozen vertex partition.
///
/// `weight(v, w) = n > 0` means `n` parallel arrows `v -> w`; the matrix is
/// skew-symmetric, so loops and 2-cycles cannot be represented. Vertices are
/// kept sorted by [`VertexId`]'s order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    frozen: Vec<bool>,
    weights: Vec<i64>,
}

/// Green/red flags of a mutable vertex, computed from frozen-incident arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexStatus {
    /// No arrow from a frozen vertex into this vertex.
    pub green: bool,
    /// No arrow from this vertex into a frozen vertex.
    pub red: bool,
}

impl VertexStatus {
    pub fn is_mixed(self) -> bool {
        !self.green && !self.red
    }

    pub fn label(self) -> &'static str {
        match (self.green, self.red) {
            (true, false) => "green",
            (false, true) => "red",
            (false, false) => "mixed",
            (true, true) => "isolated",
        }
    }
}

impl Quiver {
    /// The quiver with no vertices.
    pub fn empty() -> Self {
        Quiver {
            vertices: Vec::new(),
            frozen: Vec::new(),
            weights: Vec::new(),
        }
    }

    pub fn builder() -> QuiverBuilder {
        QuiverBuilder::default()
    }

    /// Shorthand for a quiver with only mutable vertices.
    pub fn from_arrows<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        A: IntoIterator<Item = (VertexId, VertexId, i64)>,
    {
        let mut b = Quiver::builder();
        for v in vertices {
            b = b.mutable(v);
        }
        for (from, to, w) in arrows {
            b = b.arrow(from, to, w);
        }
        b.build()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn mutable_vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices
            .iter()
            .zip(&self.frozen)
            .filter(|(_, f)| !**f)
            .map(|(v, _)| v)
    }

    pub fn frozen_vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices
            .iter()
            .zip(&self.frozen)
            .filter(|(_, f)| **f)
            .map(|(v, _)| v)
    }

    pub fn has_frozen(&self) -> bool {
        self.frozen.iter().any(|f| *f)
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    fn require(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| QuiverError::UnknownVertex(v.clone()))
    }

    pub fn is_frozen(&self, v: &VertexId) -> Result<bool> {
        Ok(self.frozen[self.require(v)?])
    }

    pub fn is_mutable(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some_and(|i| !self.frozen[i])
    }

    /// Signed multiplicity of arrows `from -> to`.
    pub fn weight(&self, from: &VertexId, to: &VertexId) -> Result<i64> {
        let (i, j) = (self.require(from)?, self.require(to)?);
        Ok(self.w(i, j))
    }

    #[inline]
    fn w(&self, i: usize, j: usize) -> i64 {
        self.weights[i * self.vertices.len() + j]
    }

    /// Positive-weight arrows `(from, to, multiplicity)` in canonical order.
    pub fn arrows(&self) -> impl Iterator<Item = (&VertexId, &VertexId, i64)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| {
            (0..n).filter_map(move |j| {
                let w = self.w(i, j);
                (w > 0).then(|| (&self.vertices[i], &self.vertices[j], w))
            })
        })
    }

    /// Row-major signed matrix over [`Quiver::vertices`].
    pub fn weight_matrix(&self) -> &[i64] {
        &self.weights
    }

    /// Mutation at a mutable vertex `k`.
    ///
    /// Every 2-path `i -> k -> j` contributes an arrow `i -> j`, arrows at `k`
    /// are reversed, 2-cycles cancel through the signed sum, and arrows
    /// between frozen vertices are dropped.
    pub fn mutate(&self, k: &VertexId) -> Result<Quiver> {
        let kk = self.require(k)?;
        if self.frozen[kk] {
            return Err(QuiverError::FrozenVertexMutation(k.clone()));
        }
        let n = self.len();
        let mut out = self.weights.clone();
        for i in 0..n {
            let wik = self.w(i, kk);
            for j in 0..n {
                let idx = i * n + j;
                if i == kk || j == kk {
                    out[idx] = -self.w(i, j);
                    continue;
                }
                if self.frozen[i] && self.frozen[j] {
                    out[idx] = 0;
                    continue;
                }
                let wkj = self.w(kk, j);
                let prod = wik
                    .checked_mul(wkj)
                    .ok_or(QuiverError::ArithmeticOverflow)?;
                if prod > 0 {
                    let delta = if wik > 0 { prod } else { -prod };
                    out[idx] = out[idx]
                        .checked_add(delta)
                        .ok_or(QuiverError::ArithmeticOverflow)?;
                }
            }
        }
        Ok(Quiver {
            vertices: self.vertices.clone(),
            frozen: self.frozen.clone(),
            weights: out,
        })
    }

    /// Induced subquiver on `keep`, preserving tags and weights.
    pub fn restrict<'a, I>(&self, keep: I) -> Result<Quiver>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut idx = Vec::new();
        for v in keep {
            idx.push(self.require(v)?);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(self.select(&idx))
    }

    fn select(&self, idx: &[usize]) -> Quiver {
        let m = idx.len();
        let mut weights = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                weights.push(self.w(i, j));
            }
        }
        Quiver {
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            frozen: idx.iter().map(|&i| self.frozen[i]).collect(),
            weights,
        }
    }

    /// The same quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            frozen: self.frozen.clone(),
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }

    /// Green/red flags of mutable vertex `v`.
    pub fn status(&self, v: &VertexId) -> Result<VertexStatus> {
        let i = self.require(v)?;
        if self.frozen[i] {
            return Err(QuiverError::FrozenVertexQuery(v.clone()));
        }
        Ok(self.status_at(i))
    }

    pub(crate) fn status_at(&self, i: usize) -> VertexStatus {
        let mut st = VertexStatus {
            green: true,
            red: true,
        };
        for c in (0..self.len()).filter(|&c| self.frozen[c]) {
            let w = self.w(i, c);
            if w > 0 {
                st.red = false;
            } else if w < 0 {
                st.green = false;
            }
        }
        st
    }

    /// Statuses of all mutable vertices in canonical order.
    pub fn statuses(&self) -> Vec<(&VertexId, VertexStatus)> {
        (0..self.len())
            .filter(|&i| !self.frozen[i])
            .map(|i| (&self.vertices[i], self.status_at(i)))
            .collect()
    }

    pub(crate) fn from_parts(vertices: Vec<VertexId>, frozen: Vec<bool>, weights: Vec<i64>) -> Self {
        debug_assert_eq!(weights.len(), vertices.len() * vertices.len());
        Quiver {
            vertices,
            frozen,
            weights,
        }
    }

    /// Adds vertices and arrows from `other`; vertex sets must be disjoint.
    pub(crate) fn disjoint_union(&self, other: &Quiver) -> Result<Quiver> {
        let mut b = QuiverBuilder::default();
        for q in [self, other] {
            for (v, f) in q.vertices.iter().zip(&q.frozen) {
                if *f {
                    b = b.frozen(v.clone());
                } else {
                    b = b.mutable(v.clone());
                }
            }
        }
        b.collision_is_error = true;
        let mut u = b.build()?;
        let n = u.len();
        for q in [self, other] {
            let map: Vec<usize> = q.vertices.iter().map(|v| u.index_of(v).unwrap()).collect();
            for i in 0..q.len() {
                for j in 0..q.len() {
                    u.weights[map[i] * n + map[j]] = q.w(i, j);
                }
            }
        }
        Ok(u)
    }

    /// Adds `w` arrows `from -> to` to an existing pair.
    pub(crate) fn add_weight(&mut self, from: &VertexId, to: &VertexId, w: i64) -> Result<()> {
        let (i, j) = (self.require(from)?, self.require(to)?);
        let n = self.len();
        let nw = self.weights[i * n + j]
            .checked_add(w)
            .ok_or(QuiverError::ArithmeticOverflow)?;
        self.weights[i * n + j] = nw;
        self.weights[j * n + i] = -nw;
        Ok(())
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mutable: Vec<&VertexId> = self.mutable_vertices().collect();
        let frozen: Vec<&VertexId> = self.frozen_vertices().collect();
        let arrows: Vec<String> = self
            .arrows()
            .map(|(a, b, w)| {
                if w == 1 {
                    format!("{a}->{b}")
                } else {
                    format!("{a}-{w}->{b}")
                }
            })
            .collect();
        f.debug_struct("Quiver")
            .field("mutable", &mutable)
            .field("frozen", &frozen)
            .field("arrows", &arrows)
            .finish()
    }
}

/// Labelled equality: same vertices, same tags, same weights.
pub fn quivers_equal(a: &Quiver, b: &Quiver) -> bool {
    a == b
}

/// Validating constructor for [`Quiver`].
///
/// Duplicate `(from, to)` arrows are summed. Listing a pair in both
/// directions, loops, non-positive weights and frozen-frozen arrows are
/// rejected.
#[derive(Debug, Default, Clone)]
pub struct QuiverBuilder {
    mutable: Vec<VertexId>,
    frozen: Vec<VertexId>,
    arrows: Vec<(VertexId, VertexId, i64)>,
    collision_is_error: bool,
}

impl QuiverBuilder {
    pub fn mutable(mut self, v: impl Into<VertexId>) -> Self {
        self.mutable.push(v.into());
        self
    }

    pub fn frozen(mut self, v: impl Into<VertexId>) -> Self {
        self.frozen.push(v.into());
        self
    }

    pub fn arrow(mut self, from: impl Into<VertexId>, to: impl Into<VertexId>, weight: i64) -> Self {
        self.arrows.push((from.into(), to.into(), weight));
        self
    }

    pub fn build(self) -> Result<Quiver> {
        let mut tags: BTreeMap<VertexId, bool> = BTreeMap::new();
        for (v, f) in self
            .mutable
            .into_iter()
            .map(|v| (v, false))
            .chain(self.frozen.into_iter().map(|v| (v, true)))
        {
            if tags.contains_key(&v) {
                return Err(if self.collision_is_error {
                    QuiverError::VertexCollision(v)
                } else {
                    QuiverError::DuplicateVertex(v)
                });
            }
            tags.insert(v, f);
        }
        let vertices: Vec<VertexId> = tags.keys().cloned().collect();
        let frozen: Vec<bool> = tags.values().copied().collect();
        let n = vertices.len();
        let mut weights = vec![0i64; n * n];
        let mut listed: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (from, to, w) in self.arrows {
            let i = vertices
                .binary_search(&from)
                .map_err(|_| QuiverError::UnknownVertex(from.clone()))?;
            let j = vertices
                .binary_search(&to)
                .map_err(|_| QuiverError::UnknownVertex(to.clone()))?;
            let bad = |reason| QuiverError::InvalidArrow {
                from: from.clone(),
                to: to.clone(),
                reason,
            };
            if i == j {
                return Err(bad("loop"));
            }
            if w < 1 {
                return Err(bad("weight must be at least 1"));
            }
            if frozen[i] && frozen[j] {
                return Err(bad("arrow between frozen vertices"));
            }
            if listed.contains(&(j, i)) {
                return Err(bad("pair listed in both directions"));
            }
            listed.insert((i, j));
            let nw = weights[i * n + j]
                .checked_add(w)
                .ok_or(QuiverError::ArithmeticOverflow)?;
            weights[i * n + j] = nw;
            weights[j * n + i] = -nw;
        }
        Ok(Quiver {
            vertices,
            frozen,
            weights,
        })
    }
}
