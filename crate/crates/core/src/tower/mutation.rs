use std::sync::Arc;

use crate::quiver::Quiver;
use crate::vertex::VertexId;

use super::{LevelSource, Tower, TowerError};

/// A tower with pending mutations, evaluated lazily.
///
/// Level `i` is obtained by mutating the base at level
/// `m = max(i, j1, ..., jn)` (each `j` the first level of its vertex) and
/// restricting to the base vertex set of level `i`. Restriction commutes
/// with mutation at a vertex inside the kept set, so this agrees with
/// applying the single-vertex rule one mutation at a time.
#[derive(Debug, Clone)]
pub struct MutatedTower {
    base: Tower,
    pending: Vec<(VertexId, usize)>,
}

/// Mutation of a tower at `k`.
pub fn mutate_tower(t: &Tower, k: &VertexId) -> Result<MutatedTower, TowerError> {
    let j = t.first_level(k)?;
    Ok(MutatedTower {
        base: t.clone(),
        pending: vec![(k.clone(), j)],
    })
}

impl MutatedTower {
    pub fn base(&self) -> &Tower {
        &self.base
    }

    /// `(vertex, first level)` pairs, in application order.
    pub fn pending(&self) -> &[(VertexId, usize)] {
        &self.pending
    }

    /// Appends another mutation.
    pub fn mutate(&self, k: &VertexId) -> Result<MutatedTower, TowerError> {
        let j = self.base.first_level(k)?;
        let mut pending = self.pending.clone();
        pending.push((k.clone(), j));
        Ok(MutatedTower {
            base: self.base.clone(),
            pending,
        })
    }

    pub fn level(&self, i: usize) -> Result<Quiver, TowerError> {
        self.base.declared_depth().check(i)?;
        let top = self.pending.iter().map(|(_, j)| *j).fold(i, usize::max);
        let mut q = (*self.base.level(top)?).clone();
        for (k, _) in &self.pending {
            q = q.mutate(k)?;
        }
        if top == i {
            Ok(q)
        } else {
            Ok(q.restrict(self.base.level(i)?.vertices())?)
        }
    }

    /// The mutated tower as a [`Tower`] with the same declared depth.
    pub fn tower(&self) -> Tower {
        Tower::from_source(Arc::new(self.clone()), self.base.declared_depth())
    }
}

impl LevelSource for MutatedTower {
    fn level(&self, i: usize) -> Result<Quiver, TowerError> {
        MutatedTower::level(self, i)
    }

    fn first_level_of(&self, v: &VertexId) -> Option<usize> {
        self.base.first_level(v).ok()
    }
}
