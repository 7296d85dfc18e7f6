//! Framed and coframed quivers.

use std::collections::BTreeMap;

use crate::error::{QuiverError, Result};
use crate::quiver::{Quiver, VertexStatus};
use crate::vertex::VertexId;

/// A quiver together with the frozen companion of each mutable vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedQuiver {
    quiver: Quiver,
    frame_map: BTreeMap<VertexId, VertexId>,
}

/// Adds `i -> i'` for every vertex `i` of an unframed quiver.
pub fn frame(q: &Quiver) -> Result<FramedQuiver> {
    attach(q, 1)
}

/// Adds `i' -> i` for every vertex `i` of an unframed quiver.
pub fn coframe(q: &Quiver) -> Result<FramedQuiver> {
    attach(q, -1)
}

fn attach(q: &Quiver, sign: i64) -> Result<FramedQuiver> {
    if q.has_frozen() {
        return Err(QuiverError::AlreadyFramed);
    }
    let n = q.len();
    let m = 2 * n;
    let companions: Vec<VertexId> = q.vertices().iter().map(VertexId::companion).collect();
    for c in &companions {
        if q.contains(c) {
            return Err(QuiverError::VertexCollision(c.clone()));
        }
    }
    let mut all: Vec<(VertexId, bool, Option<usize>)> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), false, Some(i)))
        .chain(companions.iter().map(|c| (c.clone(), true, None)))
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    let pos = |v: &VertexId| all.binary_search_by(|x| x.0.cmp(v)).unwrap();

    let mut weights = vec![0i64; m * m];
    let src = q.weight_matrix();
    for i in 0..n {
        let pi = pos(&q.vertices()[i]);
        for j in 0..n {
            let pj = pos(&q.vertices()[j]);
            weights[pi * m + pj] = src[i * n + j];
        }
        let pc = pos(&companions[i]);
        weights[pi * m + pc] = sign;
        weights[pc * m + pi] = -sign;
    }
    let frame_map = q
        .vertices()
        .iter()
        .cloned()
        .zip(companions)
        .collect();
    let quiver = Quiver::from_parts(
        all.iter().map(|x| x.0.clone()).collect(),
        all.iter().map(|x| x.1).collect(),
        weights,
    );
    Ok(FramedQuiver { quiver, frame_map })
}

impl FramedQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn into_quiver(self) -> Quiver {
        self.quiver
    }

    /// Mutable vertex to frozen companion.
    pub fn frame_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.frame_map
    }

    pub fn mutate(&self, k: &VertexId) -> Result<FramedQuiver> {
        Ok(FramedQuiver {
            quiver: self.quiver.mutate(k)?,
            frame_map: self.frame_map.clone(),
        })
    }

    pub fn status(&self, v: &VertexId) -> Result<VertexStatus> {
        self.quiver.status(v)
    }

    pub fn all_red(&self) -> bool {
        self.quiver.statuses().iter().all(|(_, s)| s.red)
    }

    pub fn all_green(&self) -> bool {
        self.quiver.statuses().iter().all(|(_, s)| s.green)
    }
}

/// Green/red flags of `v` in `fq`.
pub fn vertex_status(fq: &FramedQuiver, v: &VertexId) -> Result<VertexStatus> {
    fq.status(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_util::{q, v};

    #[test]
    fn frame_single_vertex() {
        let fq = frame(&q(&[1], &[])).unwrap();
        let expect = Quiver::builder()
            .mutable("1")
            .frozen("1'")
            .arrow("1", "1'", 1)
            .build()
            .unwrap();
        assert_eq!(fq.quiver(), &expect);
        assert_eq!(fq.frame_map()[&v(1)], "1'".into());
    }

    #[test]
    fn frame_is_all_green_coframe_all_red() {
        let a = q(&[1, 2, 3], &[(1, 2, 1), (2, 3, 2), (3, 1, 1)]);
        let f = frame(&a).unwrap();
        assert!(f.all_green());
        for (_, s) in f.quiver().statuses() {
            assert_eq!(s.label(), "green");
        }
        let c = coframe(&a).unwrap();
        assert!(c.all_red());
        for (_, s) in c.quiver().statuses() {
            assert_eq!(s.label(), "red");
        }
        // original arrows preserved
        assert_eq!(f.quiver().restrict(a.vertices()).unwrap(), a);
    }

    #[test]
    fn mutate_single_framed_vertex_turns_red() {
        let f = frame(&q(&[1], &[])).unwrap();
        let m = f.mutate(&v(1)).unwrap();
        let st = vertex_status(&m, &v(1)).unwrap();
        assert!(st.red && !st.green);
    }

    #[test]
    fn frame_rejects_framed_and_collisions() {
        let f = frame(&q(&[1], &[])).unwrap();
        assert_eq!(frame(f.quiver()), Err(QuiverError::AlreadyFramed));
        let clash = Quiver::builder().mutable("1").mutable("1'").build().unwrap();
        assert_eq!(frame(&clash), Err(QuiverError::VertexCollision("1'".into())));
    }

    #[test]
    fn frozen_query_rejected() {
        let f = frame(&q(&[1], &[])).unwrap();
        assert_eq!(
            vertex_status(&f, &"1'".into()),
            Err(QuiverError::FrozenVertexQuery("1'".into()))
        );
    }

    #[test]
    fn frame_coframe_duality() {
        let a = q(&[1, 2, 3], &[(1, 2, 1), (3, 2, 2)]);
        let lhs = frame(&a).unwrap().quiver().opposite();
        let rhs = coframe(&a.opposite()).unwrap().into_quiver();
        assert_eq!(lhs, rhs);
    }
}
