//! Generators and independent oracles shared by the integration tests.
//!
//! The oracles work on plain arrow multisets and never call the library's
//! mutation code, so agreement with them is meaningful.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use qmut::{Quiver, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Arrows = BTreeMap<(String, String), i64>;

/// Arrow multiset of a quiver, keyed by `(from, to)`.
pub fn arrow_map(q: &Quiver) -> Arrows {
    q.arrows()
        .map(|(a, b, w)| ((a.as_str().to_owned(), b.as_str().to_owned()), w))
        .collect()
}

pub fn arrows_of(list: &[(&str, &str, i64)]) -> Arrows {
    list.iter()
        .map(|&(a, b, w)| ((a.to_owned(), b.to_owned()), w))
        .collect()
}

/// Mutation by the three-step recipe on an arrow multiset:
/// add `i -> j` for each path `i -> k -> j`, reverse the arrows at `k`,
/// cancel 2-cycles. Arrows between two frozen vertices are discarded.
pub fn oracle_mutate(frozen: &BTreeSet<String>, arrows: &Arrows, k: &str) -> Arrows {
    let mut counts: BTreeMap<(String, String), i64> = BTreeMap::new();
    let ins: Vec<(String, i64)> = arrows
        .iter()
        .filter(|((_, b), _)| b == k)
        .map(|((a, _), w)| (a.clone(), *w))
        .collect();
    let outs: Vec<(String, i64)> = arrows
        .iter()
        .filter(|((a, _), _)| a == k)
        .map(|((_, b), w)| (b.clone(), *w))
        .collect();
    // step 1
    for (i, wi) in &ins {
        for (j, wj) in &outs {
            *counts.entry((i.clone(), j.clone())).or_default() += wi * wj;
        }
    }
    // step 2
    for ((a, b), w) in arrows {
        let key = if a == k || b == k {
            (b.clone(), a.clone())
        } else {
            (a.clone(), b.clone())
        };
        *counts.entry(key).or_default() += w;
    }
    // step 3
    let mut out = Arrows::new();
    for ((a, b), w) in &counts {
        if frozen.contains(a) && frozen.contains(b) {
            continue;
        }
        let back = counts.get(&(b.clone(), a.clone())).copied().unwrap_or(0);
        if w > &back {
            out.insert((a.clone(), b.clone()), w - back);
        }
    }
    out
}

pub fn oracle_frame(q: &Quiver) -> (Vec<String>, BTreeSet<String>, Arrows) {
    let mutable: Vec<String> = q.mutable_vertices().map(|v| v.as_str().to_owned()).collect();
    let mut arrows = arrow_map(q);
    let mut frozen = BTreeSet::new();
    for v in &mutable {
        let c = format!("{v}'");
        arrows.insert((v.clone(), c.clone()), 1);
        frozen.insert(c);
    }
    (mutable, frozen, arrows)
}

pub fn oracle_green(frozen: &BTreeSet<String>, arrows: &Arrows, v: &str) -> bool {
    !arrows.keys().any(|(a, b)| b == v && frozen.contains(a))
}

pub fn oracle_red(frozen: &BTreeSet<String>, arrows: &Arrows, v: &str) -> bool {
    !arrows.keys().any(|(a, b)| a == v && frozen.contains(b))
}

/// Does `seq` redden `q` (and, with `green_only`, only at green vertices)?
pub fn oracle_check(q: &Quiver, seq: &[String], green_only: bool) -> bool {
    let (mutable, frozen, mut arrows) = oracle_frame(q);
    for k in seq {
        if !mutable.contains(k) {
            return false;
        }
        if green_only && !oracle_green(&frozen, &arrows, k) {
            return false;
        }
        arrows = oracle_mutate(&frozen, &arrows, k);
    }
    mutable.iter().all(|v| oracle_red(&frozen, &arrows, v))
}

/// Shortest reddening length by plain BFS over arrow multisets, or `None`
/// up to `max_len`.
pub fn oracle_shortest(q: &Quiver, max_len: usize, green_only: bool) -> Option<usize> {
    let (mutable, frozen, arrows) = oracle_frame(q);
    let all_red = |a: &Arrows| mutable.iter().all(|v| oracle_red(&frozen, a, v));
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(arrows.clone());
    queue.push_back((arrows, 0usize));
    while let Some((a, d)) = queue.pop_front() {
        if all_red(&a) {
            return Some(d);
        }
        if d == max_len {
            continue;
        }
        for k in &mutable {
            if green_only && !oracle_green(&frozen, &a, k) {
                continue;
            }
            let next = oracle_mutate(&frozen, &a, k);
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    None
}

pub fn vid(v: i64) -> VertexId {
    VertexId::from(v)
}

/// Random quiver on vertices `1..=n` with the last `frozen` of them
/// frozen; weights in `1..=max_w`, density about one half.
pub fn random_quiver(rng: &mut impl Rng, n: usize, frozen: usize, max_w: i64) -> Quiver {
    let mut b = Quiver::builder();
    let is_frozen = |i: usize| i > n - frozen.min(n);
    for i in 1..=n {
        b = if is_frozen(i) { b.frozen(i as i64) } else { b.mutable(i as i64) };
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if (is_frozen(i) && is_frozen(j)) || !rng.random_bool(0.5) {
                continue;
            }
            let w = rng.random_range(1..=max_w);
            b = if rng.random_bool(0.5) {
                b.arrow(i as i64, j as i64, w)
            } else {
                b.arrow(j as i64, i as i64, w)
            };
        }
    }
    b.build().expect("generated quiver is valid")
}

/// Random quiver on the given names, no frozen vertices.
pub fn random_named(rng: &mut impl Rng, names: &[VertexId], max_w: i64) -> Quiver {
    let mut b = Quiver::builder();
    for v in names {
        b = b.mutable(v.clone());
    }
    for (x, a) in names.iter().enumerate() {
        for c in &names[x + 1..] {
            if !rng.random_bool(0.5) {
                continue;
            }
            let w = rng.random_range(1..=max_w);
            b = if rng.random_bool(0.5) {
                b.arrow(a.clone(), c.clone(), w)
            } else {
                b.arrow(c.clone(), a.clone(), w)
            };
        }
    }
    b.build().expect("generated quiver is valid")
}

/// Restriction computed from the arrow list, independent of `Quiver::restrict`.
pub fn oracle_restrict(arrows: &Arrows, keep: &BTreeSet<String>) -> Arrows {
    arrows
        .iter()
        .filter(|((a, b), _)| keep.contains(a) && keep.contains(b))
        .map(|(k, w)| (k.clone(), *w))
        .collect()
}

/// Random explicit tower: a random quiver on up to `max_vertices`
/// vertices, with levels given by strictly growing prefixes of a shuffled
/// vertex order. Level sets are nested and each level is induced.
pub fn random_tower_levels(rng: &mut impl Rng, max_levels: usize, max_vertices: usize) -> Vec<Quiver> {
    let levels = rng.random_range(2..=max_levels);
    let n = rng.random_range(levels..=max_vertices);
    let top = random_quiver(rng, n, 0, 2);
    let mut order: Vec<i64> = (1..=n as i64).collect();
    order.shuffle(rng);
    // sizes: strictly increasing, ending at n
    let mut cuts: BTreeSet<usize> = BTreeSet::new();
    cuts.insert(n);
    while cuts.len() < levels {
        cuts.insert(rng.random_range(1..n));
    }
    cuts.into_iter()
        .map(|size| {
            let keep: Vec<VertexId> = order[..size].iter().map(|&v| vid(v)).collect();
            top.restrict(keep.iter()).expect("prefix of known vertices")
        })
        .collect()
}
