//! Built-in towers: one-sided and two-sided paths, stars with `p` rays, and
//! nested oriented triangles.
//!
//! Vertex names are global, so level `i` is literally a subquiver of level
//! `i + 1`:
//!
//! * `path_one_sided`: `1 -> 2 -> ... -> i`.
//! * `path_bi_source`: `-(i-1) -> ... -> 0 -> ... -> i-1`.
//! * `path_bi_center_out`: same vertices, arrows pointing away from `0`.
//! * `star`: center `0` with rays `0 -> 1x -> 2x -> ...` for ray labels
//!   `x = a, b, ...`; level `i` has rays of length `i - 1`.
//! * `nested_triangles`: ring `r` is the 3-cycle `ra -> rb -> rc -> ra`;
//!   even rings receive arrows from the ring inside them and odd rings
//!   `r >= 3` send arrows to the ring inside them (`1x -> 2x`, `3x -> 2x`,
//!   `3x -> 4x`, `5x -> 4x`, ...): the pattern of the first four rings
//!   continued with period 2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::Quiver;
use crate::sequence::MutationSequence;
use crate::tower::{build_scheme, decompose_triangular, Depth, LevelSource, ReddeningScheme, Tower, TowerError};
use crate::vertex::VertexId;

/// Seed search bound used by schemes derived through triangular
/// decomposition.
pub const SEED_SEARCH_LEN: usize = 6;

const RAY_LABELS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    PathOneSided,
    PathBiSource,
    PathBiCenterOut,
    Star,
    NestedTriangles,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [
        FamilyName::PathOneSided,
        FamilyName::PathBiSource,
        FamilyName::PathBiCenterOut,
        FamilyName::Star,
        FamilyName::NestedTriangles,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::PathOneSided => "path_one_sided",
            FamilyName::PathBiSource => "path_bi_source",
            FamilyName::PathBiCenterOut => "path_bi_center_out",
            FamilyName::Star => "star",
            FamilyName::NestedTriangles => "nested_triangles",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FamilyName::PathOneSided => "path 1 -> 2 -> ... growing to the right",
            FamilyName::PathBiSource => "path -(i-1) -> ... -> i-1 growing in both directions",
            FamilyName::PathBiCenterOut => "path centered at 0 with arrows pointing away from 0",
            FamilyName::Star => "center 0 with p outward rays 0 -> 1x -> 2x -> ...",
            FamilyName::NestedTriangles => "nested oriented 3-cycles with alternating inter-ring arrows",
        }
    }

    /// Parameters and their defaults.
    pub fn default_params(self) -> BTreeMap<String, i64> {
        match self {
            FamilyName::Star => [("p".to_owned(), 3)].into_iter().collect(),
            _ => BTreeMap::new(),
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: FamilyName,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
}

impl FamilySpec {
    pub fn new(name: FamilyName) -> Self {
        FamilySpec {
            name,
            params: BTreeMap::new(),
        }
    }

    pub fn star(p: i64) -> Self {
        FamilySpec {
            name: FamilyName::Star,
            params: [("p".to_owned(), p)].into_iter().collect(),
        }
    }

    /// Params merged over defaults; unknown keys are rejected.
    fn resolved(&self) -> Result<BTreeMap<String, i64>, FamilyError> {
        let mut out = self.name.default_params();
        for (k, v) in &self.params {
            if !out.contains_key(k) {
                return Err(FamilyError::BadParams(format!(
                    "{} takes no parameter {k:?}",
                    self.name
                )));
            }
            out.insert(k.clone(), *v);
        }
        Ok(out)
    }

    fn rays(&self) -> Result<usize, FamilyError> {
        let p = self.resolved()?["p"];
        if !(1..=RAY_LABELS.len() as i64).contains(&p) {
            return Err(FamilyError::BadParams(format!(
                "star needs 1 <= p <= {}, got {p}",
                RAY_LABELS.len()
            )));
        }
        Ok(p as usize)
    }
}

fn ray_token(j: usize, label: u8) -> VertexId {
    VertexId::new(format!("{j}{}", label as char))
}

/// Splits `"12b"` into `(12, b'b')`.
fn split_layered(v: &VertexId) -> Option<(usize, u8)> {
    let s = v.as_str();
    let (&last, head) = s.as_bytes().split_last()?;
    if !last.is_ascii_lowercase() || head.is_empty() || !head.iter().all(u8::is_ascii_digit) {
        return None;
    }
    let n: usize = std::str::from_utf8(head).ok()?.parse().ok()?;
    (n >= 1 && !(head.len() > 1 && head[0] == b'0')).then_some((n, last))
}

fn canonical_int(v: &VertexId) -> Option<i64> {
    let n: i64 = v.as_str().parse().ok()?;
    (n.to_string() == v.as_str()).then_some(n)
}

struct FamilyLevels {
    name: FamilyName,
    rays: usize,
}

impl FamilyLevels {
    fn build(&self, i: usize) -> Result<Quiver, TowerError> {
        let mut b = Quiver::builder();
        let r = i as i64 - 1;
        match self.name {
            FamilyName::PathOneSided => {
                for v in 1..=i as i64 {
                    b = b.mutable(v);
                    if v > 1 {
                        b = b.arrow(v - 1, v, 1);
                    }
                }
            }
            FamilyName::PathBiSource => {
                for v in -r..=r {
                    b = b.mutable(v);
                    if v > -r {
                        b = b.arrow(v - 1, v, 1);
                    }
                }
            }
            FamilyName::PathBiCenterOut => {
                for v in -r..=r {
                    b = b.mutable(v);
                }
                for d in 0..r {
                    b = b.arrow(d, d + 1, 1).arrow(-d, -d - 1, 1);
                }
            }
            FamilyName::Star => {
                b = b.mutable(0i64);
                for &x in &RAY_LABELS[..self.rays] {
                    for j in 1..i {
                        b = b.mutable(ray_token(j, x));
                        let prev = if j == 1 { VertexId::from(0i64) } else { ray_token(j - 1, x) };
                        b = b.arrow(prev, ray_token(j, x), 1);
                    }
                }
            }
            FamilyName::NestedTriangles => {
                for ring in 1..=i {
                    let [a, bb, c] = (*b"abc").map(|x| ray_token(ring, x));
                    b = b
                        .mutable(a.clone())
                        .mutable(bb.clone())
                        .mutable(c.clone())
                        .arrow(a.clone(), bb.clone(), 1)
                        .arrow(bb, c.clone(), 1)
                        .arrow(c, a, 1);
                    if ring >= 2 {
                        for x in *b"abc" {
                            let (inner, outer) = (ray_token(ring - 1, x), ray_token(ring, x));
                            b = if ring % 2 == 0 {
                                b.arrow(inner, outer, 1)
                            } else {
                                b.arrow(outer, inner, 1)
                            };
                        }
                    }
                }
            }
        }
        Ok(b.build()?)
    }
}

impl LevelSource for FamilyLevels {
    fn level(&self, i: usize) -> Result<Quiver, TowerError> {
        self.build(i)
    }

    fn first_level_of(&self, v: &VertexId) -> Option<usize> {
        match self.name {
            FamilyName::PathOneSided => {
                let n = canonical_int(v)?;
                (n >= 1).then_some(n as usize)
            }
            FamilyName::PathBiSource | FamilyName::PathBiCenterOut => {
                Some(canonical_int(v)?.unsigned_abs() as usize + 1)
            }
            FamilyName::Star => {
                if v.as_str() == "0" {
                    return Some(1);
                }
                let (j, x) = split_layered(v)?;
                RAY_LABELS[..self.rays].contains(&x).then_some(j + 1)
            }
            FamilyName::NestedTriangles => {
                let (ring, x) = split_layered(v)?;
                (b'a'..=b'c').contains(&x).then_some(ring)
            }
        }
    }
}

/// The unbounded tower of a family.
pub fn make_family(spec: &FamilySpec) -> Result<Tower, FamilyError> {
    let rays = match spec.name {
        FamilyName::Star => spec.rays()?,
        _ => {
            spec.resolved()?;
            0
        }
    };
    Ok(Tower::from_source(
        Arc::new(FamilyLevels {
            name: spec.name,
            rays,
        }),
        Depth::Unbounded,
    ))
}

/// A reddening scheme for the family's tower.
///
/// Paths and stars use their closed forms. `path_one_sided` and
/// `nested_triangles` are produced level by level through
/// [`decompose_triangular`] and [`build_scheme`].
pub fn known_scheme(spec: &FamilySpec) -> Result<ReddeningScheme, FamilyError> {
    let tower = make_family(spec)?;
    Ok(match spec.name {
        FamilyName::PathBiSource => ReddeningScheme::from_fn(Depth::Unbounded, |i| {
            let r = i as i64 - 1;
            Ok((-r..=r).collect())
        }),
        FamilyName::PathBiCenterOut => ReddeningScheme::from_fn(Depth::Unbounded, |i| {
            let mut s = MutationSequence::from_iter([0i64]);
            for d in 1..i as i64 {
                s.push((-d).into());
                s.push(d.into());
            }
            Ok(s)
        }),
        FamilyName::Star => {
            let rays = spec.rays()?;
            ReddeningScheme::from_fn(Depth::Unbounded, move |i| {
                let mut s = MutationSequence::from_iter([0i64]);
                for j in 1..i {
                    for &x in &RAY_LABELS[..rays] {
                        s.push(ray_token(j, x));
                    }
                }
                Ok(s)
            })
        }
        FamilyName::PathOneSided | FamilyName::NestedTriangles => {
            ReddeningScheme::from_fn(Depth::Unbounded, move |i| {
                let d = decompose_triangular(&tower, i, SEED_SEARCH_LEN)?;
                build_scheme(&tower, &d, i)?.sequence(i)
            })
        }
    })
}

/// Names, defaults and descriptions of all families.
pub fn catalog() -> Vec<(FamilyName, BTreeMap<String, i64>, &'static str)> {
    FamilyName::ALL
        .into_iter()
        .map(|f| (f, f.default_params(), f.description()))
        .collect()
}
