//! JSON documents for quivers, towers, schemes and verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;
use crate::families::{known_scheme, make_family, FamilyName, FamilySpec};
use crate::quiver::Quiver;
use crate::sequence::MutationSequence;
use crate::tower::{ReddeningScheme, Tower};
use crate::vertex::VertexId;

use super::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub from: VertexId,
    pub to: VertexId,
    #[serde(default = "one")]
    pub weight: i64,
}

fn one() -> i64 {
    1
}

/// `{ "mutable": [...], "frozen": [...], "arrows": [{"from","to","weight"}] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub mutable: Vec<VertexId>,
    #[serde(default)]
    pub frozen: Vec<VertexId>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

impl QuiverDoc {
    pub fn from_quiver(q: &Quiver) -> Self {
        QuiverDoc {
            mutable: q.mutable_vertices().cloned().collect(),
            frozen: q.frozen_vertices().cloned().collect(),
            arrows: q
                .arrows()
                .map(|(from, to, weight)| ArrowDoc {
                    from: from.clone(),
                    to: to.clone(),
                    weight,
                })
                .collect(),
        }
    }

    /// Validates and builds; duplicate arrows are summed.
    pub fn to_quiver(&self) -> Result<Quiver, QuiverError> {
        let mut b = Quiver::builder();
        for v in &self.mutable {
            b = b.mutable(v.clone());
        }
        for v in &self.frozen {
            b = b.frozen(v.clone());
        }
        for a in &self.arrows {
            b = b.arrow(a.from.clone(), a.to.clone(), a.weight);
        }
        b.build()
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver, Error> {
    let doc: QuiverDoc = serde_json::from_str(text)?;
    Ok(doc.to_quiver()?)
}

pub fn quiver_to_json(q: &Quiver) -> String {
    serde_json::to_string_pretty(&QuiverDoc::from_quiver(q)).expect("quiver serializes")
}

/// Explicit level list or a named family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TowerDoc {
    Explicit {
        levels: Vec<QuiverDoc>,
    },
    Family {
        family: FamilyName,
        #[serde(default)]
        params: BTreeMap<String, i64>,
    },
}

impl TowerDoc {
    pub fn from_levels<'a>(levels: impl IntoIterator<Item = &'a Quiver>) -> Self {
        TowerDoc::Explicit {
            levels: levels.into_iter().map(QuiverDoc::from_quiver).collect(),
        }
    }

    /// Builds the tower; explicit levels are checked against the chain
    /// invariants.
    pub fn to_tower(&self) -> Result<Tower, Error> {
        match self {
            TowerDoc::Explicit { levels } => {
                let qs = levels
                    .iter()
                    .map(QuiverDoc::to_quiver)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Tower::explicit(qs)?)
            }
            TowerDoc::Family { family, params } => Ok(make_family(&FamilySpec {
                name: *family,
                params: params.clone(),
            })?),
        }
    }

    /// The built-in scheme when this is a family document.
    pub fn family_scheme(&self) -> Option<Result<ReddeningScheme, Error>> {
        match self {
            TowerDoc::Explicit { .. } => None,
            TowerDoc::Family { family, params } => Some(
                known_scheme(&FamilySpec {
                    name: *family,
                    params: params.clone(),
                })
                .map_err(Error::from),
            ),
        }
    }
}

pub fn parse_tower(text: &str) -> Result<(TowerDoc, Tower), Error> {
    let doc: TowerDoc = serde_json::from_str(text)?;
    let t = doc.to_tower()?;
    Ok((doc, t))
}

/// `{ "levels": [["0"], ["0","-1","1"], ...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    pub levels: Vec<MutationSequence>,
}

impl SchemeDoc {
    pub fn to_scheme(&self) -> ReddeningScheme {
        ReddeningScheme::explicit(self.levels.clone())
    }
}
