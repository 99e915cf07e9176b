//! Problem instances: an ordered partition of vertices plus a spread vector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Var;

/// The spread vector (t_1, ..., t_{d-1}); every entry is >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadVector(Vec<u32>);

impl SpreadVector {
    pub fn new(t: Vec<u32>) -> Result<Self> {
        if t.iter().any(|&ti| ti < 1) {
            return Err(Error::Parse("spread entries must be >= 1".into()));
        }
        Ok(SpreadVector(t))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// t_{j-1} for the gap between parts j-1 and j (1-based part index j >= 2).
    pub fn gap(&self, j: usize) -> u32 {
        self.0[j - 1]
    }
}

/// One part of the vertex partition: a strictly increasing vertex list,
/// with the interval form (start, length) recorded when contiguous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part {
    vertices: Vec<Var>,
    interval: Option<(Var, u32)>,
}

impl Part {
    pub fn new(vertices: Vec<Var>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Parse("empty part".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("part vertices must be strictly increasing".into()));
        }
        if vertices[0] < 1 {
            return Err(Error::Parse("vertices are positive integers".into()));
        }
        Ok(Part {
            interval: Part::detect_interval(&vertices),
            vertices,
        })
    }

    pub fn interval(from: Var, to: Var) -> Result<Self> {
        if from < 1 || to < from {
            return Err(Error::Parse(format!("bad interval [{from}, {to}]")));
        }
        Part::new((from..=to).collect())
    }

    fn detect_interval(vertices: &[Var]) -> Option<(Var, u32)> {
        let first = *vertices.first()?;
        let last = *vertices.last()?;
        (last - first + 1 == vertices.len() as u32).then_some((first, vertices.len() as u32))
    }

    pub fn vertices(&self) -> &[Var] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn min(&self) -> Var {
        self.vertices[0]
    }

    pub fn max(&self) -> Var {
        *self.vertices.last().unwrap()
    }

    /// (i_j, n_j) when the part is the interval [i_j, i_j + n_j - 1].
    pub fn interval_form(&self) -> Option<(Var, u32)> {
        self.interval
    }
}

/// The ordered family V_1, ..., V_d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionFamily {
    parts: Vec<Part>,
}

impl PartitionFamily {
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse("at least one part is required".into()));
        }
        for w in parts.windows(2) {
            if w[0].max() >= w[1].min() {
                return Err(Error::Parse(
                    "parts must be ordered: every vertex of V_i precedes every vertex of V_{i+1}"
                        .into(),
                ));
            }
        }
        Ok(PartitionFamily { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn is_interval_form(&self) -> bool {
        self.parts.iter().all(|p| p.interval_form().is_some())
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().map(Part::len).sum()
    }
}

/// A complete t-spread d-partite hypergraph instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadInstance {
    partition: PartitionFamily,
    spread: SpreadVector,
    pruned: bool,
}

impl SpreadInstance {
    pub fn new(partition: PartitionFamily, spread: SpreadVector) -> Result<Self> {
        if spread.entries().len() + 1 != partition.d() {
            return Err(Error::Parse(format!(
                "spread vector length {} does not match {} parts",
                spread.entries().len(),
                partition.d()
            )));
        }
        Ok(SpreadInstance {
            partition,
            spread,
            pruned: false,
        })
    }

    pub(crate) fn pruned_copy(partition: PartitionFamily, spread: SpreadVector) -> Self {
        SpreadInstance {
            partition,
            spread,
            pruned: true,
        }
    }

    pub fn partition(&self) -> &PartitionFamily {
        &self.partition
    }

    pub fn spread(&self) -> &SpreadVector {
        &self.spread
    }

    pub fn d(&self) -> usize {
        self.partition.d()
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn is_interval_form(&self) -> bool {
        self.partition.is_interval_form()
    }

    /// Parse the instance JSON schema:
    /// `{"parts": [[1,3],[5,5]] | [{"from":1,"to":3},...], "t": [3], ...}`
    /// or `{"explicit_parts": [[1,2,3],[5,7]], "t": [3]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.build()
    }
}

#[derive(Deserialize)]
struct RawInstance {
    #[serde(default)]
    parts: Option<Vec<RawInterval>>,
    #[serde(default)]
    explicit_parts: Option<Vec<Vec<Var>>>,
    t: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInterval {
    Pair([Var; 2]),
    FromTo { from: Var, to: Var },
}

impl RawInstance {
    fn build(self) -> Result<SpreadInstance> {
        let parts: Vec<Part> = match (self.parts, self.explicit_parts) {
            (Some(intervals), None) => intervals
                .into_iter()
                .map(|iv| match iv {
                    RawInterval::Pair([a, b]) => Part::interval(a, b),
                    RawInterval::FromTo { from, to } => Part::interval(from, to),
                })
                .collect::<Result<_>>()?,
            (None, Some(lists)) => lists.into_iter().map(Part::new).collect::<Result<_>>()?,
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "give either \"parts\" or \"explicit_parts\", not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Parse(
                    "missing \"parts\" or \"explicit_parts\"".into(),
                ))
            }
        };
        SpreadInstance::new(PartitionFamily::new(parts)?, SpreadVector::new(self.t)?)
    }
}
