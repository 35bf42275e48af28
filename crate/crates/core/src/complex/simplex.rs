use std::fmt;

use super::ComplexError;

/// A vertex label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonempty finite set of vertices, stored sorted.
///
/// The derived order is lexicographic on the sorted vertex lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Simplex, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(vertices.iter().map(|v| v.0).collect()));
        }
        Ok(Simplex(vertices))
    }

    pub fn from_ids(ids: &[u32]) -> Result<Simplex, ComplexError> {
        Simplex::new(ids.iter().map(|&i| VertexId(i)).collect())
    }

    pub fn vertex(v: VertexId) -> Simplex {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// The face obtained by deleting the `i`-th vertex; `None` for a vertex.
    pub fn facet(&self, i: usize) -> Option<Simplex> {
        if self.0.len() == 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// All nonempty faces, the simplex itself included.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(|mask| self.sub_by_mask(mask)).collect()
    }

    /// The face on the vertices selected by `mask`; `mask` must be nonzero.
    pub fn sub_by_mask(&self, mask: u64) -> Simplex {
        Simplex((0..self.0.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
    }

    /// The face on the vertices satisfying `keep`, if any.
    pub fn filter(&self, keep: impl Fn(VertexId) -> bool) -> Option<Simplex> {
        let v: Vec<VertexId> = self.0.iter().copied().filter(|v| keep(*v)).collect();
        (!v.is_empty()).then_some(Simplex(v))
    }

    /// The join `self * other`, defined when the vertex sets are disjoint.
    pub fn join(&self, other: &Simplex) -> Option<Simplex> {
        if self.0.iter().any(|v| other.contains(*v)) {
            return None;
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Some(Simplex(v))
    }

    /// Vertices of `self` not in `other`.
    pub fn minus(&self, other: &Simplex) -> Option<Simplex> {
        self.filter(|v| !other.contains(v))
    }

    pub fn intersects(&self, other: &Simplex) -> bool {
        self.0.iter().any(|v| other.contains(*v))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.0.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}
