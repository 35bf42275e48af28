//! Filtered simplicial complexes and their combinatorics.

mod ops;
mod simplex;
mod subdivide;

pub use ops::{
    clots, complexity, join_complex, link, order_vertices, residual, residual_mask, CanonicalDecomposition, Complexity, VertexOrder,
};
pub use simplex::{Simplex, VertexId};
pub use subdivide::{barycentric_subdivide, barycentric_subdivision, Subdivided};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::Range;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("repeated vertex in {0:?}")]
    RepeatedVertex(Vec<u32>),
    #[error("{simplex} is listed but its face {face} is missing")]
    NotClosed { simplex: Simplex, face: Simplex },
    #[error("filtration is not monotone: {face} has level {face_level} above {simplex} at level {level}")]
    NotMonotone { simplex: Simplex, level: usize, face: Simplex, face_level: usize },
    #[error("level {level} of {simplex} exceeds the formal dimension {n}")]
    LevelOutOfRange { simplex: Simplex, level: usize, n: usize },
    #[error("{0} is listed twice with different levels")]
    Conflict(Simplex),
    #[error("{0} is not a simplex of the complex")]
    Unknown(Simplex),
    #[error("the filtration is not full: {0}")]
    NotFull(String),
    #[error("the operation needs a nonempty complex")]
    Empty,
    #[error("invalid join: {0}")]
    Join(String),
    #[error("more than 64 vertices in one simplex")]
    TooLarge,
}

/// A connected component of `K_i \ K_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub level: usize,
    /// Position of this stratum among those of the same level.
    pub index: usize,
    /// Indices of the simplices in the stratum, ascending.
    pub simplices: Vec<usize>,
    pub regular: bool,
}

impl Stratum {
    /// Formal codimension `n - level`.
    pub fn codim(&self, n: usize) -> usize {
        n - self.level
    }
}

/// A finite simplicial complex with a filtration by closed subcomplexes
/// `K_0 ⊆ … ⊆ K_n = K`, recorded as the level `f(σ) = min{i : σ ∈ K_i}`.
///
/// Simplices are stored sorted by dimension and then lexicographically, so
/// the storage order is canonical.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    n: usize,
    simplices: Vec<Simplex>,
    levels: Vec<usize>,
    index: HashMap<Simplex, usize>,
    by_dim: Vec<Range<usize>>,
    boundary: Vec<Vec<usize>>,
    vertex_levels: HashMap<VertexId, usize>,
    strata: Vec<Stratum>,
    stratum_of: Vec<usize>,
    full: bool,
}

impl PartialEq for FilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.simplices == other.simplices && self.levels == other.levels
    }
}

impl Eq for FilteredComplex {}

impl FilteredComplex {
    /// Builds a filtered complex from every simplex and its level.
    ///
    /// Fails unless the simplices form a closed family and levels increase
    /// along faces. Repeats with the same level are tolerated.
    pub fn from_levels(n: usize, entries: impl IntoIterator<Item = (Simplex, usize)>) -> Result<Self, ComplexError> {
        let mut map: HashMap<Simplex, usize> = HashMap::new();
        for (s, l) in entries {
            if l > n {
                return Err(ComplexError::LevelOutOfRange { simplex: s, level: l, n });
            }
            if let Some(old) = map.insert(s.clone(), l) {
                if old != l {
                    return Err(ComplexError::Conflict(s));
                }
            }
        }
        let mut all: Vec<(Simplex, usize)> = map.into_iter().collect();
        all.sort_by(|a, b| a.0.dim().cmp(&b.0.dim()).then_with(|| a.0.cmp(&b.0)));
        Self::build(n, all)
    }

    /// Builds `K` as the closure of `facets`, filtered by the closures of
    /// the generators given for each level; simplices outside every listed
    /// level get level `n`.
    pub fn from_generators(
        n: usize,
        facets: &[Simplex],
        filtration: &BTreeMap<usize, Vec<Simplex>>,
    ) -> Result<Self, ComplexError> {
        let mut level: HashMap<Simplex, usize> = HashMap::new();
        for f in facets {
            if f.len() > 63 {
                return Err(ComplexError::TooLarge);
            }
            for face in f.faces() {
                level.insert(face, n);
            }
        }
        for (&l, gens) in filtration {
            if l > n {
                return Err(ComplexError::LevelOutOfRange { simplex: gens.first().cloned().unwrap_or_else(|| Simplex::vertex(VertexId(0))), level: l, n });
            }
            for g in gens {
                if !level.contains_key(g) {
                    return Err(ComplexError::Unknown(g.clone()));
                }
                for face in g.faces() {
                    let e = level.get_mut(&face).expect("faces of a simplex of K");
                    *e = (*e).min(l);
                }
            }
        }
        Self::from_levels(n, level)
    }

    /// The full filtration in which a simplex sits at the top level of its
    /// vertices.
    pub fn from_vertex_levels(
        n: usize,
        facets: &[Simplex],
        vertex_level: impl Fn(VertexId) -> usize,
    ) -> Result<Self, ComplexError> {
        let mut entries = Vec::new();
        for f in facets {
            if f.len() > 63 {
                return Err(ComplexError::TooLarge);
            }
            for face in f.faces() {
                let l = face.vertices().iter().map(|v| vertex_level(*v)).max().unwrap();
                entries.push((face, l));
            }
        }
        Self::from_levels(n, entries)
    }

    fn build(n: usize, all: Vec<(Simplex, usize)>) -> Result<Self, ComplexError> {
        let mut simplices = Vec::with_capacity(all.len());
        let mut levels = Vec::with_capacity(all.len());
        for (s, l) in all {
            if s.len() > 64 {
                return Err(ComplexError::TooLarge);
            }
            simplices.push(s);
            levels.push(l);
        }
        let index: HashMap<Simplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let top = simplices.last().map_or(0, |s| s.dim() + 1);
        let mut by_dim = vec![0..0; top];
        let mut start = 0;
        for (d, r) in by_dim.iter_mut().enumerate() {
            let end = start + simplices[start..].iter().take_while(|s| s.dim() == d).count();
            *r = start..end;
            start = end;
        }
        let mut boundary = Vec::with_capacity(simplices.len());
        for (i, s) in simplices.iter().enumerate() {
            let mut faces = Vec::with_capacity(s.len());
            if s.dim() > 0 {
                for k in 0..s.len() {
                    let face = s.facet(k).unwrap();
                    let Some(&j) = index.get(&face) else {
                        return Err(ComplexError::NotClosed { simplex: s.clone(), face });
                    };
                    if levels[j] > levels[i] {
                        return Err(ComplexError::NotMonotone {
                            simplex: s.clone(),
                            level: levels[i],
                            face,
                            face_level: levels[j],
                        });
                    }
                    faces.push(j);
                }
            }
            boundary.push(faces);
        }
        let vertex_levels = simplices
            .iter()
            .zip(&levels)
            .filter(|(s, _)| s.dim() == 0)
            .map(|(s, l)| (s.vertices()[0], *l))
            .collect();
        let mut k = FilteredComplex {
            n,
            simplices,
            levels,
            index,
            by_dim,
            boundary,
            vertex_levels,
            strata: Vec::new(),
            stratum_of: Vec::new(),
            full: false,
        };
        k.compute_strata();
        k.full = k.fullness_witness().is_none();
        Ok(k)
    }

    fn compute_strata(&mut self) {
        let len = self.simplices.len();
        let mut parent: Vec<usize> = (0..len).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..len {
            for &j in &self.boundary[i] {
                if self.levels[j] == self.levels[i] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..len {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut list: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut list {
            g.sort_unstable();
        }
        let least = |g: &Vec<usize>| g.iter().map(|&i| &self.simplices[i]).min().unwrap().clone();
        list.sort_by(|a, b| self.levels[a[0]].cmp(&self.levels[b[0]]).then_with(|| least(a).cmp(&least(b))));
        let mut stratum_of = vec![0; len];
        let mut strata = Vec::with_capacity(list.len());
        let mut per_level: BTreeMap<usize, usize> = BTreeMap::new();
        for (si, g) in list.into_iter().enumerate() {
            let level = self.levels[g[0]];
            for &i in &g {
                stratum_of[i] = si;
            }
            let idx = per_level.entry(level).or_insert(0);
            strata.push(Stratum { level, index: *idx, simplices: g, regular: level == self.n });
            *idx += 1;
        }
        self.strata = strata;
        self.stratum_of = stratum_of;
    }

    /// Formal dimension `n` of the filtration.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn level(&self, i: usize) -> usize {
        self.levels[i]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Level of a simplex given by its vertices.
    pub fn level_of(&self, s: &Simplex) -> Option<usize> {
        self.index_of(s).map(|i| self.levels[i])
    }

    pub fn vertex_level(&self, v: VertexId) -> Option<usize> {
        self.vertex_levels.get(&v).copied()
    }

    /// Index range of the `d`-simplices.
    pub fn dim_range(&self, d: usize) -> Range<usize> {
        self.by_dim.get(d).cloned().unwrap_or(0..0)
    }

    pub fn count_dim(&self, d: usize) -> usize {
        self.dim_range(d).len()
    }

    /// Position of simplex `i` among the simplices of its dimension.
    pub fn position_in_dim(&self, i: usize) -> usize {
        i - self.by_dim[self.simplices[i].dim()].start
    }

    /// Indices of the codimension-one faces, the `k`-th obtained by
    /// deleting the `k`-th vertex.
    pub fn facets_of(&self, i: usize) -> &[usize] {
        &self.boundary[i]
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.dim_range(0).map(|i| self.simplices[i].vertices()[0]).collect()
    }

    /// Indices of the maximal simplices.
    pub fn maximal_simplices(&self) -> Vec<usize> {
        let mut has_coface = vec![false; self.len()];
        for b in &self.boundary {
            for &j in b {
                has_coface[j] = true;
            }
        }
        (0..self.len()).filter(|&i| !has_coface[i]).collect()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum_of(&self, i: usize) -> usize {
        self.stratum_of[i]
    }

    /// Finds a stratum by level and position within the level.
    pub fn stratum_by_key(&self, level: usize, index: usize) -> Option<usize> {
        self.strata.iter().position(|s| s.level == level && s.index == index)
    }

    pub fn is_regular(&self, i: usize) -> bool {
        self.levels[i] == self.n
    }

    /// Simplices of `K_i \ K_{i-1}`.
    pub fn simplices_at_level(&self, level: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.levels[i] == level).collect()
    }

    /// Every simplex is determined by its vertices: for each simplex and
    /// level, the vertices at or below that level span a face at or below
    /// that level whenever they are nonempty.
    pub fn is_full(&self) -> bool {
        self.full
    }

    /// A simplex and level violating fullness, if any.
    pub fn fullness_witness(&self) -> Option<(usize, usize)> {
        for (i, s) in self.simplices.iter().enumerate() {
            let mut vl: Vec<usize> = s.vertices().iter().map(|v| self.vertex_levels[v]).collect();
            vl.sort_unstable();
            vl.dedup();
            for &l in &vl {
                let face = s.filter(|v| self.vertex_levels[&v] <= l).unwrap();
                if self.level_of(&face).is_none_or(|fl| fl > l) {
                    return Some((i, l));
                }
            }
            if self.levels[i] != *vl.last().unwrap() {
                return Some((i, self.levels[i]));
            }
        }
        None
    }

    /// Fails with a witness unless the filtration is full.
    pub fn require_full(&self) -> Result<(), ComplexError> {
        match self.fullness_witness() {
            None => Ok(()),
            Some((i, l)) => Err(ComplexError::NotFull(format!(
                "the vertices of {} at level <= {l} do not span a face at level {l}",
                self.simplices[i]
            ))),
        }
    }

    /// The sub-family of simplices satisfying `keep` with the induced
    /// filtration. Fails if the family is not closed.
    pub fn subcomplex(&self, keep: impl Fn(usize) -> bool) -> Result<FilteredComplex, ComplexError> {
        Self::from_levels(self.n, (0..self.len()).filter(|&i| keep(i)).map(|i| (self.simplices[i].clone(), self.levels[i])))
    }

    /// The closed subcomplex `K_i`.
    pub fn skeleton_level(&self, level: usize) -> FilteredComplex {
        self.subcomplex(|i| self.levels[i] <= level).expect("filtration levels are closed")
    }

    /// Indices in `self` of the simplices of `sub`, or an error if `sub` is
    /// not a subcomplex with the induced filtration.
    pub fn embed(&self, sub: &FilteredComplex) -> Result<Vec<usize>, ComplexError> {
        sub.simplices
            .iter()
            .zip(&sub.levels)
            .map(|(s, l)| match self.index_of(s) {
                Some(i) if self.levels[i] == *l => Ok(i),
                Some(_) => Err(ComplexError::Conflict(s.clone())),
                None => Err(ComplexError::Unknown(s.clone())),
            })
            .collect()
    }

    /// Canonical decomposition `σ = σ_0 * … * σ_n` of simplex `i`, where
    /// `σ_ℓ` holds the vertices at level `ℓ`.
    pub fn decompose(&self, i: usize) -> CanonicalDecomposition {
        let mut parts = vec![Vec::new(); self.n + 1];
        for v in self.simplices[i].vertices() {
            parts[self.vertex_levels[v]].push(*v);
        }
        CanonicalDecomposition { parts }
    }

    /// Index of the face `σ_0 * … * σ_ℓ`, if nonempty.
    pub fn face_up_to(&self, i: usize, level: usize) -> Option<usize> {
        let s = &self.simplices[i];
        let face = s.filter(|v| self.vertex_levels[&v] <= level)?;
        if face.len() == s.len() {
            return Some(i);
        }
        self.index_of(&face)
    }

    /// The stratum `S_ℓ` met by simplex `i` at level `ℓ`, if `ℓ ∈ I_σ`.
    pub fn stratum_at(&self, i: usize, level: usize) -> Option<usize> {
        let s = &self.simplices[i];
        if !s.vertices().iter().any(|v| self.vertex_levels[v] == level) {
            return None;
        }
        self.face_up_to(i, level).map(|j| self.stratum_of[j])
    }

    /// Levels `I_σ` at which simplex `i` has vertices.
    pub fn level_set(&self, i: usize) -> Vec<usize> {
        let set: HashSet<usize> = self.simplices[i].vertices().iter().map(|v| self.vertex_levels[v]).collect();
        let mut v: Vec<usize> = set.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Proper cofaces of simplex `i`.
    pub fn cofaces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        (self.dim_range(s.dim()).end..self.len()).filter(|&j| s.is_face_of(&self.simplices[j])).collect()
    }

    /// The same complex with the formal dimension changed.
    pub fn with_n(&self, n: usize) -> Result<FilteredComplex, ComplexError> {
        Self::from_levels(n, self.simplices.iter().cloned().zip(self.levels.iter().copied()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids).unwrap()
    }

    fn triangle_flag() -> FilteredComplex {
        FilteredComplex::from_vertex_levels(2, &[s(&[0, 1, 2])], |v| v.0 as usize).unwrap()
    }

    #[test]
    fn rejects_open_families() {
        let e = FilteredComplex::from_levels(1, [(s(&[0, 1]), 1), (s(&[0]), 0)]);
        assert!(matches!(e, Err(ComplexError::NotClosed { .. })));
        let m = FilteredComplex::from_levels(1, [(s(&[0, 1]), 0), (s(&[0]), 1), (s(&[1]), 0)]);
        assert!(matches!(m, Err(ComplexError::NotMonotone { .. })));
    }

    #[test]
    fn flag_filtration_is_full() {
        let k = triangle_flag();
        assert_eq!(k.len(), 7);
        assert!(k.is_full());
        assert_eq!(k.strata().len(), 3);
        assert_eq!(k.decompose(6).parts, vec![vec![VertexId(0)], vec![VertexId(1)], vec![VertexId(2)]]);
    }

    #[test]
    fn skeleton_filtration_is_not_full() {
        let mut f = BTreeMap::new();
        f.insert(0usize, vec![s(&[0]), s(&[1]), s(&[2])]);
        f.insert(1usize, vec![s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]);
        let k = FilteredComplex::from_generators(2, &[s(&[0, 1, 2])], &f).unwrap();
        assert!(!k.is_full());
        assert!(k.require_full().is_err());
    }

    #[test]
    fn strata_are_components() {
        // two singular points joined through a regular edge
        let k = FilteredComplex::from_vertex_levels(1, &[s(&[0, 1]), s(&[1, 2])], |v| if v.0 == 1 { 1 } else { 0 }).unwrap();
        let sing: Vec<&Stratum> = k.strata().iter().filter(|st| !st.regular).collect();
        assert_eq!(sing.len(), 2);
        assert_eq!(k.strata().iter().filter(|st| st.regular).count(), 1);
    }

    #[test]
    fn top_simplices_have_no_cofaces() {
        let k = triangle_flag();
        let top = k.index_of(&s(&[0, 1, 2])).unwrap();
        assert!(k.cofaces(top).is_empty());
        assert_eq!(k.cofaces(k.index_of(&s(&[0])).unwrap()).len(), 3);
    }
}
