use std::collections::HashMap;
use std::ops::Range;

use super::BlowupError;
use crate::algebra::{FreeComplex, Integer, Integers, Lattice, SparseMatrix, Step, allowed_subcomplex_lattices};
use crate::complex::{FilteredComplex, VertexId};
use crate::extint::ExtInt;

/// A simplex split as a join `Δ = Δ_0 * … * Δ_n`; each part is sorted and
/// possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecomposedSimplex {
    pub parts: Vec<Vec<VertexId>>,
}

impl DecomposedSimplex {
    pub fn new(mut parts: Vec<Vec<VertexId>>) -> Result<Self, BlowupError> {
        if parts.is_empty() {
            return Err(BlowupError::Contract("a decomposition needs at least one part".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for p in &mut parts {
            p.sort_unstable();
            for v in p.iter() {
                if !seen.insert(*v) {
                    return Err(BlowupError::Contract(format!("vertex {} appears twice", v.0)));
                }
            }
        }
        Ok(DecomposedSimplex { parts })
    }

    /// Parts of the given sizes on consecutive vertex ids.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self, BlowupError> {
        let mut next = 0u32;
        let parts = sizes
            .iter()
            .map(|&s| {
                let p: Vec<VertexId> = (next..next + s as u32).map(VertexId).collect();
                next += s as u32;
                p
            })
            .collect();
        Self::new(parts)
    }

    /// The canonical decomposition of simplex `i` of `k`.
    pub fn of_simplex(k: &FilteredComplex, i: usize) -> Self {
        DecomposedSimplex { parts: k.decompose(i).parts }
    }

    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn is_regular(&self) -> bool {
        !self.parts[self.n()].is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// All vertices, part by part.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.parts.concat()
    }

    /// The simplex with one level per part, as a full filtered complex.
    pub fn as_complex(&self) -> Result<FilteredComplex, BlowupError> {
        let level: HashMap<VertexId, usize> =
            self.parts.iter().enumerate().flat_map(|(l, p)| p.iter().map(move |v| (*v, l))).collect();
        let s = crate::complex::Simplex::new(self.vertices())?;
        Ok(FilteredComplex::from_vertex_levels(self.n(), &[s], |v| level[&v])?)
    }
}

/// One factor `(F_i, ε_i)` of a face of the blow-up: the vertices of
/// `F_i` and whether the cone apex is included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartFace {
    pub vertices: Vec<VertexId>,
    pub cone: bool,
}

impl PartFace {
    /// `dim(F, 0) = dim F`, `dim(F, 1) = dim F + 1`, `dim(∅, 1) = 0`.
    pub fn dim(&self) -> usize {
        self.vertices.len() + self.cone as usize - 1
    }
}

/// Alexander–Whitney product of two faces of a cone or simplex with the
/// apex greatest: nonzero only when the last vertex of `a` is the first of `b`.
pub(crate) fn part_cup(a: &PartFace, b: &PartFace) -> Option<PartFace> {
    if a.cone {
        return (b.vertices.is_empty() && b.cone).then(|| a.clone());
    }
    let last = *a.vertices.last()?;
    if b.vertices.first() != Some(&last) {
        return None;
    }
    let mut vertices = a.vertices.clone();
    vertices.extend_from_slice(&b.vertices[1..]);
    Some(PartFace { vertices, cone: b.cone })
}

/// A face `(F, ε) = (F_0, ε_0) × … × (F_n, ε_n)` of the blow-up
/// `cΔ_0 × … × cΔ_{n-1} × Δ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlownUpFace {
    pub parts: Vec<PartFace>,
}

impl BlownUpFace {
    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(PartFace::dim).sum()
    }

    /// `|(F, ε)|_{>j}`.
    pub fn degree_above(&self, j: usize) -> usize {
        self.parts[j + 1..].iter().map(PartFace::dim).sum()
    }

    /// `‖1_{(F,ε)}‖_ℓ`: `-∞` if `ε_{n-ℓ} = 1`, else `|(F, ε)|_{>n-ℓ}`.
    pub fn perverse_degree(&self, l: usize) -> Result<ExtInt, BlowupError> {
        let n = self.n();
        if l == 0 || l > n {
            return Err(BlowupError::Contract(format!("perverse degree index {l} outside 1..={n}")));
        }
        let i = n - l;
        Ok(if self.parts[i].cone { ExtInt::NegInf } else { ExtInt::from(self.degree_above(i)) })
    }

    /// `ε_i` for every part.
    pub fn epsilon(&self) -> Vec<bool> {
        self.parts.iter().map(|p| p.cone).collect()
    }

    /// All vertices of `F`.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.parts.iter().flat_map(|p| p.vertices.iter().copied()).collect()
    }
}

/// Sign exponent of the Koszul rule for `(a_0 ⊗ … ⊗ a_n)(b_0 ⊗ … ⊗ b_n)`.
fn koszul_exponent(a: &BlownUpFace, b: &BlownUpFace) -> usize {
    let mut e = 0;
    for i in 0..a.parts.len() {
        for j in i + 1..a.parts.len() {
            e += b.parts[i].dim() * a.parts[j].dim();
        }
    }
    e
}

/// Cup product of two basis elements of `Ñ*(Δ)`, as a signed face.
pub fn face_cup(a: &BlownUpFace, b: &BlownUpFace) -> Option<(BlownUpFace, i64)> {
    let parts = a.parts.iter().zip(&b.parts).map(|(x, y)| part_cup(x, y)).collect::<Option<Vec<_>>>()?;
    let sign = if koszul_exponent(a, b) % 2 == 0 { 1 } else { -1 };
    Some((BlownUpFace { parts }, sign))
}

/// All subsets of `vs`, in binary counting order.
fn subsets(vs: &[VertexId]) -> Vec<Vec<VertexId>> {
    (0..1u64 << vs.len())
        .map(|m| vs.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, v)| *v).collect())
        .collect()
}

/// The blown-up complex `Ñ*(Δ) = N*(cΔ_0) ⊗ … ⊗ N*(cΔ_{n-1}) ⊗ N*(Δ_n)`.
#[derive(Clone, Debug)]
pub struct LocalBlownUpComplex {
    pub simplex: DecomposedSimplex,
    faces: Vec<BlownUpFace>,
    index: HashMap<BlownUpFace, usize>,
    by_degree: Vec<Range<usize>>,
}

impl LocalBlownUpComplex {
    pub fn new(simplex: &DecomposedSimplex) -> Result<Self, BlowupError> {
        if !simplex.is_regular() {
            return Err(BlowupError::NotRegular(format!("{:?}", simplex.parts)));
        }
        let n = simplex.n();
        let mut faces: Vec<BlownUpFace> = vec![BlownUpFace { parts: Vec::new() }];
        for (i, part) in simplex.parts.iter().enumerate() {
            let mut options = Vec::new();
            for f in subsets(part) {
                if i == n {
                    if !f.is_empty() {
                        options.push(PartFace { vertices: f, cone: false });
                    }
                } else if f.is_empty() {
                    options.push(PartFace { vertices: f, cone: true });
                } else {
                    options.push(PartFace { vertices: f.clone(), cone: false });
                    options.push(PartFace { vertices: f, cone: true });
                }
            }
            faces = faces
                .into_iter()
                .flat_map(|face| {
                    options.iter().map(move |o| {
                        let mut g = face.clone();
                        g.parts.push(o.clone());
                        g
                    })
                })
                .collect();
        }
        faces.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        let top = faces.last().map_or(0, |f| f.degree() + 1);
        let mut by_degree = vec![0..0; top];
        let mut start = 0;
        for (d, r) in by_degree.iter_mut().enumerate() {
            let end = start + faces[start..].iter().take_while(|f| f.degree() == d).count();
            *r = start..end;
            start = end;
        }
        let index = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(LocalBlownUpComplex { simplex: simplex.clone(), faces, index, by_degree })
    }

    pub fn faces(&self) -> &[BlownUpFace] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn degree_range(&self, d: usize) -> Range<usize> {
        self.by_degree.get(d).cloned().unwrap_or(self.len()..self.len())
    }

    pub fn index_of(&self, f: &BlownUpFace) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// `δ 1_{(F,ε)}` with the apex greatest in each cone and Koszul signs
    /// across factors.
    pub fn coboundary(&self, i: usize) -> Vec<(usize, i64)> {
        let face = &self.faces[i];
        let n = self.simplex.n();
        let mut out = Vec::new();
        let mut before = 0usize;
        for (p, part) in face.parts.iter().enumerate() {
            let koszul = if before % 2 == 0 { 1 } else { -1 };
            for v in &self.simplex.parts[p] {
                if part.vertices.contains(v) {
                    continue;
                }
                let pos = part.vertices.iter().filter(|w| *w < v).count();
                let mut g = face.clone();
                g.parts[p].vertices.insert(pos, *v);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                out.push((self.index[&g], koszul * sign));
            }
            if p < n && !part.cone {
                let mut g = face.clone();
                g.parts[p].cone = true;
                let sign = if part.vertices.len() % 2 == 0 { 1 } else { -1 };
                out.push((self.index[&g], koszul * sign));
            }
            before += part.dim();
        }
        out.sort_unstable();
        out
    }

    /// The complex as a free cochain complex over `Z`.
    pub fn as_free_complex(&self) -> FreeComplex<Integer> {
        let dims: Vec<usize> = (0..=self.top_degree()).map(|d| self.degree_range(d).len()).collect();
        let maps = (0..dims.len())
            .map(|d| {
                let rows = dims.get(d + 1).copied().unwrap_or(0);
                let target = self.degree_range(d + 1).start;
                let cols = self
                    .degree_range(d)
                    .map(|i| self.coboundary(i).into_iter().map(|(j, s)| (j - target, Integer::from(s))).collect())
                    .collect();
                SparseMatrix::from_columns(rows, cols)
            })
            .collect();
        FreeComplex::new(Step::Up, dims, maps).expect("local coboundary shapes")
    }

    /// Allowability of every basis element when `‖·‖_ℓ ≤ bound(ℓ)` is
    /// required for `ℓ = 1..n`, grouped by degree.
    pub fn allowed_masks(&self, bound: impl Fn(usize) -> ExtInt) -> Vec<Vec<bool>> {
        let n = self.simplex.n();
        (0..=self.top_degree())
            .map(|d| {
                self.degree_range(d)
                    .map(|i| (1..=n).all(|l| self.faces[i].perverse_degree(l).unwrap() <= bound(l)))
                    .collect()
            })
            .collect()
    }

    /// `Ñ*_{q̄}(Δ)`: cochains that are allowable with allowable coboundary.
    pub fn intersection_lattices(&self, bound: impl Fn(usize) -> ExtInt) -> Vec<Lattice<Integers>> {
        allowed_subcomplex_lattices(&Integers, &self.as_free_complex(), &self.allowed_masks(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_part_edge_has_three_faces() {
        let d = DecomposedSimplex::from_sizes(&[1, 1]).unwrap();
        let l = LocalBlownUpComplex::new(&d).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.degree_range(0).len(), 2);
        assert_eq!(l.degree_range(1).len(), 1);
    }

    #[test]
    fn regular_only_is_ordinary_cochains() {
        let d = DecomposedSimplex::from_sizes(&[0, 0, 3]).unwrap();
        let l = LocalBlownUpComplex::new(&d).unwrap();
        assert_eq!(l.len(), 7);
        let c = l.as_free_complex();
        c.check_square_zero(&Integers).unwrap();
    }

    #[test]
    fn non_regular_is_rejected() {
        let d = DecomposedSimplex::from_sizes(&[2, 0]).unwrap();
        assert!(matches!(LocalBlownUpComplex::new(&d), Err(BlowupError::NotRegular(_))));
    }

    #[test]
    fn basis_size_is_product_of_factor_counts() {
        let d = DecomposedSimplex::from_sizes(&[2, 1, 2]).unwrap();
        let l = LocalBlownUpComplex::new(&d).unwrap();
        // cΔ_0 has 7 faces, cΔ_1 has 3, Δ_2 has 3
        assert_eq!(l.len(), 7 * 3 * 3);
    }

    #[test]
    fn perverse_degree_ignores_leading_face() {
        let d = DecomposedSimplex::from_sizes(&[0, 2, 1]).unwrap();
        let l = LocalBlownUpComplex::new(&d).unwrap();
        for f in l.faces() {
            if f.parts[1].cone {
                assert_eq!(f.perverse_degree(1).unwrap(), ExtInt::NegInf);
            } else {
                assert_eq!(f.perverse_degree(1).unwrap(), ExtInt::from(f.parts[2].dim()));
            }
            // ε_0 = 1 always since Δ_0 is empty
            assert_eq!(f.perverse_degree(2).unwrap(), ExtInt::NegInf);
        }
        assert!(l.faces()[0].perverse_degree(3).is_err());
    }
}
