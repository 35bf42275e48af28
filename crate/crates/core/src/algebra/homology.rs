//! Homology of free complexes, of subcomplexes cut out by coordinate
//! conditions, and of subquotients.

use std::fmt;

use super::elimination::{eliminate_rows, invariant_factors};
use super::integer::Integer;
use super::lattice::{Lattice, SparseVec};
use super::matrix::{DenseMatrix, SparseMatrix};
use super::ring::Integers;
use super::snf::dense_invariant_factors;
use super::ring::EuclideanRing;
use super::AlgebraError;

/// One homology group: `R^free_rank` plus cyclic torsion summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Non-unit invariant factors, in divisibility order.
    pub torsion: Vec<Integer>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology in degrees `0..groups.len()`; absent degrees are zero.
///
/// Equality ignores trailing zero groups.
#[derive(Clone, Debug, Default)]
pub struct HomologyResult {
    /// Zero for integer coefficients, `p` for `F_p`.
    pub characteristic: u64,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn new(characteristic: u64, groups: Vec<HomologyGroup>) -> Self {
        HomologyResult { characteristic, groups }
    }

    /// Free groups of the given ranks.
    pub fn from_ranks(characteristic: u64, ranks: &[usize]) -> Self {
        HomologyResult { characteristic, groups: ranks.iter().map(|&r| HomologyGroup::free(r)).collect() }
    }

    /// The coefficient ring itself, concentrated in degree zero.
    pub fn point(characteristic: u64) -> Self {
        Self::from_ranks(characteristic, &[1])
    }

    pub fn zero(characteristic: u64) -> Self {
        HomologyResult { characteristic, groups: Vec::new() }
    }

    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.groups.get(k).map_or(0, |g| g.free_rank)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Index of the last nonzero group plus one.
    pub fn support_len(&self) -> usize {
        self.groups.iter().rposition(|g| !g.is_zero()).map_or(0, |i| i + 1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups[..self.support_len()].iter().map(|g| g.free_rank).collect()
    }

    /// Keeps degrees `< len`, padding with zeros.
    pub fn truncated(&self, len: usize) -> HomologyResult {
        let groups = (0..len).map(|k| self.group(k)).collect();
        HomologyResult { characteristic: self.characteristic, groups }
    }

    /// Degreewise direct sum, with torsion put back in invariant-factor form.
    pub fn direct_sum(&self, other: &HomologyResult) -> HomologyResult {
        let len = self.groups.len().max(other.groups.len());
        let groups = (0..len)
            .map(|k| {
                let (a, b) = (self.group(k), other.group(k));
                let cyclic: Vec<Integer> = a.torsion.into_iter().chain(b.torsion).collect();
                HomologyGroup { free_rank: a.free_rank + b.free_rank, torsion: normalize_torsion(cyclic) }
            })
            .collect();
        HomologyResult { characteristic: self.characteristic, groups }
    }
}

/// Invariant factors of `⊕ Z/c_i`.
fn normalize_torsion(cyclic: Vec<Integer>) -> Vec<Integer> {
    if cyclic.len() < 2 {
        return cyclic;
    }
    let n = cyclic.len();
    let mut d = DenseMatrix::zeros(&Integers, n, n);
    for (i, c) in cyclic.into_iter().enumerate() {
        d.set(i, i, c);
    }
    dense_invariant_factors(&Integers, &d).into_iter().filter(|f| !f.is_unit()).collect()
}

impl PartialEq for HomologyResult {
    fn eq(&self, other: &Self) -> bool {
        let n = self.support_len();
        self.characteristic == other.characteristic
            && n == other.support_len()
            && self.groups[..n] == other.groups[..n]
    }
}

impl Eq for HomologyResult {}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().enumerate().map(|(k, g)| format!("{k}: {g}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Builds a group from rank data and the factors of the incoming map.
fn group_from<R: EuclideanRing>(ring: &R, free_rank: usize, incoming: &[R::Elem]) -> HomologyGroup {
    let torsion = incoming.iter().filter(|f| !ring.is_unit(f)).map(|f| ring.to_integer(f)).collect();
    HomologyGroup { free_rank, torsion }
}

/// Direction of the differential: `-1` for chains, `+1` for cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Down,
    Up,
}

impl Step {
    /// Degree of the target of the differential out of degree `k`.
    pub fn target(self, k: usize, len: usize) -> Option<usize> {
        match self {
            Step::Down => k.checked_sub(1),
            Step::Up => (k + 1 < len).then_some(k + 1),
        }
    }

    /// Degree of the source of the differential into degree `k`.
    pub fn source(self, k: usize, len: usize) -> Option<usize> {
        match self {
            Step::Down => (k + 1 < len).then_some(k + 1),
            Step::Up => k.checked_sub(1),
        }
    }
}

/// A based complex of free modules.
///
/// `maps[k]` is the differential out of degree `k`; it has
/// `dims[target]` rows, or zero rows when there is no target.
#[derive(Clone, Debug)]
pub struct FreeComplex<E> {
    pub step: Step,
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMatrix<E>>,
}

impl<E: Clone + PartialEq> FreeComplex<E> {
    pub fn new(step: Step, dims: Vec<usize>, maps: Vec<SparseMatrix<E>>) -> Result<Self, AlgebraError> {
        if maps.len() != dims.len() {
            return Err(AlgebraError::Shape("one differential per degree required".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            let rows = step.target(k, dims.len()).map_or(0, |t| dims[t]);
            if m.ncols() != dims[k] || (m.nrows() != rows && !(m.nrows() == 0 && m.is_zero())) {
                return Err(AlgebraError::Shape(format!(
                    "differential out of degree {k} is {}x{}, expected {rows}x{}",
                    m.nrows(),
                    m.ncols(),
                    dims[k]
                )));
            }
        }
        Ok(FreeComplex { step, dims, maps })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Verifies `d ∘ d = 0`.
    pub fn check_square_zero<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> Result<(), AlgebraError> {
        for k in 0..self.len() {
            let Some(t) = self.step.target(k, self.len()) else { continue };
            if self.step.target(t, self.len()).is_none() {
                continue;
            }
            let dd = self.maps[t].mul(ring, &self.maps[k])?;
            if !dd.is_zero() {
                return Err(AlgebraError::NotAComplex(k));
            }
        }
        Ok(())
    }

    /// Reduces an integer complex into another ring.
    pub fn reduce<R: EuclideanRing>(&self, ring: &R, f: impl Fn(&E) -> R::Elem) -> FreeComplex<R::Elem> {
        FreeComplex { step: self.step, dims: self.dims.clone(), maps: self.maps.iter().map(|m| m.map_ring(ring, &f)).collect() }
    }
}

/// Homology of a free complex.
pub fn free_homology<R: EuclideanRing>(ring: &R, c: &FreeComplex<R::Elem>) -> Result<HomologyResult, AlgebraError> {
    c.check_square_zero(ring)?;
    let factors: Vec<Vec<R::Elem>> = c.maps.iter().map(|m| invariant_factors(ring, m)).collect();
    let groups = (0..c.len())
        .map(|k| {
            let out = factors[k].len();
            let inc: &[R::Elem] = c.step.source(k, c.len()).map_or(&[], |s| &factors[s]);
            group_from(ring, c.dims[k] - out - inc.len(), inc)
        })
        .collect();
    Ok(HomologyResult::new(ring.characteristic(), groups))
}

/// Homology of the subcomplex `{c in span(A_k) : dc in span(A_{k±1})}` of
/// a free complex, where `allowed[k][i]` says whether basis element `i` in
/// degree `k` lies in `A_k`.
///
/// Free ranks come from `|A_k| - rank(d|A_k) - rank(d(C'_{k∓1}))`. Torsion
/// is read off the boundary generators, which are obtained by clearing the
/// forbidden rows of the incoming differential by column operations.
pub fn allowed_subcomplex_homology<R: EuclideanRing>(
    ring: &R,
    c: &FreeComplex<R::Elem>,
    allowed: &[Vec<bool>],
) -> Result<HomologyResult, AlgebraError> {
    if allowed.len() != c.len() || allowed.iter().zip(&c.dims).any(|(a, d)| a.len() != *d) {
        return Err(AlgebraError::Shape("allowed masks do not match the complex".into()));
    }
    c.check_square_zero(ring)?;
    let len = c.len();
    struct Out<E> {
        pivots: usize,
        image: Vec<E>,
    }
    let mut outs: Vec<Out<R::Elem>> = Vec::with_capacity(len);
    for k in 0..len {
        let cols: Vec<usize> = (0..c.dims[k]).filter(|&i| allowed[k][i]).collect();
        let Some(t) = c.step.target(k, len) else {
            outs.push(Out { pivots: 0, image: Vec::new() });
            continue;
        };
        let m = c.maps[k].select_columns(&cols);
        let forbidden: Vec<bool> = allowed[t].iter().map(|a| !a).collect();
        let red = eliminate_rows(ring, &m, &forbidden, false);
        let surv = SparseMatrix::from_columns(c.dims[t], red.survivors);
        outs.push(Out { pivots: red.pivots, image: invariant_factors(ring, &surv) });
    }
    let groups = (0..len)
        .map(|k| {
            let a = allowed[k].iter().filter(|x| **x).count();
            let out = outs[k].pivots + outs[k].image.len();
            let inc: &[R::Elem] = c.step.source(k, len).map_or(&[], |s| &outs[s].image);
            group_from(ring, a - out - inc.len(), inc)
        })
        .collect();
    Ok(HomologyResult::new(ring.characteristic(), groups))
}

/// Explicit bases of the allowed subcomplex: for each degree, a saturated
/// lattice in the ambient coordinates.
pub fn allowed_subcomplex_lattices<R: EuclideanRing>(
    ring: &R,
    c: &FreeComplex<R::Elem>,
    allowed: &[Vec<bool>],
) -> Vec<Lattice<R>> {
    use super::elimination::eliminate_rows as elim;
    let len = c.len();
    (0..len)
        .map(|k| {
            let cols: Vec<usize> = (0..c.dims[k]).filter(|&i| allowed[k][i]).collect();
            let gens: Vec<SparseVec<R::Elem>> = match c.step.target(k, len) {
                None => cols.iter().map(|&i| vec![(i, ring.one())]).collect(),
                Some(t) => {
                    let m = c.maps[k].select_columns(&cols);
                    let mut rows = vec![false; c.dims[t]];
                    for (i, r) in rows.iter_mut().enumerate() {
                        *r = !allowed[t][i];
                    }
                    // columns clearing the forbidden rows, pulled back to coordinates
                    let red = elim(ring, &m, &rows, true);
                    let mut gens: Vec<SparseVec<R::Elem>> = red
                        .tracks
                        .unwrap()
                        .into_iter()
                        .map(|t| t.into_iter().map(|(j, v)| (cols[j], v)).collect())
                        .collect();
                    for g in &mut gens {
                        g.sort_by_key(|e| e.0);
                    }
                    gens
                }
            };
            Lattice::from_generators(ring.clone(), c.dims[k], gens)
        })
        .collect()
}

/// A complex of submodules `Λ_k` of a free complex together with
/// subcomplexes `R_k ⊆ Λ_k`; computes the homology of `Λ / R`.
#[derive(Clone, Debug)]
pub struct SubquotientComplex<'a, R: EuclideanRing> {
    pub ambient: &'a FreeComplex<R::Elem>,
    pub generators: Vec<Lattice<R>>,
    pub relations: Vec<Lattice<R>>,
}

impl<'a, R: EuclideanRing> SubquotientComplex<'a, R> {
    pub fn new(
        ambient: &'a FreeComplex<R::Elem>,
        generators: Vec<Lattice<R>>,
        relations: Vec<Lattice<R>>,
    ) -> Result<Self, AlgebraError> {
        if generators.len() != ambient.len() || relations.len() != ambient.len() {
            return Err(AlgebraError::Shape("one lattice per degree required".into()));
        }
        Ok(SubquotientComplex { ambient, generators, relations })
    }

    /// Homology of the subquotient, checking closure contracts first.
    pub fn homology(&self) -> Result<HomologyResult, AlgebraError> {
        let ring = self.generators.first().map(|l| l.ring().clone());
        let Some(ring) = ring else { return Ok(HomologyResult::default()) };
        let c = self.ambient;
        c.check_square_zero(&ring)?;
        let len = c.len();
        let image = |k: usize, v: &SparseVec<R::Elem>| c.maps[k].mul_sparse_vec(&ring, v);
        for k in 0..len {
            if !self.relations[k].is_sublattice_of(&self.generators[k]) {
                return Err(AlgebraError::Contract(format!("relations not contained in generators in degree {k}")));
            }
            if let Some(t) = c.step.target(k, len) {
                for (lat, what) in [(&self.generators, "generators"), (&self.relations, "relations")] {
                    if !lat[k].basis().iter().all(|b| lat[t].contains(&image(k, b))) {
                        return Err(AlgebraError::Contract(format!("{what} not closed under d in degree {k}")));
                    }
                }
            }
        }
        let mut groups = Vec::with_capacity(len);
        for k in 0..len {
            let lam = &self.generators[k];
            let cycles: Vec<SparseVec<R::Elem>> = match c.step.target(k, len) {
                None => lam.basis().to_vec(),
                Some(t) => {
                    let rel = &self.relations[t];
                    // pairs (y, z) with d(B y) = R z; coordinates in the target basis
                    let mut cols: Vec<SparseVec<R::Elem>> = Vec::new();
                    for b in lam.basis() {
                        cols.push(self.generators[t].solve(&image(k, b)).expect("checked closure"));
                    }
                    for r in rel.basis() {
                        let coords = self.generators[t].solve(r).expect("checked containment");
                        cols.push(coords.into_iter().map(|(i, v)| (i, ring.neg(&v))).collect());
                    }
                    let m = SparseMatrix::from_columns(self.generators[t].rank(), cols);
                    let ker = super::elimination::kernel_basis(&ring, &m);
                    ker.into_iter()
                        .map(|v| {
                            let y: SparseVec<R::Elem> = v.into_iter().filter(|(i, _)| *i < lam.rank()).collect();
                            lam.combine(&y)
                        })
                        .filter(|v| !v.is_empty())
                        .collect()
                }
            };
            let z = Lattice::from_generators(ring.clone(), c.dims[k], cycles);
            let mut bnd: Vec<SparseVec<R::Elem>> = self.relations[k].basis().to_vec();
            if let Some(s) = c.step.source(k, len) {
                bnd.extend(self.generators[s].basis().iter().map(|b| image(s, b)));
            }
            let w = z
                .coordinates(&bnd)
                .ok_or_else(|| AlgebraError::Contract(format!("boundaries escape the cycles in degree {k}")))?;
            let fac = invariant_factors(&ring, &w);
            groups.push(group_from(&ring, z.rank() - fac.len(), &fac));
        }
        Ok(HomologyResult::new(ring.characteristic(), groups))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{Integers, PrimeField};

    fn m(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> SparseMatrix<Integer> {
        SparseMatrix::from_triplets(&Integers, rows, cols, t.iter().map(|&(i, j, v)| (i, j, Integer::from(v)))).unwrap()
    }

    /// Minimal cellular structure of RP^2: one cell in each degree.
    fn rp2_cells() -> FreeComplex<Integer> {
        FreeComplex::new(
            Step::Down,
            vec![1, 1, 1],
            vec![m(0, 1, &[]), m(1, 1, &[]), m(1, 1, &[(0, 0, 2)])],
        )
        .unwrap()
    }

    #[test]
    fn rp2_cellular() {
        let h = free_homology(&Integers, &rp2_cells()).unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(1), HomologyGroup { free_rank: 0, torsion: vec![Integer::from(2)] });
        assert!(h.group(2).is_zero());
        let f2 = PrimeField::new(2).unwrap();
        let c2 = rp2_cells().reduce(&f2, |v| f2.from_integer(v));
        assert_eq!(free_homology(&f2, &c2).unwrap().ranks(), vec![1, 1, 1]);
    }

    #[test]
    fn not_a_complex() {
        let c = FreeComplex::new(
            Step::Down,
            vec![1, 1, 1],
            vec![m(0, 1, &[]), m(1, 1, &[(0, 0, 1)]), m(1, 1, &[(0, 0, 1)])],
        )
        .unwrap();
        assert!(matches!(free_homology(&Integers, &c), Err(AlgebraError::NotAComplex(2))));
    }

    #[test]
    fn subquotient_of_full_is_free_homology() {
        let c = rp2_cells();
        let gens: Vec<_> = c.dims.iter().map(|&d| Lattice::full(Integers, d)).collect();
        let rels: Vec<_> = c.dims.iter().map(|&d| Lattice::zero(Integers, d)).collect();
        let sq = SubquotientComplex::new(&c, gens, rels).unwrap();
        assert_eq!(sq.homology().unwrap(), free_homology(&Integers, &c).unwrap());
    }

    #[test]
    fn allowed_everything_is_free_homology() {
        let c = rp2_cells();
        let all: Vec<Vec<bool>> = c.dims.iter().map(|&d| vec![true; d]).collect();
        assert_eq!(allowed_subcomplex_homology(&Integers, &c, &all).unwrap(), free_homology(&Integers, &c).unwrap());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        let a = HomologyResult::from_ranks(0, &[1, 0, 0]);
        let b = HomologyResult::from_ranks(0, &[1]);
        assert_eq!(a, b);
        assert_ne!(a, HomologyResult::from_ranks(2, &[1]));
    }
}
