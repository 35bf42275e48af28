//! Submodules of a free module, stored as a column echelon basis.

use std::collections::BTreeMap;

use super::matrix::{axpy, lin_comb, SparseMatrix};
use super::ring::EuclideanRing;

/// Sparse vector: sorted `(coordinate, value)` pairs without zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// A submodule of `R^dim` with an echelon basis: basis vectors have
/// strictly increasing leading coordinates.
#[derive(Clone, Debug)]
pub struct Lattice<R: EuclideanRing> {
    ring: R,
    dim: usize,
    basis: Vec<SparseVec<R::Elem>>,
    leads: BTreeMap<usize, usize>,
}

impl<R: EuclideanRing> Lattice<R> {
    pub fn zero(ring: R, dim: usize) -> Self {
        Lattice { ring, dim, basis: Vec::new(), leads: BTreeMap::new() }
    }

    /// The whole ambient module with its standard basis.
    pub fn full(ring: R, dim: usize) -> Self {
        let one = ring.one();
        Self::from_generators(ring, dim, (0..dim).map(|i| vec![(i, one.clone())]).collect())
    }

    /// The submodule spanned by `gens`.
    pub fn from_generators(ring: R, dim: usize, gens: Vec<SparseVec<R::Elem>>) -> Self {
        let mut pending: BTreeMap<usize, Vec<SparseVec<R::Elem>>> = BTreeMap::new();
        for g in gens {
            debug_assert!(g.iter().all(|(i, _)| *i < dim));
            if let Some(&(lead, _)) = g.first() {
                pending.entry(lead).or_default().push(g);
            }
        }
        let mut basis = Vec::new();
        let mut leads = BTreeMap::new();
        while let Some((lead, mut vs)) = pending.pop_first() {
            while vs.len() > 1 {
                let unit = vs.iter().position(|v| ring.is_unit(&v[0].1));
                let pos = unit.unwrap_or_else(|| {
                    (0..vs.len()).min_by_key(|&i| ring.size(&vs[i][0].1)).unwrap()
                });
                let piv = vs.swap_remove(pos);
                let mut keep = piv;
                let mut rest = Vec::new();
                for v in vs.drain(..) {
                    let (a, b) = (keep[0].1.clone(), v[0].1.clone());
                    if let Some(q) = ring.div_exact(&b, &a) {
                        rest.push(axpy(&ring, &v, &ring.neg(&q), &keep));
                    } else {
                        let (g, s, t) = ring.ext_gcd(&a, &b);
                        let al = ring.div_exact(&a, &g).unwrap();
                        let be = ring.neg(&ring.div_exact(&b, &g).unwrap());
                        let new_keep = lin_comb(&ring, &s, &keep, &t, &v);
                        rest.push(lin_comb(&ring, &be, &keep, &al, &v));
                        keep = new_keep;
                    }
                }
                for r in rest {
                    if let Some(&(l, _)) = r.first() {
                        debug_assert!(l > lead);
                        pending.entry(l).or_default().push(r);
                    }
                }
                vs.push(keep);
            }
            let v = vs.pop().unwrap();
            let (_, unit) = ring.normalize(&v[0].1);
            let v = if unit == ring.one() {
                v
            } else {
                v.into_iter().map(|(i, x)| (i, ring.mul(&x, &unit))).collect()
            };
            leads.insert(lead, basis.len());
            basis.push(v);
        }
        Lattice { ring, dim, basis, leads }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<R::Elem>] {
        &self.basis
    }

    /// Coefficients of `y` in the basis, if `y` lies in the lattice.
    pub fn solve(&self, y: &[(usize, R::Elem)]) -> Option<SparseVec<R::Elem>> {
        let ring = &self.ring;
        let mut r: SparseVec<R::Elem> = y.to_vec();
        let mut coeffs = Vec::new();
        while let Some((lead, x)) = r.first().cloned() {
            let &bi = self.leads.get(&lead)?;
            let b = &self.basis[bi];
            let c = ring.div_exact(&x, &b[0].1)?;
            r = axpy(ring, &r, &ring.neg(&c), b);
            coeffs.push((bi, c));
        }
        coeffs.sort_by_key(|e| e.0);
        Some(coeffs)
    }

    pub fn contains(&self, y: &[(usize, R::Elem)]) -> bool {
        self.solve(y).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice<R>) -> bool {
        self.dim == other.dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_as(&self, other: &Lattice<R>) -> bool {
        self.rank() == other.rank() && self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }

    /// Expresses each vector in the basis; columns of the result are the
    /// coordinate vectors.
    pub fn coordinates(&self, vs: &[SparseVec<R::Elem>]) -> Option<SparseMatrix<R::Elem>> {
        let cols = vs.iter().map(|v| self.solve(v)).collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix::from_columns(self.rank(), cols))
    }

    /// Turns a coordinate vector back into an ambient vector.
    pub fn combine(&self, coeffs: &[(usize, R::Elem)]) -> SparseVec<R::Elem> {
        let mut acc: SparseVec<R::Elem> = Vec::new();
        for (i, c) in coeffs {
            acc = axpy(&self.ring, &acc, c, &self.basis[*i]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer::Integer;
    use crate::algebra::ring::{Integers, PrimeField};
    use proptest::prelude::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec<Integer> {
        entries.iter().map(|&(i, x)| (i, Integer::from(x))).collect()
    }

    #[test]
    fn gcd_combination() {
        let l = Lattice::from_generators(Integers, 2, vec![v(&[(0, 4), (1, 1)]), v(&[(0, 6)])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[(0, 2), (1, 2)])));
        assert!(!l.contains(&v(&[(0, 2), (1, 3)])));
        assert!(!l.contains(&v(&[(0, 1)])));
        assert!(l.contains(&v(&[(1, 3)])));
    }

    #[test]
    fn full_lattice_solves_everything() {
        let f = PrimeField::new(5).unwrap();
        let l = Lattice::full(f, 3);
        assert_eq!(l.solve(&[(1, 3), (2, 4)]).unwrap(), vec![(1, 3), (2, 4)]);
    }

    proptest! {
        #[test]
        fn generators_are_members(data in proptest::collection::vec((0usize..5, -4i64..5), 0..12)) {
            let gens: Vec<SparseVec<Integer>> = data.chunks(3).map(|c| {
                let mut m = std::collections::BTreeMap::new();
                for &(i, x) in c { *m.entry(i).or_insert(0) += x; }
                m.into_iter().filter(|(_, x)| *x != 0).map(|(i, x)| (i, Integer::from(x))).collect()
            }).collect();
            let l = Lattice::from_generators(Integers, 5, gens.clone());
            for g in &gens {
                let c = l.solve(g).expect("generator in lattice");
                prop_assert_eq!(&l.combine(&c), g);
            }
            let leads: Vec<usize> = l.basis().iter().map(|b| b[0].0).collect();
            prop_assert!(leads.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
