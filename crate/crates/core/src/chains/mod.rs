//! Perversities, allowable simplices and the complex of intersection chains.

mod perversity;
mod residual;

pub use perversity::{Perversity, PerversityKind};
pub use residual::{
    dual_value_at_clot, join_homology_direct, join_homology_oracle, residual_decomposition_check, ResidualDegree,
    ResidualReport,
};

use thiserror::Error;

use crate::algebra::{
    allowed_subcomplex_homology, allowed_subcomplex_lattices, free_homology, AlgebraError, Coefficients,
    EuclideanRing, FreeComplex, HomologyResult, Integer, Integers, Lattice, SparseIntMatrix, SparseMatrix, Step,
    SubquotientComplex,
};
use crate::complex::{ComplexError, FilteredComplex};
use crate::extint::ExtInt;
use crate::with_ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("perversity: {0}")]
    Perversity(String),
    #[error("{0} is not in the ambient complex")]
    NotSubcomplex(String),
    #[error("{0} is not a clot")]
    NotAClot(String),
}

/// A full filtered complex together with the value of a perversity on
/// each of its strata.
#[derive(Clone, Debug)]
pub struct Perverse<'a> {
    pub complex: &'a FilteredComplex,
    /// Perversity value per stratum, in stratum order.
    pub values: Vec<ExtInt>,
}

impl<'a> Perverse<'a> {
    pub fn new(complex: &'a FilteredComplex, p: &Perversity) -> Result<Self, ChainError> {
        complex.require_full()?;
        Ok(Perverse { complex, values: p.values_on(complex)? })
    }

    pub fn value(&self, stratum: usize) -> ExtInt {
        self.values[stratum]
    }

    /// Whether simplex `i` is allowable.
    pub fn is_allowable(&self, i: usize) -> bool {
        is_allowable_with(self.complex, &self.values, i)
    }

    /// Allowability flags for every simplex, grouped by dimension.
    pub fn allowed_masks(&self) -> Vec<Vec<bool>> {
        let k = self.complex;
        let top = k.dim().map_or(0, |d| d + 1);
        (0..top).map(|d| k.dim_range(d).map(|i| self.is_allowable(i)).collect()).collect()
    }
}

/// `‖σ‖_S = dim(σ ∩ S)` read off the canonical decomposition: for
/// `S = S_ℓ` it is `dim(σ_0 * … * σ_ℓ)`, and `-∞` if `σ` misses `S`.
pub fn simplex_perverse_degree(k: &FilteredComplex, i: usize, stratum: usize) -> Result<ExtInt, ChainError> {
    k.require_full()?;
    let level = k.strata()[stratum].level;
    if k.stratum_at(i, level) != Some(stratum) {
        return Ok(ExtInt::NegInf);
    }
    Ok(k.decompose(i).dim_up_to(level))
}

/// `dim(σ ∩ S)` computed as the largest face of `σ` lying in `S`, without
/// using the canonical decomposition.
pub fn simplex_perverse_degree_direct(k: &FilteredComplex, i: usize, stratum: usize) -> ExtInt {
    let s = k.simplex(i);
    let full = (1u64 << s.len()) - 1;
    let mut best = ExtInt::NegInf;
    for mask in 1..=full {
        let face = s.sub_by_mask(mask);
        if let Some(j) = k.index_of(&face) {
            if k.stratum_of(j) == stratum {
                best = best.max(ExtInt::from(face.dim()));
            }
        }
    }
    best
}

fn is_allowable_with(k: &FilteredComplex, values: &[ExtInt], i: usize) -> bool {
    let n = k.n();
    let s = k.simplex(i);
    let dim = s.dim() as i64;
    let mut below = 0usize;
    let mut levels: Vec<usize> = s.vertices().iter().map(|v| k.vertex_level(*v).unwrap()).collect();
    levels.sort_unstable();
    let mut idx = 0;
    while idx < levels.len() {
        let l = levels[idx];
        while idx < levels.len() && levels[idx] == l {
            idx += 1;
            below += 1;
        }
        if l == n {
            break;
        }
        let stratum = k.stratum_at(i, l).expect("full complex");
        let bound = ExtInt::from(dim - (n - l) as i64) + values[stratum];
        if ExtInt::from(below as i64 - 1) > bound {
            return false;
        }
    }
    true
}

/// Allowability of simplex `i` for perversity `p`.
pub fn is_allowable(k: &FilteredComplex, i: usize, p: &Perversity) -> Result<bool, ChainError> {
    Ok(Perverse::new(k, p)?.is_allowable(i))
}

/// Allowability checked stratum by stratum from `dim(σ ∩ S)`.
pub fn is_allowable_direct(k: &FilteredComplex, i: usize, p: &Perversity) -> Result<bool, ChainError> {
    let values = p.values_on(k)?;
    let dim = k.simplex(i).dim() as i64;
    for (si, st) in k.strata().iter().enumerate() {
        if st.regular {
            continue;
        }
        let d = simplex_perverse_degree_direct(k, i, si);
        if d == ExtInt::NegInf {
            continue;
        }
        if d > ExtInt::from(dim - st.codim(k.n()) as i64) + values[si] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a chain (pairs of simplex index and coefficient) and its
/// boundary are supported on allowable simplices.
pub fn is_intersection_chain(k: &FilteredComplex, chain: &[(usize, Integer)], p: &Perversity) -> Result<bool, ChainError> {
    let pv = Perverse::new(k, p)?;
    if chain.iter().any(|(i, c)| !c.is_zero() && !pv.is_allowable(*i)) {
        return Ok(false);
    }
    Ok(boundary_of(k, chain).iter().all(|(i, _)| pv.is_allowable(*i)))
}

/// Boundary of an integer chain given by simplex indices.
pub fn boundary_of(k: &FilteredComplex, chain: &[(usize, Integer)]) -> Vec<(usize, Integer)> {
    let mut acc: std::collections::BTreeMap<usize, Integer> = std::collections::BTreeMap::new();
    for (i, c) in chain {
        for (pos, &j) in k.facets_of(*i).iter().enumerate() {
            let term = if pos % 2 == 0 { c.clone() } else { -c };
            let e = acc.entry(j).or_default();
            *e = &*e + &term;
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// The simplicial chain complex of `K`; degree `d` has the `d`-simplices
/// in storage order as basis.
pub fn simplicial_chain_complex(k: &FilteredComplex) -> FreeComplex<Integer> {
    let top = k.dim().map_or(0, |d| d + 1);
    let dims: Vec<usize> = (0..top).map(|d| k.count_dim(d)).collect();
    let maps = (0..top)
        .map(|d| {
            if d == 0 {
                return SparseMatrix::new(0, dims[0]);
            }
            let start = k.dim_range(d - 1).start;
            let cols = k
                .dim_range(d)
                .map(|i| {
                    let mut col: Vec<(usize, Integer)> = k
                        .facets_of(i)
                        .iter()
                        .enumerate()
                        .map(|(pos, &j)| (j - start, Integer::from(if pos % 2 == 0 { 1i64 } else { -1 })))
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            SparseMatrix::from_columns(dims[d - 1], cols)
        })
        .collect();
    FreeComplex::new(Step::Down, dims, maps).expect("simplicial boundary shapes")
}

/// Ordinary simplicial homology `H_*(K)`.
pub fn simplicial_homology(k: &FilteredComplex, coeffs: Coefficients) -> Result<HomologyResult, ChainError> {
    if k.is_empty() {
        return Ok(HomologyResult::zero(characteristic(coeffs)));
    }
    let c = simplicial_chain_complex(k);
    with_ring!(coeffs, |r| {
        let cr = c.reduce(&r, |v| r.from_integer(v));
        Ok(free_homology(&r, &cr)?)
    })
}

/// Intersection chains with explicit bases inside the simplicial chains.
#[derive(Clone, Debug)]
pub struct IntersectionChainComplex {
    /// Basis of `C^p̄_d(K)` in the coordinates of the `d`-simplices.
    pub bases: Vec<Lattice<Integers>>,
    /// Boundary from degree `d` to `d - 1` in these bases.
    pub boundary: Vec<SparseIntMatrix>,
}

impl IntersectionChainComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Lattice::rank).collect()
    }

    pub fn as_free_complex(&self) -> FreeComplex<Integer> {
        FreeComplex::new(Step::Down, self.ranks(), self.boundary.clone()).expect("shapes match")
    }

    pub fn homology(&self) -> Result<HomologyResult, ChainError> {
        Ok(free_homology(&Integers, &self.as_free_complex())?)
    }
}

/// Builds `C^p̄_*(K)` over `Z`: each degree is the kernel of the forbidden
/// part of the boundary on allowable simplices.
pub fn intersection_complex(k: &FilteredComplex, p: &Perversity) -> Result<IntersectionChainComplex, ChainError> {
    let pv = Perverse::new(k, p)?;
    let c = simplicial_chain_complex(k);
    let bases = allowed_subcomplex_lattices(&Integers, &c, &pv.allowed_masks());
    let mut boundary = Vec::with_capacity(bases.len());
    for d in 0..bases.len() {
        if d == 0 {
            boundary.push(SparseMatrix::new(0, bases[0].rank()));
            continue;
        }
        let cols: Vec<_> = bases[d]
            .basis()
            .iter()
            .map(|b| {
                let img = c.maps[d].mul_sparse_vec(&Integers, b);
                bases[d - 1].solve(&img).ok_or_else(|| {
                    ChainError::Algebra(AlgebraError::Contract("boundary of an intersection chain escaped".into()))
                })
            })
            .collect::<Result<_, _>>()?;
        boundary.push(SparseMatrix::from_columns(bases[d - 1].rank(), cols));
    }
    Ok(IntersectionChainComplex { bases, boundary })
}

/// `H^p̄_*(K)` over the given coefficients.
pub fn intersection_homology(k: &FilteredComplex, p: &Perversity, coeffs: Coefficients) -> Result<HomologyResult, ChainError> {
    if k.is_empty() {
        return Ok(HomologyResult::zero(characteristic(coeffs)));
    }
    let pv = Perverse::new(k, p)?;
    let masks = pv.allowed_masks();
    let c = simplicial_chain_complex(k);
    with_ring!(coeffs, |r| {
        let cr = c.reduce(&r, |v| r.from_integer(v));
        Ok(allowed_subcomplex_homology(&r, &cr, &masks)?)
    })
}

/// `H^p̄_*(K)` from explicit bases computed over the coefficient ring.
pub fn intersection_homology_explicit(
    k: &FilteredComplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, ChainError> {
    if k.is_empty() {
        return Ok(HomologyResult::zero(characteristic(coeffs)));
    }
    let pv = Perverse::new(k, p)?;
    let masks = pv.allowed_masks();
    let c = simplicial_chain_complex(k);
    with_ring!(coeffs, |r| {
        let cr = c.reduce(&r, |v| r.from_integer(v));
        let lats = allowed_subcomplex_lattices(&r, &cr, &masks);
        let zero: Vec<_> = cr.dims.iter().map(|&d| Lattice::zero(r, d)).collect();
        Ok(SubquotientComplex::new(&cr, lats, zero)?.homology()?)
    })
}

pub(crate) fn characteristic(c: Coefficients) -> u64 {
    match c {
        Coefficients::Integers => 0,
        Coefficients::Prime(f) => f.modulus(),
    }
}

/// `H^p̄_*(K, L)` as the homology of `C^p̄(K) / C^p̄(L)`, with
/// `C^p̄(L) = C^p̄(K) ∩ C_*(L)` and allowability measured in `K`.
pub fn relative_intersection_homology(
    k: &FilteredComplex,
    l: &FilteredComplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, ChainError> {
    let emb = k.embed(l).map_err(|e| ChainError::NotSubcomplex(e.to_string()))?;
    if k.is_empty() {
        return Ok(HomologyResult::zero(characteristic(coeffs)));
    }
    let pv = Perverse::new(k, p)?;
    let masks = pv.allowed_masks();
    let mut in_l = vec![false; k.len()];
    for i in emb {
        in_l[i] = true;
    }
    let sub_masks: Vec<Vec<bool>> = masks
        .iter()
        .enumerate()
        .map(|(d, m)| {
            let start = k.dim_range(d).start;
            m.iter().enumerate().map(|(pos, &a)| a && in_l[start + pos]).collect()
        })
        .collect();
    let c = simplicial_chain_complex(k);
    with_ring!(coeffs, |r| {
        let cr = c.reduce(&r, |v| r.from_integer(v));
        let gens = allowed_subcomplex_lattices(&r, &cr, &masks);
        let rels = allowed_subcomplex_lattices(&r, &cr, &sub_masks);
        Ok(SubquotientComplex::new(&cr, gens, rels)?.homology()?)
    })
}
