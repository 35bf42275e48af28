use std::collections::HashMap;

use super::{characteristic, intersection_homology, simplicial_chain_complex, ChainError, Perverse, Perversity};
use crate::algebra::{allowed_subcomplex_lattices, Coefficients, HomologyResult, Integer, Integers, Lattice, SparseVec};
use crate::complex::{clots, join_complex, link, residual_mask, FilteredComplex, Simplex};
use crate::extint::ExtInt;

/// Verdict for one degree of the residual decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualDegree {
    pub degree: usize,
    /// Rank of `⊕_β C_d(β * L_β, ∂β * L_β)`.
    pub source_rank: usize,
    /// Rank of `C_d(K, 𝓛(K))`.
    pub target_rank: usize,
    /// Whether every source chain lands in the target lattice.
    pub contained: bool,
    /// Determinant of the change of basis, when the ranks agree.
    pub determinant: Option<Integer>,
}

impl ResidualDegree {
    pub fn bijective(&self) -> bool {
        self.contained && self.determinant.as_ref().is_some_and(Integer::is_unit)
    }
}

/// Outcome of comparing `⊕_β C^p̄(β * L_β, ∂β * L_β)` with `C^p̄(K, 𝓛(K))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub clots: Vec<Simplex>,
    /// `K = 𝓛(K) ∪ ⋃_β β * L_β`, with the stars of distinct clots meeting
    /// only inside `𝓛(K)`.
    pub cover_ok: bool,
    /// `(β * L_β) ∩ 𝓛(K) = ∂β * L_β` for every clot.
    pub intersections_ok: bool,
    pub degrees: Vec<ResidualDegree>,
}

impl ResidualReport {
    pub fn bijective(&self) -> bool {
        self.cover_ok && self.intersections_ok && self.degrees.iter().all(ResidualDegree::bijective)
    }
}

/// Position of each non-residual simplex among those of its dimension.
fn outside_positions(k: &FilteredComplex, in_residual: &[bool]) -> (Vec<usize>, HashMap<usize, usize>) {
    let top = k.dim().map_or(0, |d| d + 1);
    let mut counts = vec![0; top];
    let mut pos = HashMap::new();
    for (i, s) in k.simplices().iter().enumerate() {
        if !in_residual[i] {
            pos.insert(i, counts[s.dim()]);
            counts[s.dim()] += 1;
        }
    }
    (counts, pos)
}

/// Allowable chain lattices of `c` with a given perversity, projected onto
/// the non-residual coordinates of `k` through the embedding `emb`.
fn projected_lattices(
    c: &FilteredComplex,
    p: &Perversity,
    emb: &[usize],
    pos: &HashMap<usize, usize>,
) -> Result<Vec<Vec<SparseVec<Integer>>>, ChainError> {
    let pv = Perverse::new(c, p)?;
    let lats = allowed_subcomplex_lattices(&Integers, &simplicial_chain_complex(c), &pv.allowed_masks());
    Ok(lats
        .iter()
        .enumerate()
        .map(|(d, lat)| {
            let start = c.dim_range(d).start;
            lat.basis()
                .iter()
                .map(|v| {
                    let mut w: SparseVec<Integer> =
                        v.iter().filter_map(|(j, x)| pos.get(&emb[start + j]).map(|&q| (q, x.clone()))).collect();
                    w.sort_by_key(|e| e.0);
                    w
                })
                .filter(|w| !w.is_empty())
                .collect()
        })
        .collect())
}

/// Checks at chain level that the inclusions of the clot stars induce
/// `⊕_β C^p̄_*(β * L_β, ∂β * L_β) ≅ C^p̄_*(K, 𝓛(K))` over `Z`.
///
/// Each relative group is identified with the projection of the allowable
/// chains onto the coordinates outside the subcomplex; the projection has
/// kernel exactly the allowable chains of the subcomplex.
pub fn residual_decomposition_check(k: &FilteredComplex, p: &Perversity) -> Result<ResidualReport, ChainError> {
    k.require_full()?;
    let in_residual = residual_mask(k)?;
    let clot_ids = clots(k)?;
    let level = k.level(clot_ids[0]);
    let (counts, pos) = outside_positions(k, &in_residual);
    let ident: Vec<usize> = (0..k.len()).collect();
    let target = projected_lattices(k, p, &ident, &pos)?;

    let mut owner: Vec<Option<usize>> = vec![None; k.len()];
    let mut cover_ok = true;
    let mut intersections_ok = true;
    let mut source: Vec<Vec<SparseVec<Integer>>> = vec![Vec::new(); counts.len()];
    let mut source_rank = vec![0; counts.len()];
    for (c, &bi) in clot_ids.iter().enumerate() {
        let beta = k.simplex(bi);
        let star = join_complex(beta, level, &link(k, beta)?)?;
        let emb = k.embed(&star)?;
        for (j, &i) in emb.iter().enumerate() {
            let contains = beta.is_face_of(star.simplex(j));
            if contains == in_residual[i] {
                intersections_ok = false;
            }
            if contains {
                if owner[i].is_some() {
                    cover_ok = false;
                }
                owner[i] = Some(c);
            }
        }
        let ps = p.restrict(k, &star)?;
        for (d, gens) in projected_lattices(&star, &ps, &emb, &pos)?.into_iter().enumerate() {
            let lat = Lattice::from_generators(Integers, counts[d], gens);
            source_rank[d] += lat.rank();
            source[d].extend(lat.basis().iter().cloned());
        }
    }
    cover_ok &= (0..k.len()).all(|i| in_residual[i] || owner[i].is_some());

    let degrees = (0..counts.len())
        .map(|d| {
            let t = Lattice::from_generators(Integers, counts[d], target.get(d).cloned().unwrap_or_default());
            let coords = t.coordinates(&source[d]);
            let contained = coords.is_some();
            let determinant = match coords {
                Some(m) if source_rank[d] == t.rank() => {
                    Some(m.to_dense(&Integers).determinant().expect("square change of basis"))
                }
                _ => None,
            };
            ResidualDegree { degree: d, source_rank: source_rank[d], target_rank: t.rank(), contained, determinant }
        })
        .collect();
    Ok(ResidualReport {
        clots: clot_ids.iter().map(|&i| k.simplex(i).clone()).collect(),
        cover_ok,
        intersections_ok,
        degrees,
    })
}

fn require_clot(k: &FilteredComplex, beta: &Simplex) -> Result<usize, ChainError> {
    let bi = k.index_of(beta).ok_or_else(|| ChainError::NotAClot(beta.to_string()))?;
    if !clots(k)?.contains(&bi) {
        return Err(ChainError::NotAClot(beta.to_string()));
    }
    Ok(bi)
}

/// `Dp̄(Q) = codim Q - 2 - p̄(Q)` for the stratum of the clot `beta`.
pub fn dual_value_at_clot(k: &FilteredComplex, beta: &Simplex, p: &Perversity) -> Result<ExtInt, ChainError> {
    let bi = require_clot(k, beta)?;
    let q = k.stratum_of(bi);
    let codim = k.strata()[q].codim(k.n()) as i64;
    Ok(ExtInt::from(codim - 2) - p.values_on(k)?[q])
}

/// Predicts `H^p̄_*(β * L_β)` from `H^p̄_*(L_β)` and `Dp̄(Q)`, `Q` the
/// stratum of the clot `β`.
pub fn join_homology_oracle(
    k: &FilteredComplex,
    beta: &Simplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, ChainError> {
    k.require_full()?;
    let bi = require_clot(k, beta)?;
    let ch = characteristic(coeffs);
    if k.strata()[k.stratum_of(bi)].regular {
        return Ok(HomologyResult::point(ch));
    }
    let l = link(k, beta)?;
    let h = intersection_homology(&l, &p.restrict(k, &l)?, coeffs)?;
    Ok(match dual_value_at_clot(k, beta, p)? {
        ExtInt::PosInf => h,
        ExtInt::Finite(d) if d >= 0 => h.truncated(d as usize + 1),
        ExtInt::Finite(-1) if h.group(0).is_zero() => HomologyResult::zero(ch),
        _ => HomologyResult::point(ch),
    })
}

/// `H^p̄_*(β * L_β)` computed on the join with the induced perversity.
pub fn join_homology_direct(
    k: &FilteredComplex,
    beta: &Simplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, ChainError> {
    let bi = require_clot(k, beta)?;
    let star = join_complex(beta, k.level(bi), &link(k, beta)?)?;
    intersection_homology(&star, &p.restrict(k, &star)?, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids).unwrap()
    }

    fn cone() -> FilteredComplex {
        FilteredComplex::from_vertex_levels(2, &[s(&[0, 1, 3]), s(&[1, 2, 3]), s(&[0, 2, 3])], |v| if v.0 == 3 { 0 } else { 2 })
            .unwrap()
    }

    #[test]
    fn cone_join_cases() {
        let k = cone();
        let apex = s(&[3]);
        let z = Coefficients::Integers;
        let cases = [
            (Perversity::zero(2), HomologyResult::point(0)),
            (Perversity::constant("c1", 2, ExtInt::from(1i64)), HomologyResult::point(0)),
            (Perversity::constant("inf", 2, ExtInt::PosInf), HomologyResult::point(0)),
            (Perversity::constant("-inf", 2, ExtInt::NegInf), HomologyResult::from_ranks(0, &[1, 1])),
        ];
        for (p, want) in cases {
            let o = join_homology_oracle(&k, &apex, &p, z).unwrap();
            assert_eq!(o, want, "{p}");
            assert_eq!(join_homology_direct(&k, &apex, &p, z).unwrap(), o, "{p}");
        }
    }

    #[test]
    fn non_clot_is_rejected() {
        let k = cone();
        assert!(matches!(
            join_homology_oracle(&k, &s(&[0]), &Perversity::zero(2), Coefficients::Integers),
            Err(ChainError::NotAClot(_))
        ));
    }

    #[test]
    fn residual_check_on_cone() {
        let k = cone();
        for p in [Perversity::zero(2), Perversity::top(2)] {
            let r = residual_decomposition_check(&k, &p).unwrap();
            assert!(r.bijective(), "{r:?}");
            assert_eq!(r.clots, vec![s(&[3])]);
        }
    }
}
